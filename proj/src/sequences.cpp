#include "edop/sequences.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "edop/errors.hpp"

namespace edop {

SpectrumSet::SpectrumSet(std::vector<GaussianRational> points) : points_(std::move(points)) {
    if (points_.empty()) throw InvalidSpectrumError("spectrum must be nonempty");
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
            if (points_[i] == points_[j]) throw InvalidSpectrumError("duplicate point in spectrum");
}

std::optional<std::size_t> SpectrumSet::index_of(const GaussianRational& p) const {
    for (std::size_t k = 0; k < points_.size(); ++k)
        if (points_[k] == p) return k;
    return std::nullopt;
}

TailSchedule::TailSchedule(std::vector<std::size_t> pattern, std::size_t num_points)
    : pattern_(std::move(pattern)) {
    if (pattern_.empty()) throw DomainError("tail pattern must be nonempty");
    for (std::size_t idx : pattern_)
        if (idx >= num_points) throw DomainError("tail pattern index out of range");
}

LimSequence::LimSequence(std::vector<GaussianRational> prefix, SpectrumSet spectrum,
                         TailSchedule tail)
    : prefix_(std::move(prefix)), spectrum_(std::move(spectrum)), tail_(std::move(tail)) {
    for (std::size_t idx : tail_.pattern())
        if (idx >= spectrum_.size()) throw DomainError("tail pattern index out of range");
}

GaussianRational LimSequence::value_at(std::size_t n) const {
    if (n < prefix_.size()) return prefix_[n];
    return spectrum_.at(tail_.index_at(n - prefix_.size()));
}

std::size_t nearest_index(const GaussianRational& v, const SpectrumSet& x) {
    std::size_t best = 0;
    Rational best_d2 = (v - x.at(0)).abs2();
    for (std::size_t k = 1; k < x.size(); ++k) {
        Rational d2 = (v - x.at(k)).abs2();
        if (d2 < best_d2) {
            best = k;
            best_d2 = d2;
        }
    }
    return best;
}

std::vector<std::size_t> nearest_assignment(const LimSequence& d) {
    std::vector<std::size_t> out;
    out.reserve(d.prefix().size());
    for (const auto& v : d.prefix()) out.push_back(nearest_index(v, d.spectrum()));
    return out;
}

RenormalizedSum renormalized_sum(const LimSequence& d, const KModule& k) {
    return renormalized_sum(d, k, nearest_assignment(d));
}

RenormalizedSum renormalized_sum(const LimSequence& d, const KModule& k,
                                 const std::vector<std::size_t>& assignment) {
    if (k.spectrum() != d.spectrum().points())
        throw DomainError("lattice was not built from the sequence's spectrum");
    if (assignment.size() != d.prefix().size())
        throw ShapeError("assignment length does not match prefix");

    RenormalizedSum out;
    for (std::size_t n = 0; n < d.prefix().size(); ++n) {
        if (assignment[n] >= d.spectrum().size())
            throw DomainError("assignment index out of range");
        out.value += d.prefix()[n] - d.spectrum().at(assignment[n]);
    }
    out.reduced = coset_reduce(k, out.value);
    out.certificate = membership(k, out.value);
    return out;
}

KadisonAB kadison_ab(const LimSequence& d) {
    const SpectrumSet& x = d.spectrum();
    const GaussianRational zero, one{Rational(1), Rational(0)};
    if (x.size() != 2 || !x.contains(zero) || !x.contains(one))
        throw DomainError("kadison_ab requires spectrum {0,1}");
    const Rational half(1, 2);

    KadisonAB out{Rational(0), Rational(0), Rational(0), false};
    for (const auto& v : d.prefix()) {
        if (!v.im.is_zero()) throw DomainError("kadison_ab requires real entries");
        if (v.re.sign() < 0 || v.re > Rational(1))
            throw DomainError("kadison_ab requires entries in [0,1]");
        if (v.re < half)
            out.a += v.re;
        else
            out.b += Rational(1) - v.re;
    }
    // Tail entries are exactly 0 or 1 and contribute nothing to either sum.
    out.diff = out.a - out.b;
    out.integral = out.diff.is_integer();
    return out;
}

SummabilityReport arveson_summability_partial(const std::vector<std::complex<double>>& samples,
                                              const SpectrumSet& x) {
    SummabilityReport rep;
    rep.f_partial.reserve(samples.size());
    rep.dist_partial.reserve(samples.size());

    std::vector<std::complex<double>> pts;
    pts.reserve(x.size());
    for (const auto& p : x.points()) pts.push_back(p.to_complex());

    double fs = 0.0, ds = 0.0;
    for (const auto& s : samples) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw NumericInputError("non-finite sample");
        std::complex<double> prod{1.0, 0.0};
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) {
            prod *= s - p;
            dist = std::min(dist, std::abs(s - p));
        }
        fs += std::abs(prod);
        ds += dist;
        rep.f_partial.push_back(fs);
        rep.dist_partial.push_back(ds);
    }
    return rep;
}

} // namespace edop
