#ifndef EDOP_SEQUENCES_HPP
#define EDOP_SEQUENCES_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "edop/lattice.hpp"
#include "edop/rational.hpp"

namespace edop {

/// A finite set of distinct Gaussian-rational points. The construction order
/// is significant: it indexes tail schedules and certificate coefficients.
class SpectrumSet {
public:
    explicit SpectrumSet(std::vector<GaussianRational> points);

    std::size_t size() const { return points_.size(); }
    const GaussianRational& at(std::size_t k) const { return points_.at(k); }
    const std::vector<GaussianRational>& points() const { return points_; }

    std::optional<std::size_t> index_of(const GaussianRational& p) const;
    bool contains(const GaussianRational& p) const { return index_of(p).has_value(); }

    friend bool operator==(const SpectrumSet& a, const SpectrumSet& b) {
        return a.points_ == b.points_;
    }

private:
    std::vector<GaussianRational> points_;
};

/// Periodic schedule of spectrum indices defining the eventual diagonal
/// entries: position t carries points[pattern[t mod period]].
class TailSchedule {
public:
    TailSchedule(std::vector<std::size_t> pattern, std::size_t num_points);

    std::size_t period() const { return pattern_.size(); }
    std::size_t index_at(std::size_t t) const { return pattern_[t % pattern_.size()]; }
    const std::vector<std::size_t>& pattern() const { return pattern_; }

    friend bool operator==(const TailSchedule& a, const TailSchedule& b) {
        return a.pattern_ == b.pattern_;
    }

private:
    std::vector<std::size_t> pattern_;
};

/// Finitely-presented sequence: an arbitrary finite prefix followed by a
/// periodic tail over a spectrum. The distance-to-spectrum series of such a
/// sequence has only finitely many nonzero terms, so membership in Lim(X)
/// holds by construction.
class LimSequence {
public:
    LimSequence(std::vector<GaussianRational> prefix, SpectrumSet spectrum, TailSchedule tail);

    const std::vector<GaussianRational>& prefix() const { return prefix_; }
    const SpectrumSet& spectrum() const { return spectrum_; }
    const TailSchedule& tail() const { return tail_; }

    /// Entry n of the induced infinite sequence (0-based).
    GaussianRational value_at(std::size_t n) const;

private:
    std::vector<GaussianRational> prefix_;
    SpectrumSet spectrum_;
    TailSchedule tail_;
};

/// Index of a spectrum point at minimal Euclidean distance from v, compared
/// through exact squared distances; ties go to the lowest index.
std::size_t nearest_index(const GaussianRational& v, const SpectrumSet& x);

/// Nearest-point choice for every prefix entry. Tail entries keep their own
/// schedule indices and are not part of the returned vector.
std::vector<std::size_t> nearest_assignment(const LimSequence& d);

struct RenormalizedSum {
    GaussianRational value;    // sum of prefix deviations d_n - x_n
    GaussianRational reduced;  // canonical coset representative of value
    std::optional<Certificate> certificate;  // present iff value lies in the lattice
};

/// The renormalized sum of d over nearest-point choices. The tail contributes
/// zero exactly. K must be built from d's spectrum.
RenormalizedSum renormalized_sum(const LimSequence& d, const KModule& k);

/// Same sum with a caller-supplied choice of x_n per prefix entry; the coset
/// (reduced value and certificate presence) is independent of the choice.
RenormalizedSum renormalized_sum(const LimSequence& d, const KModule& k,
                                 const std::vector<std::size_t>& assignment);

struct KadisonAB {
    Rational a;     // sum of entries below 1/2
    Rational b;     // sum of 1 - entry over entries at or above 1/2
    Rational diff;  // a - b
    bool integral;  // diff is an integer
};

/// Kadison's two sums for a 0/1-spectrum sequence with entries in [0,1].
/// Both are finite for model sequences since the tail contributes zero.
KadisonAB kadison_ab(const LimSequence& d);

struct SummabilityReport {
    std::vector<double> f_partial;     // running sums of |prod (d_n - lambda_j)|
    std::vector<double> dist_partial;  // running sums of dist(d_n, X)
};

/// Diagnostic partial-sum traces for streamed samples. Both series are
/// reported as monotone running sums; no convergence verdict is attempted for
/// unstructured input.
SummabilityReport arveson_summability_partial(const std::vector<std::complex<double>>& samples,
                                              const SpectrumSet& x);

} // namespace edop

#endif
