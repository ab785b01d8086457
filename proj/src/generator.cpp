#include "edop/generator.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "edop/errors.hpp"

namespace edop {

std::size_t draw_below(std::mt19937_64& rng, std::size_t n) {
    if (n == 0) throw DomainError("draw_below needs a positive bound");
    return static_cast<std::size_t>(rng() % n);
}

Rational draw_rational(std::mt19937_64& rng, long max_num, long max_den) {
    if (max_num < 0 || max_den < 1) throw DomainError("bad rational draw bounds");
    long p = static_cast<long>(draw_below(rng, 2 * static_cast<std::size_t>(max_num) + 1)) -
             max_num;
    long q = 1 + static_cast<long>(draw_below(rng, static_cast<std::size_t>(max_den)));
    return Rational(p, q);
}

namespace {

struct Triple {
    long a, b, c;
};

constexpr std::array<Triple, 6> kTriples{{{3, 4, 5},
                                          {5, 12, 13},
                                          {8, 15, 17},
                                          {7, 24, 25},
                                          {20, 21, 29},
                                          {9, 40, 41}}};

// Right-multiplies m by a Givens rotation in the (i,j) plane with exact
// cos = a/c, sin = b/c.
void apply_givens(ExactMatrix& m, std::size_t i, std::size_t j, const Rational& cos,
                  const Rational& sin) {
    for (std::size_t r = 0; r < m.dim(); ++r) {
        GaussianRational ci = m.at(r, i), cj = m.at(r, j);
        m.at(r, i) = GaussianRational(cos) * ci + GaussianRational(sin) * cj;
        m.at(r, j) = GaussianRational(-sin) * ci + GaussianRational(cos) * cj;
    }
}

} // namespace

ExactMatrix random_exact_unitary(std::mt19937_64& rng, std::size_t dim, std::size_t rotations) {
    if (dim == 0) throw DomainError("unitary dimension must be positive");
    ExactMatrix m = ExactMatrix::identity(dim);
    if (dim == 1) rotations = 0;
    for (std::size_t r = 0; r < rotations; ++r) {
        std::size_t i = draw_below(rng, dim);
        std::size_t j = draw_below(rng, dim - 1);
        if (j >= i) ++j;
        const Triple& t = kTriples[draw_below(rng, kTriples.size())];
        Rational cos(t.a, t.c), sin(t.b, t.c);
        if (draw_below(rng, 2) == 1) sin = -sin;
        apply_givens(m, i, j, cos, sin);
    }
    // Unit-modulus phases (a+bi)/c from the same triples keep the matrix
    // exactly unitary while making it genuinely complex.
    for (std::size_t k = 0; k < dim; ++k) {
        std::size_t choice = draw_below(rng, kTriples.size() + 2);
        GaussianRational phase(1);
        if (choice < kTriples.size()) {
            const Triple& t = kTriples[choice];
            phase = GaussianRational(Rational(t.a, t.c), Rational(t.b, t.c));
            if (draw_below(rng, 2) == 1) phase = phase.conj();
        } else if (choice == kTriples.size()) {
            phase = GaussianRational(0, 1);  // i
        }
        for (std::size_t r = 0; r < dim; ++r) m.at(r, k) = m.at(r, k) * phase;
    }
    return m;
}

namespace {

std::vector<bool> random_tail(std::mt19937_64& rng, std::size_t period) {
    std::vector<bool> t(period);
    for (std::size_t i = 0; i < period; ++i) t[i] = draw_below(rng, 2) == 1;
    return t;
}

ModelProjection conjugated_rank_projection(std::mt19937_64& rng, std::size_t dim,
                                           std::size_t rank, std::vector<bool> tail) {
    ExactMatrix w = random_exact_unitary(rng, dim, dim + 4);
    // W D W* with D the 0/1 diagonal supported on a random rank-sized
    // position set.
    std::vector<std::size_t> pos(dim);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    for (std::size_t i = dim; i > 1; --i)
        std::swap(pos[i - 1], pos[draw_below(rng, i)]);
    std::vector<GaussianRational> d(dim);
    for (std::size_t i = 0; i < rank; ++i) d[pos[i]] = GaussianRational(1);
    ExactMatrix p = w * ExactMatrix::diagonal(d) * w.adjoint();
    return ModelProjection(std::move(p), std::move(tail));
}

} // namespace

ModelProjection random_projection(std::mt19937_64& rng, std::size_t dim, std::size_t period) {
    std::size_t rank = draw_below(rng, dim + 1);
    return conjugated_rank_projection(rng, dim, rank, random_tail(rng, period));
}

std::pair<ModelProjection, ModelProjection> random_projection_pair(std::mt19937_64& rng,
                                                                   std::size_t dim,
                                                                   std::size_t period) {
    std::vector<bool> tail = random_tail(rng, period);
    std::size_t rank_p = draw_below(rng, dim + 1);
    std::size_t rank_q = draw_below(rng, dim + 1);
    ModelProjection p = conjugated_rank_projection(rng, dim, rank_p, tail);
    ModelProjection q = conjugated_rank_projection(rng, dim, rank_q, tail);
    return {std::move(p), std::move(q)};
}

std::pair<ModelProjection, ModelProjection> random_obstructed_pair(std::mt19937_64& rng,
                                                                   std::size_t dim,
                                                                   std::size_t period) {
    if (dim < 2) throw DomainError("obstructed pairs need corner dimension at least 2");
    std::vector<bool> tail = random_tail(rng, period);
    std::size_t rank_p = draw_below(rng, dim + 1);
    std::size_t rank_q = draw_below(rng, dim);
    if (rank_q >= rank_p) ++rank_q;  // distinct ranks, nonzero codimension
    ModelProjection p = conjugated_rank_projection(rng, dim, rank_p, tail);
    ModelProjection q = conjugated_rank_projection(rng, dim, rank_q, tail);
    return {std::move(p), std::move(q)};
}

SpectrumSet random_spectrum(std::mt19937_64& rng, std::size_t m, bool convex_position) {
    if (m == 0) throw InvalidSpectrumError("spectrum must be nonempty");
    std::vector<GaussianRational> pts;
    while (pts.size() < m) {
        GaussianRational z;
        if (convex_position) {
            Rational t = draw_rational(rng, 6, 4);
            z = GaussianRational(t, t * t);  // on the parabola: always a hull vertex
        } else {
            z = GaussianRational(draw_rational(rng, 4, 3), draw_rational(rng, 4, 3));
        }
        bool fresh = true;
        for (const auto& p : pts)
            if (p == z) fresh = false;
        if (fresh) pts.push_back(z);
    }
    return SpectrumSet(std::move(pts));
}

namespace {

// A schedule visiting every spectrum index at least once, shuffled.
TailSchedule covering_schedule(std::mt19937_64& rng, std::size_t m) {
    std::size_t extra = draw_below(rng, m + 1);
    std::vector<std::size_t> pat(m + extra);
    std::iota(pat.begin(), pat.begin() + static_cast<std::ptrdiff_t>(m), std::size_t{0});
    for (std::size_t i = m; i < pat.size(); ++i) pat[i] = draw_below(rng, m);
    for (std::size_t i = pat.size(); i > 1; --i)
        std::swap(pat[i - 1], pat[draw_below(rng, i)]);
    return TailSchedule(std::move(pat), m);
}

} // namespace

EventuallyDiagonalOperator random_finite_spectrum_operator(std::mt19937_64& rng,
                                                           const SpectrumSet& spectrum,
                                                           std::size_t dim) {
    ExactMatrix w = random_exact_unitary(rng, dim, dim + 4);
    std::vector<GaussianRational> d(dim);
    for (std::size_t i = 0; i < dim; ++i) d[i] = spectrum.at(draw_below(rng, spectrum.size()));
    ExactMatrix corner = w * ExactMatrix::diagonal(d) * w.adjoint();
    return EventuallyDiagonalOperator(spectrum, std::move(corner),
                                      covering_schedule(rng, spectrum.size()), true);
}

EventuallyDiagonalOperator random_diagonal_operator(std::mt19937_64& rng,
                                                    const SpectrumSet& spectrum, std::size_t dim,
                                                    TailSchedule tail) {
    std::vector<GaussianRational> d(dim);
    for (std::size_t i = 0; i < dim; ++i) d[i] = spectrum.at(draw_below(rng, spectrum.size()));
    return EventuallyDiagonalOperator(spectrum, ExactMatrix::diagonal(d), std::move(tail), true);
}

RestrictedUnitary random_restricted_unitary(std::mt19937_64& rng, std::size_t dim,
                                            double defect_tol) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            double re = (static_cast<double>(rng() >> 11) / 9007199254740992.0) - 0.5;
            double im = (static_cast<double>(rng() >> 11) / 9007199254740992.0) - 0.5;
            a(i, j) += std::complex<double>(0.6 * re, 0.6 * im);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    return RestrictedUnitary(FloatMatrix(std::move(q), defect_tol));
}

EventuallyDiagonalOperator projection_operator(const ModelProjection& p) {
    SpectrumSet s({GaussianRational(0), GaussianRational(1)});
    std::vector<std::size_t> pat(p.period());
    for (std::size_t t = 0; t < p.period(); ++t) pat[t] = p.tail_pattern()[t] ? 1 : 0;
    return EventuallyDiagonalOperator(s, p.corner(), TailSchedule(std::move(pat), 2), true);
}

} // namespace edop
