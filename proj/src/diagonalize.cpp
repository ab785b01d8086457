#include "edop/diagonalize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "edop/errors.hpp"

namespace edop {

RestrictedUnitary::RestrictedUnitary(FloatMatrix corner) : corner_(std::move(corner)) {
    if (!corner_.all_finite()) throw NumericInputError("unitary corner has non-finite entries");
    defect_ = unitary_defect(corner_);
    if (defect_ > corner_.tol())
        throw DomainError("corner is not unitary within its tolerance");
}

RestrictedUnitary RestrictedUnitary::identity(std::size_t dim, double tol) {
    return RestrictedUnitary(FloatMatrix::identity(dim, tol));
}

namespace {

struct AlignedPairs {
    std::vector<std::pair<ModelProjection, ModelProjection>> pairs;  // common corner dim
    std::size_t dim = 0;
    std::size_t period = 0;  // common (lcm) tail period
};

// Embeds all pairs to a common corner dimension. After embedding, per-pair
// eventual tail equality is plain pattern equality over the lcm period.
AlignedPairs align_pairs(const std::vector<std::pair<ModelProjection, ModelProjection>>& pairs) {
    AlignedPairs out;
    out.period = 1;
    for (const auto& [p, q] : pairs) {
        out.dim = std::max({out.dim, p.corner_dim(), q.corner_dim()});
        out.period = std::lcm(out.period, std::lcm(p.period(), q.period()));
    }
    for (const auto& [p, q] : pairs)
        out.pairs.emplace_back(embed(p, out.dim), embed(q, out.dim));
    return out;
}

bool patterns_equal(const ModelProjection& p, const ModelProjection& q, std::size_t period) {
    for (std::size_t t = 0; t < period; ++t)
        if (p.tail_at(t) != q.tail_at(t)) return false;
    return true;
}

void check_family_orthogonal(const std::vector<const ModelProjection*>& family,
                             std::size_t period, const char* which) {
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (!(family[i]->corner() * family[j]->corner()).is_zero())
                throw DomainError(std::string(which) +
                                  " projections are not mutually orthogonal");
    for (std::size_t t = 0; t < period; ++t) {
        int owners = 0;
        for (const ModelProjection* p : family) owners += p->tail_at(t) ? 1 : 0;
        if (owners > 1)
            throw DomainError(std::string(which) +
                              " projections are not mutually orthogonal on the tail");
    }
}

// Orthonormal basis of the range of an exact projection corner, as columns.
Eigen::MatrixXcd range_basis(const ExactMatrix& corner, long long rank, double tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(FloatMatrix::from_exact(corner, tol).eigen(),
                                           Eigen::ComputeThinU);
    return svd.matrixU().leftCols(rank);
}

} // namespace

RestrictedUnitary conjugate_projections(
    const std::vector<std::pair<ModelProjection, ModelProjection>>& pairs, double tol) {
    if (pairs.empty()) throw DomainError("no projection pairs given");

    AlignedPairs aligned = align_pairs(pairs);
    const std::size_t dim = aligned.dim;

    for (std::size_t k = 0; k < aligned.pairs.size(); ++k) {
        const auto& [p, q] = aligned.pairs[k];
        if (!patterns_equal(p, q, aligned.period))
            throw NotCompactError("projection tails differ infinitely often; [P:Q] undefined");
        long long c = essential_codimension(p, q).value;
        if (c != 0) {
            std::ostringstream msg;
            msg << "conjugation obstructed: pair " << k << " has essential codimension " << c;
            throw ObstructionError(msg.str(), k, c);
        }
    }

    std::vector<const ModelProjection*> ps, qs;
    for (const auto& [p, q] : aligned.pairs) {
        ps.push_back(&p);
        qs.push_back(&q);
    }
    check_family_orthogonal(ps, aligned.period, "first");
    check_family_orthogonal(qs, aligned.period, "second");

    // Complete to a resolution of the identity if the family falls short.
    ExactMatrix sum_p(dim), sum_q(dim);
    std::vector<bool> covered(aligned.period, false);
    for (const auto& [p, q] : aligned.pairs) {
        sum_p += p.corner();
        sum_q += q.corner();
        for (std::size_t t = 0; t < aligned.period; ++t)
            if (p.tail_at(t)) covered[t] = true;
    }
    bool full = sum_p == ExactMatrix::identity(dim) &&
                std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
    std::vector<std::pair<ModelProjection, ModelProjection>> work = aligned.pairs;
    if (!full) {
        std::vector<bool> tail_p(aligned.period), tail_q(aligned.period);
        for (std::size_t t = 0; t < aligned.period; ++t) {
            for (const auto& [p, q] : aligned.pairs) {
                if (p.tail_at(t)) tail_p[t] = true;
                if (q.tail_at(t)) tail_q[t] = true;
            }
        }
        ModelProjection rest_p = ModelProjection(sum_p, tail_p).complement();
        ModelProjection rest_q = ModelProjection(sum_q, tail_q).complement();
        if (!patterns_equal(rest_p, rest_q, aligned.period))
            throw NotCompactError("complement tails differ infinitely often");
        work.emplace_back(std::move(rest_p), std::move(rest_q));
    }

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [p, q] : work) {
        long long r = p.corner_rank();
        if (r != q.corner_rank())
            throw Error("internal: zero-codimension pair with unequal corner ranks");
        if (r == 0) continue;
        Eigen::MatrixXcd cp = range_basis(p.corner(), r, tol);
        Eigen::MatrixXcd cq = range_basis(q.corner(), r, tol);
        u += cq * cp.adjoint();
    }

    FloatMatrix uf(u, tol);
    if (unitary_defect(uf) > tol)
        throw Error("conjugation postcondition failed: unitary defect above tolerance");
    for (const auto& [p, q] : work) {
        Eigen::MatrixXcd lhs = u * FloatMatrix::from_exact(p.corner(), tol).eigen() * u.adjoint();
        double res = (lhs - FloatMatrix::from_exact(q.corner(), tol).eigen()).norm();
        if (res > tol)
            throw Error("conjugation postcondition failed: residual above tolerance");
    }
    return RestrictedUnitary(std::move(uf));
}

DiagonalizationResult restricted_diagonalize(const EventuallyDiagonalOperator& n, double tol) {
    if (!n.finite_spectrum())
        throw DomainError("restricted diagonalization needs the finite-spectrum flag");

    const std::size_t m = n.spectrum().size();
    const std::size_t s = n.corner_dim();

    std::vector<ModelProjection> spectral;
    spectral.reserve(m);
    for (std::size_t k = 0; k < m; ++k)
        spectral.push_back(spectral_projection(n, n.spectrum().at(k)));

    // Greedy diagonal candidates: each corner position goes to the spectrum
    // point with the largest exact spectral weight there, ties to the lowest
    // index; the tail keeps its own schedule.
    std::vector<std::size_t> owner(s, 0);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t k = 1; k < m; ++k)
            if (spectral[k].corner().at(i, i).re > spectral[owner[i]].corner().at(i, i).re)
                owner[i] = k;
    }

    std::vector<std::pair<ModelProjection, ModelProjection>> pairs;
    std::vector<long long> initial;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<GaussianRational> diag(s);
        for (std::size_t i = 0; i < s; ++i)
            if (owner[i] == k) diag[i] = GaussianRational(1);
        std::vector<bool> tail(n.tail().period());
        for (std::size_t t = 0; t < tail.size(); ++t) tail[t] = n.tail().pattern()[t] == k;
        ModelProjection q(ExactMatrix::diagonal(diag), std::move(tail));
        initial.push_back(essential_codimension(spectral[k], q).value);
        pairs.emplace_back(spectral[k], std::move(q));
    }

    std::vector<ModelProjection> balanced = redistribute(pairs);

    std::vector<std::pair<ModelProjection, ModelProjection>> conj_pairs;
    for (std::size_t k = 0; k < m; ++k) conj_pairs.emplace_back(spectral[k], balanced[k]);
    RestrictedUnitary u = conjugate_projections(conj_pairs, tol);

    std::vector<GaussianRational> diag(s);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < s; ++i)
            if (!balanced[k].corner().at(i, i).is_zero()) diag[i] = n.spectrum().at(k);
    EventuallyDiagonalOperator nprime(n.spectrum(), ExactMatrix::diagonal(diag), n.tail(), true);

    Eigen::MatrixXcd uc = u.corner().eigen();
    Eigen::MatrixXcd nf = FloatMatrix::from_exact(n.corner(), tol).eigen();
    Eigen::MatrixXcd npf = FloatMatrix::from_exact(nprime.corner(), tol).eigen();
    double residual = (uc * nf * uc.adjoint() - npf).norm();

    return {std::move(u), std::move(nprime), std::move(initial), residual};
}

ExpectationDelta expectation_delta(const EventuallyDiagonalOperator& n,
                                   const RestrictedUnitary& u) {
    const std::size_t dim = std::max(n.corner_dim(), u.dim());
    EventuallyDiagonalOperator ne = embed(n, dim);

    Eigen::MatrixXcd uc = Eigen::MatrixXcd::Identity(dim, dim);
    uc.topLeftCorner(u.dim(), u.dim()) = u.corner().eigen();
    Eigen::MatrixXcd nf = FloatMatrix::from_exact(ne.corner(), u.corner().tol()).eigen();

    Eigen::MatrixXcd delta = uc * nf * uc.adjoint() - nf;

    ExpectationDelta out;
    out.diagonal.resize(dim);
    out.trace = {0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) {
        out.diagonal[i] = delta(i, i);
        out.trace += delta(i, i);
    }

    if (ne.corner().is_diagonal()) {
        Eigen::MatrixXcd k = uc - Eigen::MatrixXcd::Identity(dim, dim);
        Eigen::MatrixXcd knk = k * nf * k.adjoint();
        std::vector<std::complex<double>> dec(dim);
        for (std::size_t i = 0; i < dim; ++i)
            dec[i] = (k(i, i) + std::conj(k(i, i))) * nf(i, i) + knk(i, i);
        out.decomposition = std::move(dec);
    }
    return out;
}

namespace {

// Tail values of two model operators agree positionwise from some point on;
// exact, decided over one lcm period beyond both corners.
bool value_tails_eventually_equal(const EventuallyDiagonalOperator& a,
                                  const EventuallyDiagonalOperator& b) {
    const std::size_t start = std::max(a.corner_dim(), b.corner_dim());
    const std::size_t l = std::lcm(a.tail().period(), b.tail().period());
    for (std::size_t t = 0; t < l; ++t)
        if (a.tail_value_at(start + t - a.corner_dim()) !=
            b.tail_value_at(start + t - b.corner_dim()))
            return false;
    return true;
}

// The lambda-indicator diagonal projection of a diagonal model operator.
ModelProjection indicator_projection(const EventuallyDiagonalOperator& diag_op,
                                     const GaussianRational& lambda) {
    std::vector<GaussianRational> diag(diag_op.corner_dim());
    for (std::size_t i = 0; i < diag_op.corner_dim(); ++i)
        if (diag_op.corner().at(i, i) == lambda) diag[i] = GaussianRational(1);
    std::vector<bool> tail(diag_op.tail().period());
    for (std::size_t t = 0; t < tail.size(); ++t)
        tail[t] = diag_op.tail_value_at(t) == lambda;
    return ModelProjection(ExactMatrix::diagonal(diag), std::move(tail));
}

} // namespace

DiagTraceResult expectation_delta_diag(const EventuallyDiagonalOperator& n,
                                       const EventuallyDiagonalOperator& nprime) {
    if (!n.finite_spectrum())
        throw DomainError("the trace identity needs the finite-spectrum flag on N");
    if (!nprime.corner().is_diagonal()) throw DomainError("N' must be diagonal");
    for (std::size_t i = 0; i < nprime.corner_dim(); ++i)
        if (!n.spectrum().contains(nprime.corner().at(i, i)))
            throw DomainError("N' takes a value outside spec(N)");
    for (std::size_t t = 0; t < nprime.tail().period(); ++t)
        if (!n.spectrum().contains(nprime.tail_value_at(t)))
            throw DomainError("N' takes a value outside spec(N)");
    if (!value_tails_eventually_equal(n, nprime))
        throw NotCompactError("E(N - N') is not trace-class in the model: "
                              "tails differ infinitely often");

    const std::size_t dim = std::max(n.corner_dim(), nprime.corner_dim());
    EventuallyDiagonalOperator ne = embed(n, dim);
    EventuallyDiagonalOperator npe = embed(nprime, dim);

    DiagTraceResult out;
    for (std::size_t i = 0; i < dim; ++i)
        out.trace += ne.corner().at(i, i) - npe.corner().at(i, i);

    GaussianRational weighted;
    for (std::size_t k = 0; k < n.spectrum().size(); ++k) {
        const GaussianRational& lambda = n.spectrum().at(k);
        ModelProjection p = spectral_projection(ne, lambda);
        ModelProjection q = indicator_projection(npe, lambda);
        long long c = essential_codimension(p, q).value;
        out.codims.push_back(c);
        weighted += GaussianRational(Rational(c)) * lambda;
    }
    if (weighted != out.trace)
        throw Error("internal: trace of E(N - N') differs from the codimension sum");

    KModule k = build_kmodule(n.spectrum().points());
    out.certificate = membership(k, out.trace);
    if (!out.certificate)
        throw Error("internal: trace of E(N - N') escaped the lattice");
    return out;
}

DiagonalizabilityReport is_restricted_diagonalizable(const EventuallyDiagonalOperator& n) {
    if (!n.finite_spectrum())
        throw DomainError("diagonalizability report needs the finite-spectrum flag");

    std::vector<std::size_t> hull_idx = hull_vertex_indices(n.spectrum());
    std::vector<std::size_t> ess_idx = n.essential_indices();

    DiagonalizabilityReport rep;
    for (std::size_t i : ess_idx) rep.ess_spectrum.push_back(n.spectrum().at(i));
    for (std::size_t i : hull_idx) rep.hull.push_back(n.spectrum().at(i));

    rep.lim_member = std::all_of(ess_idx.begin(), ess_idx.end(), [&](std::size_t e) {
        return std::find(hull_idx.begin(), hull_idx.end(), e) != hull_idx.end();
    });
    std::vector<std::size_t> hull_sorted = hull_idx;
    std::sort(hull_sorted.begin(), hull_sorted.end());
    rep.verdict = rep.lim_member && hull_sorted == ess_idx;
    return rep;
}

ConverseResult full_rank_converse_check(const EventuallyDiagonalOperator& n,
                                        const EventuallyDiagonalOperator& nprime, double tol) {
    DiagTraceResult ident = expectation_delta_diag(n, nprime);
    if (!ident.trace.is_zero())
        throw DomainError("trace of E(N - N') is nonzero");

    KModule k = build_kmodule(n.spectrum().points());
    if (!independence_check(k)) {
        ConverseResult out;
        out.applicable = false;
        out.note = "spectrum differences are linearly dependent in K_spec(N); "
                   "the full-rank hypothesis is not met";
        return out;
    }

    for (long long c : ident.codims)
        if (c != 0) throw Error("internal: independence with zero trace forces zero codims");

    const std::size_t dim = std::max(n.corner_dim(), nprime.corner_dim());
    EventuallyDiagonalOperator ne = embed(n, dim);
    EventuallyDiagonalOperator npe = embed(nprime, dim);

    std::vector<std::pair<ModelProjection, ModelProjection>> pairs;
    for (std::size_t j = 0; j < n.spectrum().size(); ++j) {
        const GaussianRational& lambda = n.spectrum().at(j);
        pairs.emplace_back(spectral_projection(ne, lambda), indicator_projection(npe, lambda));
    }

    ConverseResult out;
    out.applicable = true;
    out.u = conjugate_projections(pairs, tol);

    Eigen::MatrixXcd uc = out.u->corner().eigen();
    Eigen::MatrixXcd nf = FloatMatrix::from_exact(ne.corner(), tol).eigen();
    Eigen::MatrixXcd npf = FloatMatrix::from_exact(npe.corner(), tol).eigen();
    out.residual = (uc * nf * uc.adjoint() - npf).norm();
    return out;
}

namespace {

Example310Report example_310_run(std::size_t truncation, double p, bool zero_rule) {
    if (truncation == 0) throw DomainError("truncation must be positive");

    Example310Report rep;
    rep.truncation = truncation;
    rep.exponent = zero_rule ? 0.0 : p;
    rep.zero_rule = zero_rule;
    rep.hs_partial = 0.0;
    rep.tc_partial = 0.0;
    rep.max_pythagorean_error = 0.0;
    rep.max_block_defect = 0.0;

    std::size_t next_checkpoint = 10;
    for (std::size_t n = 1; n <= truncation; ++n) {
        double theta = zero_rule ? 0.0 : std::pow(static_cast<double>(n), -p);
        double s = std::sin(theta), c = std::cos(theta);

        rep.max_pythagorean_error =
            std::max(rep.max_pythagorean_error, std::abs(s * s + c * c - 1.0));
        // Defect of the block [[c,s],[-s,c]]: both rows have norm
        // sqrt(s^2+c^2) and are orthogonal by construction.
        rep.max_block_defect =
            std::max(rep.max_block_defect, std::abs(s * s + c * c - 1.0) * std::sqrt(2.0));

        rep.hs_partial += 2.0 * s * s + 2.0 * (1.0 - c) * (1.0 - c);
        rep.tc_partial += std::abs(std::sin(2.0 * theta)) / std::sqrt(2.0);

        if (n == next_checkpoint || n == truncation) {
            rep.hs_checkpoints.emplace_back(n, rep.hs_partial);
            rep.tc_checkpoints.emplace_back(n, rep.tc_partial);
            if (n == next_checkpoint) next_checkpoint *= 10;
        }
    }
    return rep;
}

} // namespace

Example310Report example_310_diagnostics(std::size_t truncation, double p) {
    if (!(p > 0.5) || !(p <= 1.0))
        throw DomainError("exponent must satisfy 1/2 < p <= 1 for an l^2 \\ l^1 angle sequence");
    return example_310_run(truncation, p, false);
}

Example310Report example_310_zero_rule(std::size_t truncation) {
    return example_310_run(truncation, 1.0, true);
}

} // namespace edop
