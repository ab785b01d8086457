#include "edop/opmodel.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "edop/errors.hpp"

namespace edop {

EventuallyDiagonalOperator::EventuallyDiagonalOperator(SpectrumSet spectrum, ExactMatrix corner,
                                                       TailSchedule tail, bool finite_spectrum)
    : spectrum_(std::move(spectrum)),
      corner_(std::move(corner)),
      tail_(std::move(tail)),
      finite_spectrum_(finite_spectrum) {
    for (std::size_t idx : tail_.pattern())
        if (idx >= spectrum_.size()) throw DomainError("tail pattern index out of range");
    if (!is_normal_exact(corner_)) throw DomainError("corner is not normal");
    if (finite_spectrum_ && !annihilating_polynomial_check(corner_, spectrum_.points()))
        throw DomainError("corner is not annihilated by the spectrum polynomial");
}

GaussianRational EventuallyDiagonalOperator::diagonal_entry(std::size_t n) const {
    if (n < corner_.dim()) return corner_.at(n, n);
    return tail_value_at(n - corner_.dim());
}

std::vector<std::size_t> EventuallyDiagonalOperator::essential_indices() const {
    std::vector<std::size_t> idx = tail_.pattern();
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

EventuallyDiagonalOperator make_operator(SpectrumSet spectrum, ExactMatrix corner,
                                         TailSchedule tail, bool finite_spectrum) {
    return EventuallyDiagonalOperator(std::move(spectrum), std::move(corner), std::move(tail),
                                      finite_spectrum);
}

EventuallyDiagonalOperator embed(const EventuallyDiagonalOperator& n, std::size_t new_dim) {
    const std::size_t s = n.corner_dim();
    if (new_dim < s) throw DomainError("embedding cannot shrink the corner");
    if (new_dim == s) return n;

    const std::size_t ext = new_dim - s;
    ExactMatrix corner(new_dim);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) corner.at(i, j) = n.corner().at(i, j);
    for (std::size_t t = 0; t < ext; ++t) corner.at(s + t, s + t) = n.tail_value_at(t);

    const std::size_t period = n.tail().period();
    std::vector<std::size_t> rotated(period);
    for (std::size_t t = 0; t < period; ++t) rotated[t] = n.tail().index_at(t + ext);

    return EventuallyDiagonalOperator(n.spectrum(), std::move(corner),
                                      TailSchedule(std::move(rotated), n.spectrum().size()),
                                      n.finite_spectrum());
}

ModelProjection::ModelProjection(ExactMatrix corner, std::vector<bool> tail_pattern)
    : corner_(std::move(corner)), tail_(std::move(tail_pattern)) {
    if (tail_.empty()) throw DomainError("tail pattern must be nonempty");
    if (!corner_.is_hermitian() || corner_ * corner_ != corner_)
        throw DomainError("corner is not a projection");
}

long long ModelProjection::corner_rank() const {
    GaussianRational t = corner_.trace();
    if (!t.im.is_zero() || !t.re.is_integer())
        throw Error("internal: projection corner trace is not an integer");
    mpz_class r = t.re.num();
    if (!r.fits_slong_p()) throw Error("internal: projection rank overflow");
    return r.get_si();
}

ModelProjection ModelProjection::complement() const {
    ExactMatrix c = ExactMatrix::identity(corner_.dim()) - corner_;
    std::vector<bool> t(tail_.size());
    for (std::size_t i = 0; i < tail_.size(); ++i) t[i] = !tail_[i];
    return ModelProjection(std::move(c), std::move(t));
}

ModelProjection embed(const ModelProjection& p, std::size_t new_dim) {
    const std::size_t s = p.corner_dim();
    if (new_dim < s) throw DomainError("embedding cannot shrink the corner");
    if (new_dim == s) return p;

    const std::size_t ext = new_dim - s;
    ExactMatrix corner(new_dim);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) corner.at(i, j) = p.corner().at(i, j);
    for (std::size_t t = 0; t < ext; ++t)
        if (p.tail_at(t)) corner.at(s + t, s + t) = GaussianRational(1);

    const std::size_t period = p.period();
    std::vector<bool> rotated(period);
    for (std::size_t t = 0; t < period; ++t) rotated[t] = p.tail_at(t + ext);

    return ModelProjection(std::move(corner), std::move(rotated));
}

bool tails_eventually_equal(const ModelProjection& p, const ModelProjection& q) {
    const std::size_t a = std::max(p.corner_dim(), q.corner_dim());
    const std::size_t l = std::lcm(p.period(), q.period());
    for (std::size_t t = 0; t < l; ++t)
        if (p.tail_at(a + t - p.corner_dim()) != q.tail_at(a + t - q.corner_dim())) return false;
    return true;
}

namespace {

// Number of 1-entries of p's tail on global positions [p.corner_dim(), a).
long long tail_ones_before(const ModelProjection& p, std::size_t a) {
    long long count = 0;
    for (std::size_t n = p.corner_dim(); n < a; ++n)
        if (p.tail_at(n - p.corner_dim())) ++count;
    return count;
}

} // namespace

CodimResult essential_codimension(const ModelProjection& p, const ModelProjection& q) {
    if (!tails_eventually_equal(p, q))
        throw NotCompactError("projection tails differ infinitely often; [P:Q] undefined");
    const std::size_t a = std::max(p.corner_dim(), q.corner_dim());
    long long vp = p.corner_rank() + tail_ones_before(p, a);
    long long vq = q.corner_rank() + tail_ones_before(q, a);
    return {vp - vq, CodimMethod::ExactTrace, false};
}

CodimResult essential_codimension_fredholm(const ModelProjection& p, const ModelProjection& q,
                                           double tol) {
    if (!tails_eventually_equal(p, q))
        throw NotCompactError("projection tails differ infinitely often; [P:Q] undefined");
    const std::size_t a = std::max(p.corner_dim(), q.corner_dim());
    FloatMatrix fp = FloatMatrix::from_exact(embed(p, a).corner(), tol);
    FloatMatrix fq = FloatMatrix::from_exact(embed(q, a).corner(), tol);

    // Beyond the block both act by the same 0/1 diagonal, so QP restricted to
    // PH is the identity there and contributes no kernel on either side.
    RankResult rp = numeric_rank_checked(fp, tol);
    RankResult rq = numeric_rank_checked(fq, tol);
    RankResult rqp = numeric_rank_checked(FloatMatrix(fq.eigen() * fp.eigen(), tol), tol);
    RankResult rpq = numeric_rank_checked(FloatMatrix(fp.eigen() * fq.eigen(), tol), tol);

    long long ker_qp = rp.rank - rqp.rank;  // dim ker(QP : PH -> QH)
    long long ker_pq = rq.rank - rpq.rank;  // dim ker(PQ : QH -> PH)
    bool ill = rp.ill_conditioned || rq.ill_conditioned || rqp.ill_conditioned ||
               rpq.ill_conditioned;
    return {ker_qp - ker_pq, CodimMethod::FredholmOracle, ill};
}

std::vector<ModelProjection> redistribute(
    const std::vector<std::pair<ModelProjection, ModelProjection>>& pairs) {
    if (pairs.empty()) return {};

    std::vector<long long> codim;
    codim.reserve(pairs.size());
    long long total = 0;
    for (const auto& [p, q] : pairs) {
        if (!q.corner().is_diagonal())
            throw DomainError("redistribute requires diagonal candidate projections");
        codim.push_back(essential_codimension(p, q).value);
        total += codim.back();
    }

    std::size_t a = 0, l = 1;
    for (const auto& [p, q] : pairs) {
        a = std::max({a, p.corner_dim(), q.corner_dim()});
        l = std::lcm(l, std::lcm(p.period(), q.period()));
    }

    // Aligned diagonal supports and tail patterns of the candidates.
    std::vector<std::vector<bool>> support(pairs.size()), tails(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        ModelProjection qe = embed(pairs[k].second, a);
        support[k].resize(a);
        for (std::size_t i = 0; i < a; ++i) support[k][i] = !qe.corner().at(i, i).is_zero();
        tails[k].resize(l);
        for (std::size_t t = 0; t < l; ++t) tails[k][t] = qe.tail_at(t);
    }
    for (std::size_t i = 0; i < a; ++i) {
        int owners = 0;
        for (std::size_t k = 0; k < pairs.size(); ++k) owners += support[k][i] ? 1 : 0;
        if (owners > 1) throw DomainError("candidate projections are not mutually orthogonal");
    }
    for (std::size_t t = 0; t < l; ++t) {
        int owners = 0;
        for (std::size_t k = 0; k < pairs.size(); ++k) owners += tails[k][t] ? 1 : 0;
        if (owners > 1) throw DomainError("candidate projections are not mutually orthogonal");
    }

    if (total != 0) throw DomainError("codimensions do not sum to zero");

    bool moved = false;
    for (;;) {
        std::size_t i = pairs.size(), j = pairs.size();
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (codim[k] < 0) {
                i = k;
                break;
            }
        if (i == pairs.size()) break;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (codim[k] > 0) {
                j = k;
                break;
            }
        long long r = std::min(-codim[i], codim[j]);
        for (long long moved_count = 0; moved_count < r; ++moved_count) {
            std::size_t pos = a;
            for (std::size_t n = 0; n < a; ++n)
                if (support[i][n]) {
                    pos = n;
                    break;
                }
            if (pos == a) throw Error("internal: redistribute ran out of atoms");
            support[i][pos] = false;
            support[j][pos] = true;
        }
        codim[i] += r;
        codim[j] -= r;
        moved = true;
    }
    if (!moved) {
        std::vector<ModelProjection> out;
        for (const auto& [p, q] : pairs) out.push_back(q);
        return out;
    }

    std::vector<ModelProjection> out;
    out.reserve(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        std::vector<GaussianRational> diag(a);
        for (std::size_t i = 0; i < a; ++i)
            if (support[k][i]) diag[i] = GaussianRational(1);
        out.emplace_back(ExactMatrix::diagonal(diag), tails[k]);
    }
    return out;
}

ModelProjection spectral_projection(const EventuallyDiagonalOperator& n,
                                    const GaussianRational& lambda) {
    if (!n.finite_spectrum())
        throw DomainError("spectral projection needs the finite-spectrum flag");
    auto idx = n.spectrum().index_of(lambda);
    if (!idx) throw DomainError("lambda is not a declared spectrum point");

    const std::size_t s = n.corner_dim();
    ExactMatrix p = ExactMatrix::identity(s);
    GaussianRational denom(1);
    for (std::size_t j = 0; j < n.spectrum().size(); ++j) {
        if (j == *idx) continue;
        p = p * n.corner().shifted(n.spectrum().at(j));
        denom *= lambda - n.spectrum().at(j);
    }
    p = p.scaled(denom.inverse());

    const std::size_t period = n.tail().period();
    std::vector<bool> tail(period);
    for (std::size_t t = 0; t < period; ++t) tail[t] = n.tail().pattern()[t] == *idx;

    return ModelProjection(std::move(p), std::move(tail));
}

LimSequence diagonal_of(const EventuallyDiagonalOperator& n) {
    return LimSequence(n.corner().diagonal_entries(), n.spectrum(), n.tail());
}

} // namespace edop
