#ifndef EDOP_OPMODEL_HPP
#define EDOP_OPMODEL_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "edop/exact_matrix.hpp"
#include "edop/float_matrix.hpp"
#include "edop/sequences.hpp"

namespace edop {

/// Normal operator of the form  corner ⊕ diag(periodic tail)  on basis
/// positions 0..s-1, s.. — an exact corner block followed by an infinite
/// diagonal tail cycling through spectrum values. Every difference of two
/// such operators with eventually equal tails is finite rank, which is what
/// makes index and trace quantities exactly computable.
class EventuallyDiagonalOperator {
public:
    /// Validates: tail indices in range; corner normal; when finite_spectrum
    /// is set, corner annihilated by the product of (z - lambda) over the
    /// declared spectrum (so spec(corner) ⊆ spectrum).
    EventuallyDiagonalOperator(SpectrumSet spectrum, ExactMatrix corner, TailSchedule tail,
                               bool finite_spectrum);

    const SpectrumSet& spectrum() const { return spectrum_; }
    const ExactMatrix& corner() const { return corner_; }
    const TailSchedule& tail() const { return tail_; }
    bool finite_spectrum() const { return finite_spectrum_; }

    std::size_t corner_dim() const { return corner_.dim(); }

    /// Tail value at tail position t (t = 0 is basis position corner_dim()).
    const GaussianRational& tail_value_at(std::size_t t) const {
        return spectrum_.at(tail_.index_at(t));
    }

    /// Diagonal entry at global basis position n.
    GaussianRational diagonal_entry(std::size_t n) const;

    /// Spectrum indices occurring in the tail pattern, ascending. These are
    /// the essential spectrum: exactly the values hit infinitely often.
    std::vector<std::size_t> essential_indices() const;

private:
    SpectrumSet spectrum_;
    ExactMatrix corner_;
    TailSchedule tail_;
    bool finite_spectrum_;
};

/// Validating constructor, as a named entry point.
EventuallyDiagonalOperator make_operator(SpectrumSet spectrum, ExactMatrix corner,
                                         TailSchedule tail, bool finite_spectrum);

/// The same operator presented with a larger corner: tail entries are
/// absorbed into the corner as diagonal entries and the tail pattern is
/// rotated accordingly. Exact model equality, useful for aligning operators
/// of different corner sizes.
EventuallyDiagonalOperator embed(const EventuallyDiagonalOperator& n, std::size_t new_dim);

/// Projection in the model: an exact projection corner plus a periodic 0/1
/// tail.
class ModelProjection {
public:
    /// Validates corner* = corner = corner² exactly and tail nonempty.
    ModelProjection(ExactMatrix corner, std::vector<bool> tail_pattern);

    const ExactMatrix& corner() const { return corner_; }
    const std::vector<bool>& tail_pattern() const { return tail_; }

    std::size_t corner_dim() const { return corner_.dim(); }
    std::size_t period() const { return tail_.size(); }
    bool tail_at(std::size_t t) const { return tail_[t % tail_.size()]; }

    /// trace(corner) as an integer (the rank; exact).
    long long corner_rank() const;

    /// I - P: complemented corner and flipped tail.
    ModelProjection complement() const;

    friend bool operator==(const ModelProjection& a, const ModelProjection& b) {
        return a.corner_ == b.corner_ && a.tail_ == b.tail_;
    }

private:
    ExactMatrix corner_;
    std::vector<bool> tail_;
};

/// Corner-enlarged presentation of the same projection (tail absorbed, 0/1
/// entries become diagonal corner entries).
ModelProjection embed(const ModelProjection& p, std::size_t new_dim);

/// True iff the tails agree positionwise from some point on — the model's
/// notion of P-Q compact (equivalently finite rank) difference. Decided
/// exactly over one lcm period beyond the larger corner.
bool tails_eventually_equal(const ModelProjection& p, const ModelProjection& q);

enum class CodimMethod { ExactTrace, FredholmOracle };

struct CodimResult {
    long long value = 0;
    CodimMethod method = CodimMethod::ExactTrace;
    bool ill_conditioned = false;  // oracle only: a singular value fell near the rank cut
};

/// Essential codimension [P:Q] = trace(P-Q), summed exactly over the finite
/// block where the two operators differ. Integrality of the result is
/// asserted. Throws NotCompactError when the tails are not eventually equal
/// (the quantity is undefined without compact difference).
CodimResult essential_codimension(const ModelProjection& p, const ModelProjection& q);

/// Independent oracle: [P:Q] = ind(QP : PH → QH) computed from numeric ranks
/// on the finite block covering both corners. Same error behavior.
CodimResult essential_codimension_fredholm(const ModelProjection& p, const ModelProjection& q,
                                           double tol = kDefaultTol);

/// Rebalances diagonal candidates: given pairs (P_k, Q_k) with the Q_k
/// mutually orthogonal and diagonal and total codimension zero, moves
/// diagonal atoms between the Q_k (lowest basis index first, from the first
/// pair with negative codimension to the first with positive) until
/// [P_k:Q'_k] = 0 for every k. Orthogonality is preserved; each Q_k - Q'_k
/// is finite rank.
std::vector<ModelProjection> redistribute(
    const std::vector<std::pair<ModelProjection, ModelProjection>>& pairs);

/// Spectral projection of a finite-spectrum model operator at an eigenvalue,
/// by exact Lagrange interpolation on the corner and tail indicators on the
/// schedule. Throws DomainError if lambda is not a declared spectrum point or
/// the operator lacks the finite-spectrum flag.
ModelProjection spectral_projection(const EventuallyDiagonalOperator& n,
                                    const GaussianRational& lambda);

/// The diagonal sequence of the model operator: corner diagonal entries as
/// prefix, tail schedule unchanged.
LimSequence diagonal_of(const EventuallyDiagonalOperator& n);

} // namespace edop

#endif
