#ifndef EDOP_DIAGONALIZE_HPP
#define EDOP_DIAGONALIZE_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edop/geometry.hpp"
#include "edop/lattice.hpp"
#include "edop/opmodel.hpp"

namespace edop {

/// Unitary of the form corner ⊕ I: a finite-rank (hence Hilbert–Schmidt)
/// perturbation of the identity. The corner is float-valued; construction
/// checks the unitary defect against the corner's tolerance.
class RestrictedUnitary {
public:
    explicit RestrictedUnitary(FloatMatrix corner);

    const FloatMatrix& corner() const { return corner_; }
    std::size_t dim() const { return corner_.dim(); }
    double defect() const { return defect_; }

    static RestrictedUnitary identity(std::size_t dim, double tol = kDefaultTol);

private:
    FloatMatrix corner_;
    double defect_;
};

/// A unitary conjugating each P_k onto Q_k simultaneously. Requires each
/// family mutually orthogonal with eventually equal tails per pair and
/// [P_k:Q_k] = 0 for every k; a nonzero codimension raises ObstructionError
/// naming the pair — the obstruction is exactly what makes conjugation by
/// I + finite-rank impossible. Families that do not sum to I are completed
/// with the complement pair. Postconditions (defect and per-pair conjugation
/// residual within tol) are verified before returning.
RestrictedUnitary conjugate_projections(
    const std::vector<std::pair<ModelProjection, ModelProjection>>& pairs,
    double tol = kDefaultTol);

struct DiagonalizationResult {
    RestrictedUnitary u;
    EventuallyDiagonalOperator diagonal;    // N' = sum over lambda of lambda * Q'_lambda
    std::vector<long long> initial_codims;  // per spectrum point, before redistribution
    double residual;                        // Frobenius norm of U N U* - N' on the corner
};

/// Restricted diagonalization of a finite-spectrum model operator: exact
/// spectral projections, greedy diagonal candidates, redistribution to zero
/// codimension, and simultaneous conjugation.
DiagonalizationResult restricted_diagonalize(const EventuallyDiagonalOperator& n,
                                             double tol = kDefaultTol);

struct ExpectationDelta {
    std::vector<std::complex<double>> diagonal;  // of E(UNU* - N); supported on the corner
    std::complex<double> trace;
    /// E(K+K*)N + E(KNK*) with K = U - I, entry by entry; only defined when
    /// the corner of N is diagonal.
    std::optional<std::vector<std::complex<double>>> decomposition;
};

/// Diagonal and trace of E(UNU* - N). The trace vanishes (up to float error)
/// for every model operator and restricted unitary.
ExpectationDelta expectation_delta(const EventuallyDiagonalOperator& n,
                                   const RestrictedUnitary& u);

struct DiagTraceResult {
    GaussianRational trace;                  // trace of E(N - N'), exact
    std::vector<long long> codims;           // [P_lambda : Q_lambda] per spectrum point of N
    std::optional<Certificate> certificate;  // membership witness of trace in K_spec(N)
};

/// Exact trace identity for a finite-spectrum N against a diagonal N' with
/// values in spec(N) and eventually equal tails:
///     trace E(N - N') = sum over lambda of [P_lambda : Q_lambda] * lambda,
/// asserted exactly, with a lattice membership certificate for the trace.
DiagTraceResult expectation_delta_diag(const EventuallyDiagonalOperator& n,
                                       const EventuallyDiagonalOperator& nprime);

struct DiagonalizabilityReport {
    bool lim_member;  // every tail value lies in the hull vertex set
    std::vector<GaussianRational> ess_spectrum;  // values occurring in the tail
    std::vector<GaussianRational> hull;          // hull vertices of the declared spectrum
    bool verdict;     // lim_member and ess_spectrum equals the hull vertex set
};

DiagonalizabilityReport is_restricted_diagonalizable(const EventuallyDiagonalOperator& n);

struct ConverseResult {
    bool applicable;  // independence hypothesis of the spectrum differences held
    std::optional<RestrictedUnitary> u;
    double residual = 0.0;  // Frobenius norm of U N U* - N' when applicable
    std::string note;       // reason when not applicable
};

/// Converse construction: if trace E(N - N') = 0 and the spectrum differences
/// are independent in K_spec(N), every per-lambda codimension vanishes and a
/// conjugating restricted unitary exists; returns it. Dependent generators
/// yield a hypothesis-not-met report, not an error.
ConverseResult full_rank_converse_check(const EventuallyDiagonalOperator& n,
                                        const EventuallyDiagonalOperator& nprime,
                                        double tol = kDefaultTol);

struct Example310Report {
    std::size_t truncation;
    double exponent;  // theta_n = n^(-exponent); 0 under the degenerate zero rule
    bool zero_rule;
    double hs_partial;  // squared Hilbert-Schmidt norm of U - I up to the truncation
    double tc_partial;  // partial trace norm of the compressed expectation per block
    double max_pythagorean_error;  // max |cos^2 + sin^2 - 1| over entries
    double max_block_defect;       // max unitary defect of the 2x2 rotation blocks
    std::vector<std::pair<std::size_t, double>> hs_checkpoints;  // at powers of 10 and M
    std::vector<std::pair<std::size_t, double>> tc_checkpoints;
};

/// Truncation diagnostics for the rotation-block unitary with angles
/// theta_n = n^(-p), 1/2 < p <= 1: the Hilbert-Schmidt series converges while
/// the trace-norm series diverges logarithmically.
Example310Report example_310_diagnostics(std::size_t truncation, double p = 1.0);

/// Degenerate variant with all angles zero (U = I): both series vanish.
Example310Report example_310_zero_rule(std::size_t truncation);

} // namespace edop

#endif
