#ifndef EDOP_FLOAT_MATRIX_HPP
#define EDOP_FLOAT_MATRIX_HPP

#include <Eigen/Dense>

#include "edop/exact_matrix.hpp"

namespace edop {

constexpr double kDefaultTol = 1e-10;

/// Square complex matrix in double precision. Carries the tolerance its
/// consumers should use; no operation on it hard-codes one.
class FloatMatrix {
public:
    explicit FloatMatrix(std::size_t dim, double tol = kDefaultTol);
    FloatMatrix(Eigen::MatrixXcd m, double tol = kDefaultTol);

    static FloatMatrix identity(std::size_t dim, double tol = kDefaultTol);
    static FloatMatrix from_exact(const ExactMatrix& a, double tol = kDefaultTol);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    double tol() const { return tol_; }

    std::complex<double>& at(std::size_t i, std::size_t j) { return m_(i, j); }
    const std::complex<double>& at(std::size_t i, std::size_t j) const { return m_(i, j); }

    const Eigen::MatrixXcd& eigen() const { return m_; }
    Eigen::MatrixXcd& eigen() { return m_; }

    bool all_finite() const { return m_.allFinite(); }
    double frobenius_norm() const { return m_.norm(); }

private:
    Eigen::MatrixXcd m_;
    double tol_;
};

/// Frobenius norm of U*U^adj - I; zero for an exact unitary.
double unitary_defect(const FloatMatrix& u);

/// Number of singular values strictly above tol * sigma_max (0 for the zero
/// matrix). Throws NumericInputError on NaN/Inf entries.
int numeric_rank(const FloatMatrix& a, double tol);

/// As numeric_rank, but also reports whether any singular value fell within a
/// factor of 10 of the cut, which makes the rank decision fragile.
struct RankResult {
    int rank = 0;
    bool ill_conditioned = false;
};
RankResult numeric_rank_checked(const FloatMatrix& a, double tol);

} // namespace edop

#endif
