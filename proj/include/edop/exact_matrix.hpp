#ifndef EDOP_EXACT_MATRIX_HPP
#define EDOP_EXACT_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "edop/rational.hpp"

namespace edop {

/// Dense square matrix over the Gaussian rationals. All operations are exact;
/// multiplication clears denominators and works on integer numerators so that
/// per-entry gcd work happens once per result entry.
class ExactMatrix {
public:
    explicit ExactMatrix(std::size_t dim);
    static ExactMatrix identity(std::size_t dim);
    static ExactMatrix diagonal(const std::vector<GaussianRational>& entries);

    std::size_t dim() const { return dim_; }

    GaussianRational& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const GaussianRational& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    ExactMatrix adjoint() const;
    GaussianRational trace() const;
    std::vector<GaussianRational> diagonal_entries() const;

    bool is_zero() const;
    bool is_diagonal() const;
    bool is_hermitian() const;

    ExactMatrix& operator+=(const ExactMatrix& o);
    ExactMatrix& operator-=(const ExactMatrix& o);
    friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
    friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
    friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

    ExactMatrix scaled(const GaussianRational& c) const;

    /// this - c*I
    ExactMatrix shifted(const GaussianRational& c) const;

private:
    std::size_t dim_;
    std::vector<GaussianRational> entries_;
};

/// True iff A commutes with its adjoint, entrywise exactly.
bool is_normal_exact(const ExactMatrix& a);

/// True iff the product of (A - lambda*I) over lambda in X vanishes exactly.
/// Together with is_normal_exact this certifies spec(A) is contained in X.
/// Throws InvalidSpectrumError if X is empty or has duplicates.
bool annihilating_polynomial_check(const ExactMatrix& a, const std::vector<GaussianRational>& x);

} // namespace edop

#endif
