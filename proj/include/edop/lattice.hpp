#ifndef EDOP_LATTICE_HPP
#define EDOP_LATTICE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "edop/rational.hpp"

namespace edop {

/// Small dense integer matrix, row-major.
struct IntMat {
    std::size_t rows = 0, cols = 0;
    std::vector<mpz_class> v;

    IntMat() = default;
    IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c) {}
    static IntMat identity(std::size_t n);

    mpz_class& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }

    friend bool operator==(const IntMat& a, const IntMat& b) = default;
};

IntMat mat_mul(const IntMat& a, const IntMat& b);

/// Exact determinant by fraction-free elimination; intended for the small
/// unimodular transforms produced below.
mpz_class det(const IntMat& m);

struct HermiteResult {
    IntMat h;  // column echelon form, pivots positive, off-pivot row entries reduced
    IntMat t;  // unimodular, h = m * t
    int rank = 0;
};

/// Column Hermite normal form of an integer matrix with at most two rows.
/// Column operations only, so the column span over the integers is preserved.
HermiteResult hermite_normal_form(const IntMat& m);

/// Integer m-vector (c_1..c_m) with sum zero witnessing that
/// sum c_k * spectrum[k] equals some target lattice element.
class Certificate {
public:
    explicit Certificate(std::vector<mpz_class> coefficients);

    const std::vector<mpz_class>& coefficients() const { return coeffs_; }

    GaussianRational evaluate(const std::vector<GaussianRational>& spectrum) const;

private:
    std::vector<mpz_class> coeffs_;
};

/// The lattice of integer combinations of a finite spectrum whose
/// coefficients sum to zero, presented by the generators
/// spectrum[0]-spectrum[j+1] with denominators cleared. For Gaussian rational
/// spectra this is a discrete sublattice of QQ^2 of rank at most 2, so
/// membership is exactly decidable.
class KModule {
public:
    const std::vector<GaussianRational>& spectrum() const { return spectrum_; }
    std::size_t num_points() const { return spectrum_.size(); }
    const std::vector<std::array<mpz_class, 2>>& generators() const { return generators_; }
    const mpz_class& denom() const { return denom_; }
    const IntMat& hermite_basis() const { return hermite_.h; }
    const IntMat& hermite_transform() const { return hermite_.t; }
    int rank() const { return hermite_.rank; }

    friend KModule build_kmodule(const std::vector<GaussianRational>& x);

private:
    std::vector<GaussianRational> spectrum_;
    std::vector<std::array<mpz_class, 2>> generators_;
    mpz_class denom_ = 1;
    HermiteResult hermite_;
};

/// Throws InvalidSpectrumError on duplicates; the empty module is returned
/// for a single-point spectrum.
KModule build_kmodule(const std::vector<GaussianRational>& x);

/// Decides z in K_X; on success the certificate re-evaluates to z exactly.
std::optional<Certificate> membership(const KModule& k, const GaussianRational& z);

/// Canonical coset representative: z minus the lattice point found by floor
/// reduction through the triangular Hermite basis. Zero exactly when
/// membership succeeds.
GaussianRational coset_reduce(const KModule& k, const GaussianRational& z);

/// True iff the generators are linearly independent over the rationals,
/// i.e. the generator matrix has full rank m-1. Never true for m > 3 since
/// the lattice lives in two real dimensions.
bool independence_check(const KModule& k);

} // namespace edop

#endif
