#include "edop/exact_matrix.hpp"

#include <algorithm>

namespace edop {

ExactMatrix::ExactMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) throw ShapeError("matrix dimension must be positive");
}

ExactMatrix ExactMatrix::identity(std::size_t dim) {
    ExactMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = GaussianRational(1);
    return m;
}

ExactMatrix ExactMatrix::diagonal(const std::vector<GaussianRational>& entries) {
    ExactMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
    return m;
}

ExactMatrix ExactMatrix::adjoint() const {
    ExactMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m.at(j, i) = at(i, j).conj();
    return m;
}

GaussianRational ExactMatrix::trace() const {
    GaussianRational t;
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

std::vector<GaussianRational> ExactMatrix::diagonal_entries() const {
    std::vector<GaussianRational> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = at(i, i);
    return d;
}

bool ExactMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const GaussianRational& z) { return z.is_zero(); });
}

bool ExactMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            if (i != j && !at(i, j).is_zero()) return false;
    return true;
}

bool ExactMatrix::is_hermitian() const { return *this == adjoint(); }

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
    if (dim_ != o.dim_) throw ShapeError("matrix dimension mismatch in addition");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
    if (dim_ != o.dim_) throw ShapeError("matrix dimension mismatch in subtraction");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
}

namespace {

// Matrix split into integer numerators over one common denominator.
struct Cleared {
    std::vector<mpz_class> re, im;
    mpz_class den;
};

Cleared clear_denominators(const ExactMatrix& a) {
    const std::size_t n = a.dim();
    Cleared c;
    c.den = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const GaussianRational& z = a.at(i, j);
            mpz_lcm(c.den.get_mpz_t(), c.den.get_mpz_t(), z.re.den().get_mpz_t());
            mpz_lcm(c.den.get_mpz_t(), c.den.get_mpz_t(), z.im.den().get_mpz_t());
        }
    c.re.resize(n * n);
    c.im.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const GaussianRational& z = a.at(i, j);
            c.re[i * n + j] = z.re.num() * (c.den / z.re.den());
            c.im[i * n + j] = z.im.num() * (c.den / z.im.den());
        }
    return c;
}

} // namespace

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.dim() != b.dim()) throw ShapeError("matrix dimension mismatch in multiplication");
    const std::size_t n = a.dim();
    Cleared ca = clear_denominators(a);
    Cleared cb = clear_denominators(b);
    mpz_class den = ca.den * cb.den;
    ExactMatrix out(n);
    mpz_class acc_re, acc_im, t;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            acc_re = 0;
            acc_im = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const mpz_class& ar = ca.re[i * n + k];
                const mpz_class& ai = ca.im[i * n + k];
                const mpz_class& br = cb.re[k * n + j];
                const mpz_class& bi = cb.im[k * n + j];
                t = ar * br;
                acc_re += t;
                t = ai * bi;
                acc_re -= t;
                t = ar * bi;
                acc_im += t;
                t = ai * br;
                acc_im += t;
            }
            mpq_class re(acc_re, den), im(acc_im, den);
            re.canonicalize();
            im.canonicalize();
            out.at(i, j) = GaussianRational(Rational(re), Rational(im));
        }
    }
    return out;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
}

ExactMatrix ExactMatrix::scaled(const GaussianRational& c) const {
    ExactMatrix m(dim_);
    for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k] * c;
    return m;
}

ExactMatrix ExactMatrix::shifted(const GaussianRational& c) const {
    ExactMatrix m = *this;
    for (std::size_t i = 0; i < dim_; ++i) m.at(i, i) -= c;
    return m;
}

bool is_normal_exact(const ExactMatrix& a) {
    ExactMatrix adj = a.adjoint();
    return a * adj == adj * a;
}

bool annihilating_polynomial_check(const ExactMatrix& a, const std::vector<GaussianRational>& x) {
    if (x.empty()) throw InvalidSpectrumError("annihilating polynomial needs a nonempty root set");
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j]) throw InvalidSpectrumError("duplicate point in spectrum");
    ExactMatrix prod = a.shifted(x[0]);
    for (std::size_t k = 1; k < x.size(); ++k) prod = prod * a.shifted(x[k]);
    return prod.is_zero();
}

} // namespace edop
