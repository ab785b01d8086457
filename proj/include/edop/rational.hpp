#ifndef EDOP_RATIONAL_HPP
#define EDOP_RATIONAL_HPP

#include <gmpxx.h>

#include <complex>
#include <iosfwd>
#include <string>
#include <utility>

#include "edop/errors.hpp"

namespace edop {

/// Exact rational scalar backed by GMP. Always canonical: gcd(|num|, den) = 1
/// and den >= 1. Arithmetic is exact and total except inversion of zero.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "p/q" or "p" (arbitrary precision, optional leading '-').
    static Rational parse(const std::string& s);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& mpq() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const;
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    /// Largest integer <= *this, as an exact integer.
    mpz_class floor() const;

    double to_double() const { return v_.get_d(); }

    /// "p/q", or just "p" when the denominator is 1.
    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exact complex scalar with rational real and imaginary parts.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational re) : re(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re(std::move(re)), im(std::move(im)) {}
    GaussianRational(long re) : re(re) {}
    GaussianRational(long re, long im) : re(re), im(im) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    GaussianRational conj() const { return {re, -im}; }
    /// |z|^2 = re^2 + im^2, exactly.
    Rational abs2() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational inverse() const;

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

} // namespace edop

#endif
