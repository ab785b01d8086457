#include "edop/rational.hpp"

#include <cctype>
#include <ostream>

namespace edop {

Rational::Rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    // mpq set_str is permissive (accepts whitespace, bases); validate shape first.
    std::size_t i = 0;
    auto digits = [&](std::size_t& pos) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return pos > start;
    };
    if (s[i] == '-' || s[i] == '+') ++i;
    if (!digits(i)) throw ParseError("malformed rational literal: " + s);
    if (i < s.size()) {
        if (s[i] != '/') throw ParseError("malformed rational literal: " + s);
        ++i;
        if (!digits(i) || i != s.size()) throw ParseError("malformed rational literal: " + s);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("malformed rational literal: " + s);
    if (q.get_den() == 0) throw ParseError("rational with zero denominator: " + s);
    q.canonicalize();
    return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division of rational by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero rational");
    return Rational(mpq_class(1 / v_));
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero Gaussian rational");
    Rational n = abs2();
    return {re / n, -im / n};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    os << z.re.str();
    if (!z.im.is_zero()) os << (z.im.sign() > 0 ? "+" : "") << z.im.str() << "i";
    return os;
}

} // namespace edop
