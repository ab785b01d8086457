#include "edop/geometry.hpp"

#include <algorithm>
#include <numeric>

#include "edop/errors.hpp"

namespace edop {

Line::Line(Rational a, Rational b, Rational c)
    : a(std::move(a)), b(std::move(b)), c(std::move(c)) {
    if (this->a.is_zero() && this->b.is_zero())
        throw DomainError("degenerate line: (a,b) = (0,0)");
}

namespace {

// Sign of the cross product (a-o) x (b-o): positive for a counterclockwise
// turn o -> a -> b.
int orientation(const GaussianRational& o, const GaussianRational& a, const GaussianRational& b) {
    Rational cross = (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re);
    return cross.sign();
}

bool lex_less(const GaussianRational& a, const GaussianRational& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

} // namespace

std::vector<std::size_t> hull_vertex_indices(const SpectrumSet& x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return lex_less(x.at(i), x.at(j)); });
    if (n <= 2) return order;

    // Andrew's monotone chain, popping non-strict turns so only extreme
    // points survive.
    std::vector<std::size_t> lower, upper;
    for (std::size_t i : order) {
        while (lower.size() >= 2 &&
               orientation(x.at(lower[lower.size() - 2]), x.at(lower.back()), x.at(i)) <= 0)
            lower.pop_back();
        lower.push_back(i);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        while (upper.size() >= 2 &&
               orientation(x.at(upper[upper.size() - 2]), x.at(upper.back()), x.at(*it)) <= 0)
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;
}

std::vector<GaussianRational> hull_vertices(const SpectrumSet& x) {
    std::vector<GaussianRational> out;
    for (std::size_t i : hull_vertex_indices(x)) out.push_back(x.at(i));
    return out;
}

namespace {

Rational dot(const GaussianRational& n, const GaussianRational& p) {
    return n.re * p.re + n.im * p.im;
}

} // namespace

Line separating_line(const SpectrumSet& x, std::size_t k) {
    if (k >= x.size()) throw DomainError("spectrum index out of range");
    if (x.size() < 2) throw DomainError("nothing to separate from a single point");

    std::vector<std::size_t> hull = hull_vertex_indices(x);
    auto pos = std::find(hull.begin(), hull.end(), k);
    if (pos == hull.end())
        throw NoSeparatingLineError("point is not a vertex of the convex hull");

    const GaussianRational& lk = x.at(k);
    GaussianRational dir;  // direction whose inner product separates
    if (hull.size() <= 2) {
        // Segment hull: separate along the segment itself.
        std::size_t other = hull[hull.front() == k ? hull.size() - 1 : 0];
        dir = lk - x.at(other);
    } else {
        std::size_t p = static_cast<std::size_t>(pos - hull.begin());
        const GaussianRational& prev = x.at(hull[(p + hull.size() - 1) % hull.size()]);
        const GaussianRational& next = x.at(hull[(p + 1) % hull.size()]);
        GaussianRational chord = next - prev;
        dir = GaussianRational(-chord.im, chord.re);  // normal to the chord
        if (dot(dir, lk) <= dot(dir, prev)) dir = -dir;
    }

    Rational vk = dot(dir, lk);
    bool have_other = false;
    Rational second;  // max over the rest; strictly below vk by convexity
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (j == k) continue;
        Rational vj = dot(dir, x.at(j));
        if (!have_other || vj > second) {
            second = vj;
            have_other = true;
        }
    }
    if (!(second < vk)) throw Error("internal: separating direction failed to separate");

    Line line(dir.re, dir.im, (vk + second) / Rational(2));
    for (std::size_t j = 0; j < x.size(); ++j) {
        int s = line.eval(x.at(j)).sign();
        if ((j == k && s <= 0) || (j != k && s >= 0))
            throw Error("internal: separating line postcondition failed");
    }
    return line;
}

bool convexity_bound_check(const std::vector<GaussianRational>& lambdas,
                           const std::vector<Rational>& coeffs, std::size_t k, const Line& line) {
    if (lambdas.empty()) throw DomainError("empty point list");
    if (lambdas.size() != coeffs.size())
        throw ShapeError("coefficient count does not match point count");
    if (k >= lambdas.size()) throw DomainError("index k out of range");

    Rational total(0);
    for (const auto& c : coeffs) {
        if (c.sign() < 0) throw DomainError("hypothesis failed: negative convex coefficient");
        total += c;
    }
    if (total != Rational(1)) throw DomainError("hypothesis failed: coefficients do not sum to 1");

    if (line.eval(lambdas[k]).sign() <= 0)
        throw DomainError("hypothesis failed: line does not have lambda_k on its positive side");
    for (std::size_t j = 0; j < lambdas.size(); ++j)
        if (j != k && line.eval(lambdas[j]).sign() >= 0)
            throw DomainError("hypothesis failed: line does not separate lambda_k from the rest");

    GaussianRational xpt;
    Rational rest(0);
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        xpt += GaussianRational(coeffs[j]) * lambdas[j];
        if (j != k) rest += coeffs[j];
    }
    if (line.eval(xpt).sign() <= 0)
        throw DomainError("hypothesis failed: x is not strictly on the lambda_k side of the line");

    // (sum_{j!=k} c_j)^2 * dist(lambda_k, L)^2 <= |x - lambda_k|^2, with
    // dist^2 = eval(lambda_k)^2 / (a^2 + b^2).
    Rational ek = line.eval(lambdas[k]);
    Rational lhs = rest * rest * ek * ek;
    Rational rhs = (xpt - lambdas[k]).abs2() * (line.a * line.a + line.b * line.b);
    return lhs <= rhs;
}

} // namespace edop
