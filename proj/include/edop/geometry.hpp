#ifndef EDOP_GEOMETRY_HPP
#define EDOP_GEOMETRY_HPP

#include <cstddef>
#include <vector>

#include "edop/rational.hpp"
#include "edop/sequences.hpp"

namespace edop {

/// Oriented line {x + iy : a*x + b*y = c} with exact rational coefficients.
/// The signed evaluation a*x + b*y - c distinguishes the two open halfplanes.
struct Line {
    Rational a, b, c;

    Line(Rational a, Rational b, Rational c);

    Rational eval(const GaussianRational& z) const { return a * z.re + b * z.im - c; }
};

/// Indices of the extreme points of conv(X) in counterclockwise order,
/// starting from the lexicographically smallest point (by real part, then
/// imaginary part). Collinear non-extreme points are excluded. Computed with
/// exact rational orientation predicates.
std::vector<std::size_t> hull_vertex_indices(const SpectrumSet& x);

/// The extreme points themselves, in the same order.
std::vector<GaussianRational> hull_vertices(const SpectrumSet& x);

/// A line strictly separating the hull vertex at index k from every other
/// point of X, oriented so eval(x[k]) > 0 > eval(x[j]) for j != k. The
/// direction is parallel to the chord between the hull neighbors of x[k]
/// (perpendicular bisector direction when the hull degenerates to a segment),
/// and the offset is the midpoint between x[k] and the nearest other point
/// along that direction.
Line separating_line(const SpectrumSet& x, std::size_t k);

/// Exact check of the convexity bound: for a convex combination
/// x = sum c_j lambda_j lying strictly on the lambda_k side of L,
///     sum_{j != k} c_j  <=  |x - lambda_k| / dist(lambda_k, L).
/// Both sides are compared squared to stay in rational arithmetic.
/// Precondition violations throw DomainError naming the failed hypothesis.
bool convexity_bound_check(const std::vector<GaussianRational>& lambdas,
                           const std::vector<Rational>& coeffs, std::size_t k, const Line& line);

} // namespace edop

#endif
