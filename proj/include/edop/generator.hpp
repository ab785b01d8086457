#ifndef EDOP_GENERATOR_HPP
#define EDOP_GENERATOR_HPP

#include <cstdint>
#include <random>
#include <utility>

#include "edop/diagonalize.hpp"
#include "edop/opmodel.hpp"

namespace edop {

/// Identifier of the instance-generation scheme, embedded in reports so runs
/// can be reproduced across builds: raw mt19937_64 draws (no library
/// distributions), exact unitaries from Pythagorean-triple Givens rotations
/// and unit-modulus Gaussian-rational phases.
inline constexpr const char* kGeneratorAlgorithm = "mt19937_64/givens-pythagorean-v1";

/// Uniform draw from {0,...,n-1} by modulo reduction of a raw engine word.
/// Deterministic per seed and call sequence on every platform.
std::size_t draw_below(std::mt19937_64& rng, std::size_t n);

/// Random rational p/q with |p| <= max_num, 1 <= q <= max_den.
Rational draw_rational(std::mt19937_64& rng, long max_num, long max_den);

/// Exact unitary: a product of Givens rotations with Pythagorean-triple
/// sines/cosines and a diagonal of unit-modulus Gaussian-rational phases.
ExactMatrix random_exact_unitary(std::mt19937_64& rng, std::size_t dim, std::size_t rotations);

/// Exact model projection W D W* with a random 0/1 diagonal D and a random
/// 0/1 tail pattern.
ModelProjection random_projection(std::mt19937_64& rng, std::size_t dim, std::size_t period);

/// Two projections with the same tail pattern (hence eventually equal tails
/// and a well-defined integer codimension) built from independent exact
/// unitaries. Corner ranks are drawn independently, so the codimension
/// varies over trials.
std::pair<ModelProjection, ModelProjection> random_projection_pair(std::mt19937_64& rng,
                                                                   std::size_t dim,
                                                                   std::size_t period);

/// As random_projection_pair but with ranks forced unequal, so the essential
/// codimension is nonzero.
std::pair<ModelProjection, ModelProjection> random_obstructed_pair(std::mt19937_64& rng,
                                                                   std::size_t dim,
                                                                   std::size_t period);

/// m distinct Gaussian rationals. With convex_position set, the points are
/// taken on the parabola t + t^2 i, so every point is a hull vertex.
SpectrumSet random_spectrum(std::mt19937_64& rng, std::size_t m, bool convex_position);

/// Finite-spectrum model operator W D W* over the given spectrum with a tail
/// pattern covering every spectrum index (essential spectrum = declared
/// spectrum).
EventuallyDiagonalOperator random_finite_spectrum_operator(std::mt19937_64& rng,
                                                           const SpectrumSet& spectrum,
                                                           std::size_t dim);

/// Diagonal model operator with corner entries drawn from the spectrum and
/// the given tail schedule.
EventuallyDiagonalOperator random_diagonal_operator(std::mt19937_64& rng,
                                                    const SpectrumSet& spectrum, std::size_t dim,
                                                    TailSchedule tail);

/// Float restricted unitary from the QR factor of a random perturbation of
/// the identity; defect at machine precision, checked against defect_tol.
RestrictedUnitary random_restricted_unitary(std::mt19937_64& rng, std::size_t dim,
                                            double defect_tol = 1e-12);

/// The projection viewed as a model operator over spectrum {0,1}.
EventuallyDiagonalOperator projection_operator(const ModelProjection& p);

} // namespace edop

#endif
