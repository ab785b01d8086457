#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "edop/generator.hpp"
#include "edop/geometry.hpp"

using edop::GaussianRational;
using edop::Line;
using edop::Rational;
using edop::SpectrumSet;

namespace {

SpectrumSet triangle() {
    return SpectrumSet({GaussianRational(0), GaussianRational(1), GaussianRational(0, 1)});
}

} // namespace

TEST_CASE("hull vertices of fixed configurations") {
    auto tri = edop::hull_vertex_indices(triangle());
    CHECK(tri == std::vector<std::size_t>{0, 1, 2});

    SpectrumSet collinear({GaussianRational(0), GaussianRational(1), GaussianRational(2)});
    CHECK(edop::hull_vertex_indices(collinear) == std::vector<std::size_t>{0, 2});

    SpectrumSet with_interior({GaussianRational(0), GaussianRational(1), GaussianRational(0, 1),
                               GaussianRational(Rational(1, 4), Rational(1, 4))});
    CHECK(edop::hull_vertex_indices(with_interior) == std::vector<std::size_t>{0, 1, 2});

    SpectrumSet single({GaussianRational(7)});
    CHECK(edop::hull_vertex_indices(single) == std::vector<std::size_t>{0});

    SpectrumSet pair({GaussianRational(3), GaussianRational(-1)});
    CHECK(edop::hull_vertices(pair) ==
          std::vector<GaussianRational>{GaussianRational(-1), GaussianRational(3)});
}

TEST_CASE("hull is invariant under input permutation") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        SpectrumSet x = edop::random_spectrum(rng, 2 + edop::draw_below(rng, 5),
                                              edop::draw_below(rng, 2) == 0);
        auto verts = edop::hull_vertices(x);

        std::vector<GaussianRational> pts = x.points();
        for (std::size_t i = pts.size(); i > 1; --i)
            std::swap(pts[i - 1], pts[edop::draw_below(rng, i)]);
        auto verts2 = edop::hull_vertices(SpectrumSet(pts));
        CHECK(verts == verts2);  // canonical start point makes the cycle unique
    }
}

TEST_CASE("separating lines at hull vertices") {
    SpectrumSet seg({GaussianRational(0), GaussianRational(1)});
    Line l = edop::separating_line(seg, 1);
    CHECK(l.a == Rational(1));
    CHECK(l.b == Rational(0));
    CHECK(l.c == Rational(1, 2));
    CHECK(l.eval(GaussianRational(1)) > Rational(0));
    CHECK(l.eval(GaussianRational(0)) < Rational(0));

    SpectrumSet tri = triangle();
    for (std::size_t k = 0; k < 3; ++k) {
        Line lk = edop::separating_line(tri, k);
        for (std::size_t j = 0; j < 3; ++j) {
            Rational v = lk.eval(tri.at(j));
            if (j == k)
                CHECK(v > Rational(0));
            else
                CHECK(v < Rational(0));
        }
    }

    SpectrumSet collinear({GaussianRational(0), GaussianRational(1), GaussianRational(2)});
    CHECK_THROWS_AS(edop::separating_line(collinear, 1), edop::NoSeparatingLineError);
    CHECK_THROWS_AS(edop::separating_line(collinear, 9), edop::DomainError);
    CHECK_THROWS_AS(edop::separating_line(SpectrumSet({GaussianRational(0)}), 0),
                    edop::DomainError);
}

TEST_CASE("separating lines on random spectra") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        SpectrumSet x = edop::random_spectrum(rng, 2 + edop::draw_below(rng, 5),
                                              edop::draw_below(rng, 2) == 0);
        for (std::size_t k : edop::hull_vertex_indices(x)) {
            Line l = edop::separating_line(x, k);
            for (std::size_t j = 0; j < x.size(); ++j) {
                Rational v = l.eval(x.at(j));
                REQUIRE((j == k ? v > Rational(0) : v < Rational(0)));
            }
        }
    }
}

TEST_CASE("convexity bound on fixed instances") {
    SpectrumSet seg({GaussianRational(0), GaussianRational(1)});
    Line l = edop::separating_line(seg, 1);
    CHECK(edop::convexity_bound_check(seg.points(), {Rational(1, 4), Rational(3, 4)}, 1, l));

    // degenerate combination x = lambda_k: both sides zero
    SpectrumSet tri = triangle();
    Line l0 = edop::separating_line(tri, 0);
    CHECK(edop::convexity_bound_check(tri.points(),
                                      {Rational(1), Rational(0), Rational(0)}, 0, l0));

    // hypothesis violations
    CHECK_THROWS_AS(
        edop::convexity_bound_check(seg.points(), {Rational(-1, 4), Rational(5, 4)}, 1, l),
        edop::DomainError);
    CHECK_THROWS_AS(
        edop::convexity_bound_check(seg.points(), {Rational(1, 2), Rational(1, 4)}, 1, l),
        edop::DomainError);
    CHECK_THROWS_AS(
        edop::convexity_bound_check(seg.points(), {Rational(3, 4), Rational(1, 4)}, 1, l),
        edop::DomainError);  // x on the wrong side of the parallel line
    CHECK_THROWS_AS(
        edop::convexity_bound_check(seg.points(), {Rational(1, 4)}, 1, l),
        edop::ShapeError);
}
