#include <doctest.h>

#include <random>
#include <utility>
#include <vector>

#include "edop/generator.hpp"
#include "edop/opmodel.hpp"

using edop::EventuallyDiagonalOperator;
using edop::ExactMatrix;
using edop::GaussianRational;
using edop::ModelProjection;
using edop::Rational;
using edop::SpectrumSet;
using edop::TailSchedule;

namespace {

ModelProjection indicator(std::size_t dim, std::size_t rank, std::vector<bool> tail) {
    std::vector<GaussianRational> d(dim);
    for (std::size_t i = 0; i < rank; ++i) d[i] = GaussianRational(1);
    return ModelProjection(ExactMatrix::diagonal(d), std::move(tail));
}

ExactMatrix half_matrix() {
    ExactMatrix a(2);
    const GaussianRational h{Rational(1, 2)};
    a.at(0, 0) = h;
    a.at(0, 1) = h;
    a.at(1, 0) = h;
    a.at(1, 1) = h;
    return a;
}

EventuallyDiagonalOperator frozen_n() {
    SpectrumSet x({GaussianRational(0), GaussianRational(1)});
    return edop::make_operator(x, half_matrix(), TailSchedule({0, 1}, 2), true);
}

} // namespace

TEST_CASE("model operator validation") {
    SpectrumSet x({GaussianRational(0), GaussianRational(1)});

    ExactMatrix nilpotent(2);
    nilpotent.at(0, 1) = GaussianRational(1);
    CHECK_THROWS_AS(edop::make_operator(x, nilpotent, TailSchedule({0}, 2), false),
                    edop::DomainError);

    ExactMatrix three = ExactMatrix::diagonal({GaussianRational(3)});
    CHECK_THROWS_AS(edop::make_operator(x, three, TailSchedule({0}, 2), true),
                    edop::DomainError);
    CHECK_NOTHROW(edop::make_operator(x, three, TailSchedule({0}, 2), false));

    // tail schedule indices must address the operator's own spectrum
    CHECK_THROWS_AS(edop::make_operator(x, three, TailSchedule({2}, 3), false),
                    edop::DomainError);
}

TEST_CASE("model operator diagonal and essential indices") {
    EventuallyDiagonalOperator n = frozen_n();
    CHECK(n.corner_dim() == 2);
    CHECK(n.diagonal_entry(0) == GaussianRational(Rational(1, 2)));
    CHECK(n.diagonal_entry(2) == GaussianRational(0));
    CHECK(n.diagonal_entry(3) == GaussianRational(1));
    CHECK(n.essential_indices() == std::vector<std::size_t>{0, 1});

    auto d = edop::diagonal_of(n);
    CHECK(d.prefix() ==
          std::vector<GaussianRational>{GaussianRational(Rational(1, 2)),
                                        GaussianRational(Rational(1, 2))});
    CHECK(d.tail() == n.tail());
}

TEST_CASE("operator embedding preserves the diagonal") {
    EventuallyDiagonalOperator n = frozen_n();
    EventuallyDiagonalOperator big = edop::embed(n, 5);
    CHECK(big.corner_dim() == 5);
    for (std::size_t pos = 0; pos < 12; ++pos)
        CHECK(big.diagonal_entry(pos) == n.diagonal_entry(pos));
    CHECK_THROWS_AS(edop::embed(n, 1), edop::DomainError);
}

TEST_CASE("projection validation and complement") {
    CHECK_THROWS_AS(ModelProjection(half_matrix().scaled(GaussianRational(2)), {false}),
                    edop::DomainError);
    ExactMatrix skew(2);
    skew.at(0, 1) = GaussianRational(1);
    CHECK_THROWS_AS(ModelProjection(skew, {false}), edop::DomainError);
    CHECK_THROWS_AS(ModelProjection(ExactMatrix::identity(2), {}), edop::DomainError);

    ModelProjection p(half_matrix(), {true, false});
    CHECK(p.corner_rank() == 1);
    ModelProjection c = p.complement();
    CHECK(c.corner_rank() == 1);
    CHECK(c.tail_pattern() == std::vector<bool>{false, true});
    CHECK(c.complement() == p);
    CHECK((p.corner() + c.corner()) == ExactMatrix::identity(2));
}

TEST_CASE("essential codimension on fixed pairs") {
    std::vector<bool> tail = {true, false};
    ModelProjection p = indicator(6, 5, tail);
    ModelProjection q = indicator(6, 3, tail);
    CHECK(edop::essential_codimension(p, q).value == 2);
    CHECK(edop::essential_codimension(q, p).value == -2);
    CHECK(edop::essential_codimension(p, p).value == 0);

    ModelProjection h(half_matrix(), tail);
    ModelProjection id2(ExactMatrix::identity(2), tail);
    CHECK(edop::essential_codimension(h, id2).value == -1);

    // corner sizes may differ; the shorter tail is absorbed up to the block
    ModelProjection small = indicator(2, 1, {true});
    ModelProjection large = indicator(7, 4, {true});
    CHECK(edop::essential_codimension(large, small).value == -2);
}

TEST_CASE("tails decide compactness of the difference") {
    ModelProjection p = indicator(2, 1, {true});
    ModelProjection q = indicator(2, 1, {false});
    CHECK_THROWS_AS(edop::essential_codimension(p, q), edop::NotCompactError);
    CHECK_FALSE(edop::tails_eventually_equal(p, q));

    // same infinite tail written with different periods
    ModelProjection a = indicator(2, 2, {true, false});
    ModelProjection b = indicator(4, 1, {true, false, true, false});
    CHECK(edop::tails_eventually_equal(a, b));
    CHECK(edop::essential_codimension(a, b).value == 2);

    ModelProjection c = indicator(2, 1, {false, true});
    CHECK_THROWS_AS(edop::essential_codimension(a, c), edop::NotCompactError);
}

TEST_CASE("codimension is invariant under embedding") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t dim = 2 + edop::draw_below(rng, 6);
        auto [p, q] = edop::random_projection_pair(rng, dim, 1 + edop::draw_below(rng, 3));
        long long base = edop::essential_codimension(p, q).value;
        std::size_t target = dim + 1 + edop::draw_below(rng, 5);
        CHECK(edop::essential_codimension(edop::embed(p, target), edop::embed(q, target)).value ==
              base);
        CHECK(edop::essential_codimension(edop::embed(p, target), q).value == base);
    }
}

TEST_CASE("fredholm oracle agrees with the exact trace") {
    std::vector<bool> tail = {true, false};
    ModelProjection h(half_matrix(), tail);
    ModelProjection id2(ExactMatrix::identity(2), tail);
    auto oracle = edop::essential_codimension_fredholm(h, id2);
    CHECK(oracle.value == -1);
    CHECK(oracle.method == edop::CodimMethod::FredholmOracle);

    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t dim = 2 + edop::draw_below(rng, 7);
        std::size_t period = 1 + edop::draw_below(rng, 3);
        auto [p, q] = (trial % 3 == 0) ? edop::random_obstructed_pair(rng, dim, period)
                                       : edop::random_projection_pair(rng, dim, period);
        auto exact = edop::essential_codimension(p, q);
        auto fred = edop::essential_codimension_fredholm(p, q);
        CAPTURE(trial);
        CHECK(exact.value == fred.value);
    }
}

TEST_CASE("spectral projections resolve the operator") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t m = 2 + edop::draw_below(rng, 3);
        SpectrumSet x = edop::random_spectrum(rng, m, false);
        EventuallyDiagonalOperator n =
            edop::random_finite_spectrum_operator(rng, x, 3 + edop::draw_below(rng, 5));

        ExactMatrix sum(n.corner_dim());
        ExactMatrix weighted(n.corner_dim());
        for (std::size_t k = 0; k < m; ++k) {
            ModelProjection pk = edop::spectral_projection(n, x.at(k));
            sum += pk.corner();
            weighted += pk.corner().scaled(x.at(k));
            for (std::size_t t = 0; t < pk.period(); ++t)
                REQUIRE(pk.tail_pattern()[t] == (n.tail().index_at(t) == k));
        }
        CHECK(sum == ExactMatrix::identity(n.corner_dim()));
        CHECK(weighted == n.corner());
    }

    EventuallyDiagonalOperator nf = frozen_n();
    CHECK_THROWS_AS(edop::spectral_projection(nf, GaussianRational(5)), edop::DomainError);
    SpectrumSet x({GaussianRational(0), GaussianRational(1)});
    auto loose = edop::make_operator(x, ExactMatrix::diagonal({GaussianRational(3)}),
                                     TailSchedule({0}, 2), false);
    CHECK_THROWS_AS(edop::spectral_projection(loose, GaussianRational(0)), edop::DomainError);
}

TEST_CASE("redistribution fixes the frozen 2x2 instance") {
    EventuallyDiagonalOperator n = frozen_n();
    ModelProjection p0 = edop::spectral_projection(n, GaussianRational(0));
    ModelProjection p1 = edop::spectral_projection(n, GaussianRational(1));
    CHECK(p0.corner().at(0, 0) == GaussianRational(Rational(1, 2)));
    CHECK(p0.corner().at(0, 1) == GaussianRational(Rational(-1, 2)));

    ModelProjection q0 = indicator(2, 2, {true, false});
    ModelProjection q1 = indicator(2, 0, {false, true});
    CHECK(edop::essential_codimension(p0, q0).value == -1);
    CHECK(edop::essential_codimension(p1, q1).value == 1);

    auto fixed = edop::redistribute({{p0, q0}, {p1, q1}});
    REQUIRE(fixed.size() == 2);
    CHECK(fixed[0].corner() ==
          ExactMatrix::diagonal({GaussianRational(0), GaussianRational(1)}));
    CHECK(fixed[1].corner() ==
          ExactMatrix::diagonal({GaussianRational(1), GaussianRational(0)}));
    CHECK(edop::essential_codimension(p0, fixed[0]).value == 0);
    CHECK(edop::essential_codimension(p1, fixed[1]).value == 0);
    CHECK((fixed[0].corner() * fixed[1].corner()).is_zero());
}

TEST_CASE("redistribution leaves balanced inputs unchanged") {
    std::vector<bool> t0 = {true, false};
    std::vector<bool> t1 = {false, true};
    ModelProjection p0 = indicator(4, 2, t0);
    ModelProjection p1(ExactMatrix::diagonal({GaussianRational(0), GaussianRational(0),
                                              GaussianRational(1), GaussianRational(1)}),
                       t1);
    auto out = edop::redistribute({{p0, p0}, {p1, p1}});
    CHECK(out[0] == p0);
    CHECK(out[1] == p1);
}

TEST_CASE("redistribution rejects invalid inputs") {
    ModelProjection p(half_matrix(), {true, false});
    ModelProjection qd = indicator(2, 1, {true, false});
    // non-diagonal candidate
    CHECK_THROWS_AS(edop::redistribute({{qd, p}}), edop::DomainError);
    // nonzero total codimension
    ModelProjection q2 = indicator(2, 2, {true, false});
    CHECK_THROWS_AS(edop::redistribute({{qd, q2}}), edop::DomainError);
    // overlapping candidates
    ModelProjection a = indicator(2, 1, {true, false});
    ModelProjection b = indicator(2, 2, {false, true});
    ModelProjection pa = indicator(2, 2, {true, false});
    ModelProjection pb = indicator(2, 1, {false, true});
    CHECK_THROWS_AS(edop::redistribute({{pa, a}, {pb, b}}), edop::DomainError);
}

TEST_CASE("redistribution zeroes every codimension on random families") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t m = 2 + edop::draw_below(rng, 3);
        SpectrumSet x = edop::random_spectrum(rng, m, false);
        EventuallyDiagonalOperator n =
            edop::random_finite_spectrum_operator(rng, x, 3 + edop::draw_below(rng, 6));

        // greedy diagonal candidates: give every corner position to the
        // spectrum index with the largest diagonal weight in its projection
        std::vector<ModelProjection> ps;
        for (std::size_t k = 0; k < m; ++k) ps.push_back(edop::spectral_projection(n, x.at(k)));
        std::size_t dim = n.corner_dim();
        std::vector<std::size_t> owner(dim, 0);
        for (std::size_t i = 0; i < dim; ++i) {
            Rational best = ps[0].corner().at(i, i).re;
            for (std::size_t k = 1; k < m; ++k) {
                Rational w = ps[k].corner().at(i, i).re;
                if (w > best) {
                    best = w;
                    owner[i] = k;
                }
            }
        }
        std::vector<std::pair<ModelProjection, ModelProjection>> pairs;
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<GaussianRational> d(dim);
            for (std::size_t i = 0; i < dim; ++i)
                if (owner[i] == k) d[i] = GaussianRational(1);
            std::vector<bool> tl(n.tail().period());
            for (std::size_t t = 0; t < tl.size(); ++t) tl[t] = n.tail().index_at(t) == k;
            pairs.emplace_back(ps[k], ModelProjection(ExactMatrix::diagonal(d), std::move(tl)));
        }

        auto fixed = edop::redistribute(pairs);
        REQUIRE(fixed.size() == m);
        for (std::size_t k = 0; k < m; ++k) {
            CAPTURE(trial);
            CHECK(edop::essential_codimension(pairs[k].first, fixed[k]).value == 0);
            CHECK(fixed[k].corner().is_diagonal());
            for (std::size_t j = k + 1; j < m; ++j)
                REQUIRE((fixed[k].corner() * fixed[j].corner()).is_zero());
        }
    }
}
