// Acceptance gate: ten statistical/exact criteria over the full pipeline,
// each with a pinned tolerance and a runtime budget. Prints one line per
// criterion; exits nonzero if any fails its invariant or its budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "edop/diagonalize.hpp"
#include "edop/generator.hpp"
#include "edop/geometry.hpp"
#include "edop/opmodel.hpp"
#include "edop/sequences.hpp"

using edop::EventuallyDiagonalOperator;
using edop::ExactMatrix;
using edop::GaussianRational;
using edop::ModelProjection;
using edop::Rational;
using edop::SpectrumSet;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

// 1. Kadison's integer and the codimension bridge, exact over 1000 pairs.
Outcome criterion_kadison_bridge() {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 1000; ++t) {
        std::size_t dim = 2 + edop::draw_below(rng, 31);  // <= 32
        std::size_t period = 1 + edop::draw_below(rng, 4);
        ModelProjection p = edop::random_projection(rng, dim, period);

        auto ab = edop::kadison_ab(edop::diagonal_of(edop::projection_operator(p)));
        if (!ab.integral) return fail("a-b not integral at trial " + std::to_string(t));

        std::vector<GaussianRational> qd(p.corner_dim());
        const Rational half(1, 2);
        for (std::size_t i = 0; i < p.corner_dim(); ++i)
            if (p.corner().at(i, i).re >= half) qd[i] = GaussianRational(1);
        ModelProjection q(ExactMatrix::diagonal(qd), p.tail_pattern());
        long long codim = edop::essential_codimension(p, q).value;
        if (ab.diff != Rational(codim))
            return fail("a-b != [P:Q] at trial " + std::to_string(t));
    }
    return {};
}

// 2. Codimension algebra: antisymmetry, cocycle, orthogonal additivity.
Outcome criterion_codim_algebra() {
    std::mt19937_64 rng(202);
    for (int t = 0; t < 1000; ++t) {
        std::size_t dim = 2 + edop::draw_below(rng, 7);
        std::size_t period = 1 + edop::draw_below(rng, 4);
        std::vector<bool> tail(period);
        for (std::size_t i = 0; i < period; ++i) tail[i] = edop::draw_below(rng, 2) == 1;
        auto mk = [&] {
            std::size_t rank = edop::draw_below(rng, dim + 1);
            ExactMatrix w = edop::random_exact_unitary(rng, dim, dim + 2);
            std::vector<GaussianRational> d(dim);
            for (std::size_t i = 0; i < rank; ++i) d[i] = GaussianRational(1);
            return ModelProjection(w * ExactMatrix::diagonal(d) * w.adjoint(), tail);
        };
        ModelProjection p = mk(), q = mk(), r = mk();
        long long pq = edop::essential_codimension(p, q).value;
        if (pq != -edop::essential_codimension(q, p).value)
            return fail("antisymmetry failed at trial " + std::to_string(t));
        if (edop::essential_codimension(p, r).value !=
            pq + edop::essential_codimension(q, r).value)
            return fail("cocycle failed at trial " + std::to_string(t));

        // orthogonal pairs under one exact unitary each
        ExactMatrix w1 = edop::random_exact_unitary(rng, dim, dim + 2);
        ExactMatrix w2 = edop::random_exact_unitary(rng, dim, dim + 2);
        std::size_t r1p = edop::draw_below(rng, dim + 1);
        std::size_t r2p = edop::draw_below(rng, dim + 1 - r1p);
        std::size_t r1q = edop::draw_below(rng, dim + 1);
        std::size_t r2q = edop::draw_below(rng, dim + 1 - r1q);
        std::vector<bool> t1(period), t2(period);
        for (std::size_t i = 0; i < period; ++i) {
            switch (edop::draw_below(rng, 3)) {
                case 0: t1[i] = true; break;
                case 1: t2[i] = true; break;
                default: break;
            }
        }
        auto band = [&](const ExactMatrix& w, std::size_t lo, std::size_t count,
                        const std::vector<bool>& tl) {
            std::vector<GaussianRational> d(dim);
            for (std::size_t i = 0; i < count; ++i) d[lo + i] = GaussianRational(1);
            return ModelProjection(w * ExactMatrix::diagonal(d) * w.adjoint(), tl);
        };
        ModelProjection p1 = band(w1, 0, r1p, t1), p2 = band(w1, r1p, r2p, t2);
        ModelProjection q1 = band(w2, 0, r1q, t1), q2 = band(w2, r1q, r2q, t2);
        ModelProjection psum(p1.corner() + p2.corner(), [&] {
            std::vector<bool> s(period);
            for (std::size_t i = 0; i < period; ++i) s[i] = t1[i] || t2[i];
            return s;
        }());
        ModelProjection qsum(q1.corner() + q2.corner(), psum.tail_pattern());
        long long lhs = edop::essential_codimension(p1, q1).value +
                        edop::essential_codimension(p2, q2).value;
        if (lhs != edop::essential_codimension(psum, qsum).value)
            return fail("orthogonal additivity failed at trial " + std::to_string(t));
    }
    return {};
}

// 3. Exact trace vs numeric Fredholm oracle at tol 1e-10, 500 pairs.
Outcome criterion_oracle_agreement() {
    std::mt19937_64 rng(303);
    for (int t = 0; t < 500; ++t) {
        std::size_t dim = 2 + edop::draw_below(rng, 11);
        std::size_t period = 1 + edop::draw_below(rng, 3);
        auto [p, q] = (t % 3 == 0) ? edop::random_obstructed_pair(rng, dim, period)
                                   : edop::random_projection_pair(rng, dim, period);
        long long exact = edop::essential_codimension(p, q).value;
        long long oracle = edop::essential_codimension_fredholm(p, q, 1e-10).value;
        if (exact != oracle)
            return fail("exact " + std::to_string(exact) + " vs oracle " +
                        std::to_string(oracle) + " at trial " + std::to_string(t));
    }
    return {};
}

// 4. E(UNU*-N) has trace ~0 and matches its two-term decomposition.
Outcome criterion_trace_invariance() {
    std::mt19937_64 rng(404);
    for (int t = 0; t < 500; ++t) {
        std::size_t m = 2 + edop::draw_below(rng, 3);
        std::size_t dim = 4 + edop::draw_below(rng, 29);  // <= 32
        SpectrumSet x = edop::random_spectrum(rng, m, false);
        std::vector<std::size_t> pat(1 + edop::draw_below(rng, 3));
        for (auto& v : pat) v = edop::draw_below(rng, m);
        EventuallyDiagonalOperator n =
            edop::random_diagonal_operator(rng, x, dim, edop::TailSchedule(pat, m));
        auto u = edop::random_restricted_unitary(rng, dim + edop::draw_below(rng, 9));

        auto delta = edop::expectation_delta(n, u);
        double scale = 1.0 + edop::FloatMatrix::from_exact(n.corner()).frobenius_norm();
        if (std::abs(delta.trace) > 1e-8 * scale)
            return fail("trace bound failed at trial " + std::to_string(t));
        if (!delta.decomposition.has_value())
            return fail("decomposition missing at trial " + std::to_string(t));
        for (std::size_t i = 0; i < delta.diagonal.size(); ++i)
            if (std::abs(delta.diagonal[i] - (*delta.decomposition)[i]) > 1e-10)
                return fail("decomposition mismatch at trial " + std::to_string(t));
    }
    return {};
}

// 5. Diagonalization round trip with verdict cross-check, 200 operators.
Outcome criterion_round_trip() {
    std::mt19937_64 rng(505);
    for (int t = 0; t < 200; ++t) {
        std::size_t m = 2 + edop::draw_below(rng, 3);  // <= 4
        std::size_t dim = 4 + edop::draw_below(rng, 29);
        SpectrumSet x = edop::random_spectrum(rng, m, true);
        EventuallyDiagonalOperator n = edop::random_finite_spectrum_operator(rng, x, dim);

        auto res = edop::restricted_diagonalize(n);
        double scale = 1.0 + edop::FloatMatrix::from_exact(n.corner()).frobenius_norm();
        if (res.residual > 1e-9 * scale)
            return fail("residual " + std::to_string(res.residual) + " at trial " +
                        std::to_string(t));
        if (res.u.defect() > 1e-10)
            return fail("unitary defect at trial " + std::to_string(t));
        if (!edop::is_restricted_diagonalizable(n).verdict)
            return fail("verdict false at trial " + std::to_string(t));
    }
    return {};
}

// 6. Exact diagonal trace identity with lattice certificate, 200 pairs.
Outcome criterion_diag_identity() {
    std::mt19937_64 rng(606);
    for (int t = 0; t < 200; ++t) {
        std::size_t m = 2 + edop::draw_below(rng, 3);
        std::size_t dim = 3 + edop::draw_below(rng, 10);
        SpectrumSet x = edop::random_spectrum(rng, m, false);
        EventuallyDiagonalOperator n = edop::random_finite_spectrum_operator(rng, x, dim);
        // N' corner larger by a multiple of the period, so the tails stay in phase
        std::size_t dp = dim + n.tail().period() * edop::draw_below(rng, 3);
        EventuallyDiagonalOperator nprime = edop::random_diagonal_operator(rng, x, dp, n.tail());

        auto res = edop::expectation_delta_diag(n, nprime);  // identity asserted inside
        GaussianRational weighted;
        for (std::size_t k = 0; k < m; ++k)
            weighted += GaussianRational(Rational(res.codims[k])) * x.at(k);
        if (weighted != res.trace)
            return fail("codimension sum mismatch at trial " + std::to_string(t));
        if (!res.certificate.has_value())
            return fail("no certificate at trial " + std::to_string(t));
        mpz_class sum = 0;
        for (const auto& c : res.certificate->coefficients()) sum += c;
        if (sum != 0) return fail("certificate sum nonzero at trial " + std::to_string(t));
        if (res.certificate->evaluate(x.points()) != res.trace)
            return fail("certificate evaluation mismatch at trial " + std::to_string(t));
    }
    return {};
}

// 7. Convexity bound over 10^4 precondition-valid combinations.
Outcome criterion_convexity() {
    std::mt19937_64 rng(707);
    int done = 0;
    long attempts = 0;
    while (done < 10000) {
        if (++attempts > 1000000) return fail("generator starved");
        std::size_t m = 2 + edop::draw_below(rng, 5);  // <= 6
        SpectrumSet x = edop::random_spectrum(rng, m, edop::draw_below(rng, 2) == 0);
        auto hull = edop::hull_vertex_indices(x);
        std::size_t k = hull[edop::draw_below(rng, hull.size())];
        edop::Line line = edop::separating_line(x, k);
        for (int rep = 0; rep < 100 && done < 10000; ++rep) {
            std::vector<long> w(m);
            long total = 0;
            for (std::size_t j = 0; j < m; ++j) {
                w[j] = static_cast<long>(edop::draw_below(rng, 5));
                total += w[j];
            }
            w[k] += 4 * total + 1;
            total += 4 * total + 1;
            std::vector<Rational> coeffs;
            GaussianRational xpt;
            for (std::size_t j = 0; j < m; ++j) {
                coeffs.emplace_back(w[j], total);
                xpt += GaussianRational(coeffs.back()) * x.at(j);
            }
            if (line.eval(xpt).sign() <= 0) continue;  // hypothesis not met; skip
            if (!edop::convexity_bound_check(x.points(), coeffs, k, line))
                return fail("bound violated after " + std::to_string(done) + " instances");
            ++done;
        }
    }
    return {};
}

// 8. Truncation diagnostics: convergent HS trend vs divergent trace trend.
Outcome criterion_truncation_trend() {
    auto rep = edop::example_310_diagnostics(10000);
    if (rep.max_pythagorean_error > 1e-14) return fail("pythagorean drift");
    if (rep.hs_partial > 4.0)
        return fail("hs_partial " + std::to_string(rep.hs_partial) + " > 4.0");
    for (std::size_t i = 1; i < rep.hs_checkpoints.size(); ++i)
        if (rep.hs_checkpoints[i].second < rep.hs_checkpoints[i - 1].second)
            return fail("hs partial sums not monotone");
    if (rep.tc_partial < 11.7)
        return fail("tc_partial " + std::to_string(rep.tc_partial) + " < 11.7");
    double tc3 = 0, tc4 = 0;
    for (const auto& [n, v] : rep.tc_checkpoints) {
        if (n == 1000) tc3 = v;
        if (n == 10000) tc4 = v;
    }
    if (tc4 - tc3 < 3.0) return fail("log-divergence signature missing");
    return {};
}

// 9. Full-rank converse over {0,1,i}; dependent-spectrum path over {0,1,2}.
Outcome criterion_converse() {
    SpectrumSet tri({GaussianRational(0), GaussianRational(1), GaussianRational(0, 1)});
    std::mt19937_64 rng(909);
    for (int t = 0; t < 50; ++t) {
        std::size_t dim = 3 + edop::draw_below(rng, 8);
        EventuallyDiagonalOperator n = edop::random_finite_spectrum_operator(rng, tri, dim);
        EventuallyDiagonalOperator nprime = edop::restricted_diagonalize(n).diagonal;
        auto res = edop::full_rank_converse_check(n, nprime);
        if (!res.applicable || !res.u.has_value())
            return fail("not applicable at trial " + std::to_string(t));
        if (res.residual > 1e-9)
            return fail("residual " + std::to_string(res.residual) + " at trial " +
                        std::to_string(t));
    }

    SpectrumSet line({GaussianRational(0), GaussianRational(1), GaussianRational(2)});
    auto n2 = edop::make_operator(
        line, ExactMatrix::diagonal({GaussianRational(1), GaussianRational(2)}),
        edop::TailSchedule({0, 1, 2}, 3), true);
    auto dep = edop::full_rank_converse_check(n2, n2);
    if (dep.applicable || dep.note.empty()) return fail("dependent spectrum not reported");
    return {};
}

// 10. Nonzero codimension must abort conjugation, naming the pair.
Outcome criterion_obstruction() {
    std::mt19937_64 rng(1010);
    for (int t = 0; t < 100; ++t) {
        std::size_t dim = 2 + edop::draw_below(rng, 9);
        auto [p, q] = edop::random_obstructed_pair(rng, dim, 1 + edop::draw_below(rng, 3));
        try {
            edop::conjugate_projections({{p, q}});
            return fail("no obstruction raised at trial " + std::to_string(t));
        } catch (const edop::ObstructionError& e) {
            if (e.pair_index != 0 || e.codim == 0 ||
                std::string(e.what()).find("pair 0") == std::string::npos)
                return fail("obstruction did not name the pair at trial " + std::to_string(t));
        }
    }
    return {};
}

} // namespace

int main() {
    struct Row {
        const char* name;
        Outcome (*run)();
        double budget_s;
    };
    const Row rows[] = {
        {"integrality bridge: 1000 projection pairs, a-b = [P:Q], exact",
         criterion_kadison_bridge, 30.0},
        {"codimension algebra: 1000 instances, exact integer identities",
         criterion_codim_algebra, 30.0},
        {"oracle agreement: 500 pairs, exact trace vs Fredholm index (tol 1e-10)",
         criterion_oracle_agreement, 60.0},
        {"trace invariance: 500 (N,U), |trace| <= 1e-8*(1+|N|), decomposition to 1e-10",
         criterion_trace_invariance, 60.0},
        {"diagonalization round trip: 200 operators, residual <= 1e-9*(1+|N|)",
         criterion_round_trip, 120.0},
        {"diagonal trace identity: 200 pairs, exact with certificate",
         criterion_diag_identity, 60.0},
        {"convexity bound: 10^4 valid combinations, all true",
         criterion_convexity, 30.0},
        {"truncation trend: hs <= 4.0, tc >= 11.7, log signature >= 3.0",
         criterion_truncation_trend, 5.0},
        {"full-rank converse: 50 instances, residual <= 1e-9; dependent path reported",
         criterion_converse, 30.0},
        {"obstruction necessity: 100 pairs, error names the pair",
         criterion_obstruction, 10.0},
    };

    int failures = 0;
    int idx = 0;
    for (const auto& row : rows) {
        ++idx;
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = row.run();
        } catch (const std::exception& e) {
            out = fail(std::string("unexpected exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_budget = elapsed <= row.budget_s;
        bool pass = out.ok && in_budget;
        if (!pass) ++failures;
        std::printf("%s %2d/10  %s  (%.2fs, budget %.0fs)%s%s\n", pass ? "PASS" : "FAIL", idx,
                    row.name, elapsed, row.budget_s, out.detail.empty() ? "" : " -- ",
                    out.detail.c_str());
        if (!in_budget && out.ok) std::printf("           over budget\n");
    }
    std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
