#include "edop/lattice.hpp"

#include <algorithm>
#include <utility>

namespace edop {

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    if (a.cols != b.rows) throw ShapeError("integer matrix dimension mismatch");
    IntMat out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

mpz_class det(const IntMat& m) {
    if (m.rows != m.cols) throw ShapeError("determinant of non-square matrix");
    const std::size_t n = m.rows;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IntMat a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

namespace {

struct ColumnOps {
    IntMat* h;
    IntMat* t;

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < h->rows; ++i) std::swap(h->at(i, a), h->at(i, b));
        for (std::size_t i = 0; i < t->rows; ++i) std::swap(t->at(i, a), t->at(i, b));
    }
    void negate_col(std::size_t a) {
        for (std::size_t i = 0; i < h->rows; ++i) h->at(i, a) = -h->at(i, a);
        for (std::size_t i = 0; i < t->rows; ++i) t->at(i, a) = -t->at(i, a);
    }
    // col_a -= q * col_b
    void submul_col(std::size_t a, const mpz_class& q, std::size_t b) {
        if (q == 0) return;
        for (std::size_t i = 0; i < h->rows; ++i) h->at(i, a) -= q * h->at(i, b);
        for (std::size_t i = 0; i < t->rows; ++i) t->at(i, a) -= q * t->at(i, b);
    }
};

} // namespace

HermiteResult hermite_normal_form(const IntMat& m) {
    if (m.rows > 2) throw ShapeError("hermite_normal_form supports at most two rows");
    HermiteResult res;
    res.h = m;
    res.t = IntMat::identity(m.cols);
    ColumnOps ops{&res.h, &res.t};
    IntMat& h = res.h;

    std::size_t pivot_col = 0;
    std::vector<std::size_t> pivot_rows;
    for (std::size_t row = 0; row < m.rows && pivot_col < m.cols; ++row) {
        // Collapse the nonzero entries of this row (at columns >= pivot_col)
        // into a single column by Euclidean column reduction.
        for (;;) {
            std::size_t jmin = m.cols;
            for (std::size_t j = pivot_col; j < m.cols; ++j) {
                if (h.at(row, j) == 0) continue;
                if (jmin == m.cols ||
                    mpz_cmpabs(h.at(row, j).get_mpz_t(), h.at(row, jmin).get_mpz_t()) < 0)
                    jmin = j;
            }
            if (jmin == m.cols) break;  // row is zero from pivot_col on
            bool reduced_any = false;
            for (std::size_t j = pivot_col; j < m.cols; ++j) {
                if (j == jmin || h.at(row, j) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), h.at(row, j).get_mpz_t(), h.at(row, jmin).get_mpz_t());
                ops.submul_col(j, q, jmin);
                reduced_any = true;
            }
            bool single = true;
            for (std::size_t j = pivot_col; j < m.cols; ++j)
                if (j != jmin && h.at(row, j) != 0) single = false;
            if (single) {
                ops.swap_cols(pivot_col, jmin);
                if (h.at(row, pivot_col) < 0) ops.negate_col(pivot_col);
                pivot_rows.push_back(row);
                ++pivot_col;
                break;
            }
            if (!reduced_any) break;  // cannot happen, guards against looping
        }
    }
    res.rank = static_cast<int>(pivot_col);

    // Reduce entries left of each pivot within the pivot's row into [0, pivot).
    for (std::size_t pc = 1; pc < pivot_col; ++pc) {
        std::size_t prow = pivot_rows[pc];
        const mpz_class& piv = h.at(prow, pc);
        for (std::size_t j = 0; j < pc; ++j) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(prow, j).get_mpz_t(), piv.get_mpz_t());
            ops.submul_col(j, q, pc);
        }
    }
    return res;
}

Certificate::Certificate(std::vector<mpz_class> coefficients) : coeffs_(std::move(coefficients)) {
    mpz_class sum = 0;
    for (const auto& c : coeffs_) sum += c;
    if (sum != 0) throw Error("certificate coefficients do not sum to zero");
}

GaussianRational Certificate::evaluate(const std::vector<GaussianRational>& spectrum) const {
    if (spectrum.size() != coeffs_.size())
        throw ShapeError("certificate length does not match spectrum");
    GaussianRational acc;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        Rational c{mpq_class(coeffs_[k])};
        acc += GaussianRational(c * spectrum[k].re, c * spectrum[k].im);
    }
    return acc;
}

KModule build_kmodule(const std::vector<GaussianRational>& x) {
    if (x.empty()) throw InvalidSpectrumError("spectrum must be nonempty");
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j]) throw InvalidSpectrumError("duplicate point in spectrum");

    KModule k;
    k.spectrum_ = x;
    const std::size_t n = x.size() - 1;

    std::vector<GaussianRational> diffs(n);
    k.denom_ = 1;
    for (std::size_t j = 0; j < n; ++j) {
        diffs[j] = x[0] - x[j + 1];
        mpz_lcm(k.denom_.get_mpz_t(), k.denom_.get_mpz_t(), diffs[j].re.den().get_mpz_t());
        mpz_lcm(k.denom_.get_mpz_t(), k.denom_.get_mpz_t(), diffs[j].im.den().get_mpz_t());
    }

    IntMat gen(2, n);
    k.generators_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        k.generators_[j][0] = diffs[j].re.num() * (k.denom_ / diffs[j].re.den());
        k.generators_[j][1] = diffs[j].im.num() * (k.denom_ / diffs[j].im.den());
        gen.at(0, j) = k.generators_[j][0];
        gen.at(1, j) = k.generators_[j][1];
    }
    k.hermite_ = hermite_normal_form(gen);
    return k;
}

namespace {

// Pivot row of hermite column j (columns are echelon: row 0 then row 1).
std::size_t pivot_row(const IntMat& h, std::size_t j) {
    return h.at(0, j) != 0 ? 0 : 1;
}

} // namespace

std::optional<Certificate> membership(const KModule& k, const GaussianRational& z) {
    const std::size_t m = k.num_points();
    const std::size_t n = m - 1;

    Rational tr = z.re * Rational(mpq_class(k.denom()));
    Rational ti = z.im * Rational(mpq_class(k.denom()));
    if (!tr.is_integer() || !ti.is_integer()) return std::nullopt;
    std::array<mpz_class, 2> t{tr.num(), ti.num()};

    const IntMat& h = k.hermite_basis();
    const int rank = k.rank();

    // Solve h * y = t through the echelon structure.
    std::vector<mpz_class> y(n, 0);
    std::array<mpz_class, 2> acc{t[0], t[1]};
    for (int j = 0; j < rank; ++j) {
        std::size_t p = pivot_row(h, static_cast<std::size_t>(j));
        const mpz_class& piv = h.at(p, static_cast<std::size_t>(j));
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc[p].get_mpz_t(), piv.get_mpz_t());
        if (r != 0) return std::nullopt;
        y[static_cast<std::size_t>(j)] = q;
        acc[0] -= q * h.at(0, static_cast<std::size_t>(j));
        acc[1] -= q * h.at(1, static_cast<std::size_t>(j));
    }
    if (acc[0] != 0 || acc[1] != 0) return std::nullopt;

    // Back through the unimodular transform: coefficients on the generators.
    const IntMat& tm = k.hermite_transform();
    std::vector<mpz_class> a(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i] += tm.at(i, j) * y[j];

    std::vector<mpz_class> c(m, 0);
    for (std::size_t j = 0; j < n; ++j) {
        c[0] += a[j];
        c[j + 1] = -a[j];
    }
    Certificate cert(std::move(c));
    if (cert.evaluate(k.spectrum()) != z)
        throw Error("internal: certificate does not re-evaluate to its target");
    return cert;
}

GaussianRational coset_reduce(const KModule& k, const GaussianRational& z) {
    Rational d{mpq_class(k.denom())};
    std::array<Rational, 2> t{z.re * d, z.im * d};

    const IntMat& h = k.hermite_basis();
    for (int j = 0; j < k.rank(); ++j) {
        std::size_t p = pivot_row(h, static_cast<std::size_t>(j));
        Rational piv{mpq_class(h.at(p, static_cast<std::size_t>(j)))};
        mpz_class alpha = (t[p] / piv).floor();
        Rational af{mpq_class(alpha)};
        t[0] -= af * Rational(mpq_class(h.at(0, static_cast<std::size_t>(j))));
        t[1] -= af * Rational(mpq_class(h.at(1, static_cast<std::size_t>(j))));
    }
    return {t[0] / d, t[1] / d};
}

bool independence_check(const KModule& k) {
    return k.rank() == static_cast<int>(k.num_points()) - 1;
}

} // namespace edop
