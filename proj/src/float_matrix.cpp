#include "edop/float_matrix.hpp"

namespace edop {

FloatMatrix::FloatMatrix(std::size_t dim, double tol)
    : m_(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))),
      tol_(tol) {
    if (dim == 0) throw ShapeError("matrix dimension must be positive");
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
}

FloatMatrix::FloatMatrix(Eigen::MatrixXcd m, double tol) : m_(std::move(m)), tol_(tol) {
    if (m_.rows() != m_.cols()) throw ShapeError("float matrix must be square");
    if (m_.rows() == 0) throw ShapeError("matrix dimension must be positive");
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
}

FloatMatrix FloatMatrix::identity(std::size_t dim, double tol) {
    return FloatMatrix(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim),
                                                  static_cast<Eigen::Index>(dim)),
                       tol);
}

FloatMatrix FloatMatrix::from_exact(const ExactMatrix& a, double tol) {
    FloatMatrix f(a.dim(), tol);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) f.at(i, j) = a.at(i, j).to_complex();
    return f;
}

double unitary_defect(const FloatMatrix& u) {
    const Eigen::MatrixXcd& m = u.eigen();
    return (m * m.adjoint() - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).norm();
}

int numeric_rank(const FloatMatrix& a, double tol) { return numeric_rank_checked(a, tol).rank; }

RankResult numeric_rank_checked(const FloatMatrix& a, double tol) {
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    if (!a.all_finite()) throw NumericInputError("non-finite entry in float matrix");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a.eigen());
    const auto& sv = svd.singularValues();
    RankResult r;
    if (sv.size() == 0) return r;
    const double smax = sv(0);
    if (smax == 0.0) return r;
    const double cut = tol * smax;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) ++r.rank;
        if (sv(i) > cut / 10.0 && sv(i) < cut * 10.0) r.ill_conditioned = true;
    }
    return r;
}

} // namespace edop
