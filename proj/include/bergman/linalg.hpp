#pragma once

#include <stdexcept>

#include <Eigen/Dense>

namespace bergman {

/// ||A^* A - I||_F
template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived>& a) {
    using Plain = typename Derived::PlainObject;
    if (a.rows() != a.cols()) throw std::invalid_argument("unitarity_defect: matrix is not square");
    return (a.adjoint() * a - Plain::Identity(a.rows(), a.cols())).norm();
}

/// ||A B - B A||_F
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar commutator_norm(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("commutator_norm: dimension mismatch");
    return (a * b - b * a).norm();
}

/// Largest magnitude off the main diagonal.
template <typename Derived>
typename Derived::RealScalar max_off_diagonal(const Eigen::MatrixBase<Derived>& a) {
    typename Derived::RealScalar worst(0);
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) worst = std::max<typename Derived::RealScalar>(worst, std::abs(a(i, j)));
    return worst;
}

/// ||A - A^*||_F
template <typename Derived>
typename Derived::RealScalar hermitian_defect(const Eigen::MatrixBase<Derived>& a) {
    return (a - a.adjoint()).norm();
}

} // namespace bergman
