#ifndef QTORUS_MATRIX_HPP
#define QTORUS_MATRIX_HPP

#include <Eigen/Dense>

#include "qtorus/field.hpp"

namespace qtorus {

// Dense p x p complex operator on the p-dimensional representation space.
using ComplexMatrix = Eigen::MatrixXcd;

inline ComplexMatrix identity_matrix(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-8) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

// Deviation of g from unitarity, max |(g g* - I)_{xy}|.
inline double unitarity_defect(const ComplexMatrix& g) {
    return max_abs_diff(g * g.adjoint(), identity_matrix(g.rows()));
}

} // namespace qtorus

#endif
