#pragma once

// Internal templated helpers shared by the certification and lab translation
// units. Not installed.

#include <Eigen/Dense>

#include "tenuniq/field_matrix.hpp"
#include "tenuniq/rng.hpp"

namespace tenuniq::detail {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Mat<Scalar> as_dense(const FieldMatrix& m);
template <>
inline Mat<double> as_dense<double>(const FieldMatrix& m) {
  return m.real();
}
template <>
inline Mat<Complex> as_dense<Complex>(const FieldMatrix& m) {
  return m.to_complex();
}

template <typename Scalar>
Mat<Scalar> khatri_rao_dense(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  Mat<Scalar> out(a.rows() * b.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.cols(); ++r)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), r, b.rows(), 1) = a(i, r) * b.col(r);
  return out;
}

template <typename Scalar>
int dense_rank(const Mat<Scalar>& m, const RankTolerance& tol) {
  Eigen::JacobiSVD<Mat<Scalar>> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol.rel_threshold * s(0)) ++r;
  return r;
}

template <typename Scalar>
Vec<Scalar> random_gaussian_vec(GaussianSampler& g, Eigen::Index n) {
  Vec<Scalar> v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<Scalar, Complex>)
      v(i) = Complex(g.normal(), g.normal());
    else
      v(i) = g.normal();
  }
  return v;
}

template <typename Scalar>
Mat<Scalar> random_gaussian_mat(GaussianSampler& g, Eigen::Index rows, Eigen::Index cols) {
  Mat<Scalar> m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      if constexpr (std::is_same_v<Scalar, Complex>)
        m(i, j) = Complex(g.normal(), g.normal());
      else
        m(i, j) = g.normal();
    }
  return m;
}

/// Minimum-norm least squares via complete orthogonal decomposition.
template <typename Scalar>
Mat<Scalar> solve_ls(const Mat<Scalar>& a, const Mat<Scalar>& rhs) {
  Eigen::CompleteOrthogonalDecomposition<Mat<Scalar>> cod(a);
  return cod.solve(rhs);
}

}  // namespace tenuniq::detail
