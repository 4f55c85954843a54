#pragma once

#include "tenuniq/field_matrix.hpp"
#include "tenuniq/rng.hpp"

namespace tenuniq::test {

inline RealMatrix gaussian(GaussianSampler& g, Eigen::Index rows, Eigen::Index cols) {
  RealMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = g.normal();
  return m;
}

inline ComplexMatrix cgaussian(GaussianSampler& g, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(g.normal(), g.normal());
  return m;
}

}  // namespace tenuniq::test
