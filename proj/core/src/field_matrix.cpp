#include "tenuniq/field_matrix.hpp"

#include <vector>

namespace tenuniq {

FieldMatrix FieldMatrix::select_columns(const std::vector<int>& idx) const {
  if (is_real()) {
    RealMatrix out(rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) out.col(j) = real().col(idx[j]);
    return FieldMatrix(std::move(out));
  }
  ComplexMatrix out(rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(j) = cplx().col(idx[j]);
  return FieldMatrix(std::move(out));
}

double FieldMatrix::max_abs_diff(const FieldMatrix& o) const {
  if (!same_shape(o)) throw InvalidInput("max_abs_diff: shape mismatch");
  double d = 0.0;
  for (Eigen::Index j = 0; j < cols(); ++j)
    for (Eigen::Index i = 0; i < rows(); ++i)
      d = std::max(d, std::abs(at(i, j) - o.at(i, j)));
  return d;
}

}  // namespace tenuniq
