#pragma once

#include <array>
#include <variant>

#include "tenuniq/field_matrix.hpp"
#include "tenuniq/linalg.hpp"

namespace tenuniq {

/// Dense third-order tensor. Entries are stored with i fastest, then j,
/// then k (normative for file I/O).
class Tensor3 {
 public:
  Tensor3() : dims_{0, 0, 0}, storage_(Eigen::VectorXd()) {}
  Tensor3(Field f, Eigen::Index i, Eigen::Index j, Eigen::Index k);

  Field field() const {
    return std::holds_alternative<Eigen::VectorXd>(storage_) ? Field::Real : Field::Complex;
  }
  Eigen::Index dim(int mode) const { return dims_[mode]; }
  const std::array<Eigen::Index, 3>& dims() const { return dims_; }
  Eigen::Index size() const { return dims_[0] * dims_[1] * dims_[2]; }

  Complex at(Eigen::Index i, Eigen::Index j, Eigen::Index k) const;
  void set(Eigen::Index i, Eigen::Index j, Eigen::Index k, Complex v);

  const Eigen::VectorXd& real_data() const { return std::get<Eigen::VectorXd>(storage_); }
  const Eigen::VectorXcd& cplx_data() const { return std::get<Eigen::VectorXcd>(storage_); }
  Eigen::VectorXd& real_data() { return std::get<Eigen::VectorXd>(storage_); }
  Eigen::VectorXcd& cplx_data() { return std::get<Eigen::VectorXcd>(storage_); }

  double frobenius_norm() const;
  /// Frobenius norm of (this - other); shapes must match.
  double distance(const Tensor3& other) const;

 private:
  Eigen::Index flat(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
    return i + dims_[0] * (j + dims_[1] * k);
  }
  std::array<Eigen::Index, 3> dims_;
  std::variant<Eigen::VectorXd, Eigen::VectorXcd> storage_;
};

/// Factor triple (A, B, C) with a common column count R. When sfs is set,
/// B is entrywise identical to A (so the tensor has symmetric frontal slices).
struct FactorSet {
  FieldMatrix A, B, C;
  bool sfs = false;

  Eigen::Index rank() const { return A.cols(); }
  Field field() const { return A.is_real() && B.is_real() && C.is_real() ? Field::Real : Field::Complex; }
  /// Throws InvalidInput when the invariants do not hold.
  void validate() const;
};

/// t_{ijk} = sum_r A(i,r) B(j,r) C(k,r).
Tensor3 from_factors(const FactorSet& f);

/// Mode-n matricization. Mode 1 is I x (K*J) with column index k*J + j
/// (0-based); modes 2 and 3 follow by cyclic analogy, so
/// unfold(T,1) = A (C kr B)^T, unfold(T,2) = B (A kr C)^T, unfold(T,3) = C (B kr A)^T.
FieldMatrix unfold(const Tensor3& t, int mode);

/// Inverse of unfold for the given mode.
Tensor3 refold(const FieldMatrix& m, int mode, const std::array<Eigen::Index, 3>& dims);

/// The I x J matrix (t_{ijk}) at fixed k (1-based k per the toolkit's CLI; here 0-based index).
FieldMatrix frontal_slice(const Tensor3& t, Eigen::Index k);

/// True iff I == J and every frontal slice S satisfies ||S - S^T||_F <= rel * ||S||_F.
bool is_sfs(const Tensor3& t, const RankTolerance& tol = RankTolerance());

}  // namespace tenuniq
