#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <Eigen/Dense>

namespace tenuniq {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Scalar field a matrix or tensor lives over.
enum class Field { Real, Complex };

inline const char* to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

/// Thrown when an input violates an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical decomposition fails (never silently mapped to a
/// result such as rank 0).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative threshold used by every tolerance-based rank decision:
/// singular values sigma_i count while sigma_i > rel_threshold * sigma_max.
struct RankTolerance {
  double rel_threshold = 1e-9;

  RankTolerance() = default;
  explicit RankTolerance(double rel) : rel_threshold(rel) {
    if (!(rel >= 0.0) || rel >= 1.0)
      throw InvalidInput("RankTolerance: rel_threshold must lie in [0, 1)");
  }
};

/// Dense matrix over R or C. The field tag is uniform for the whole matrix;
/// complex entries are (re, im) pairs. Transposition never conjugates.
class FieldMatrix {
 public:
  FieldMatrix() : storage_(RealMatrix()) {}
  /* implicit */ FieldMatrix(RealMatrix m) : storage_(std::move(m)) {}
  /* implicit */ FieldMatrix(ComplexMatrix m) : storage_(std::move(m)) {}

  static FieldMatrix zero(Field f, Eigen::Index rows, Eigen::Index cols) {
    if (f == Field::Real) return FieldMatrix(RealMatrix(RealMatrix::Zero(rows, cols)));
    return FieldMatrix(ComplexMatrix(ComplexMatrix::Zero(rows, cols)));
  }
  static FieldMatrix identity(Field f, Eigen::Index n) {
    if (f == Field::Real) return FieldMatrix(RealMatrix(RealMatrix::Identity(n, n)));
    return FieldMatrix(ComplexMatrix(ComplexMatrix::Identity(n, n)));
  }

  Field field() const { return std::holds_alternative<RealMatrix>(storage_) ? Field::Real : Field::Complex; }
  bool is_real() const { return field() == Field::Real; }

  Eigen::Index rows() const {
    return std::visit([](const auto& m) { return m.rows(); }, storage_);
  }
  Eigen::Index cols() const {
    return std::visit([](const auto& m) { return m.cols(); }, storage_);
  }
  bool empty() const { return rows() == 0 || cols() == 0; }

  const RealMatrix& real() const {
    if (!is_real()) throw InvalidInput("FieldMatrix: real() called on complex matrix");
    return std::get<RealMatrix>(storage_);
  }
  const ComplexMatrix& cplx() const {
    if (is_real()) throw InvalidInput("FieldMatrix: cplx() called on real matrix");
    return std::get<ComplexMatrix>(storage_);
  }

  /// Entry as a complex scalar regardless of field (im = 0 for real).
  Complex at(Eigen::Index i, Eigen::Index j) const {
    if (is_real()) return Complex(real()(i, j), 0.0);
    return cplx()(i, j);
  }

  /// Promote to complex storage (values unchanged).
  ComplexMatrix to_complex() const {
    if (is_real()) return real().cast<Complex>();
    return cplx();
  }

  FieldMatrix transpose() const {
    if (is_real()) return FieldMatrix(RealMatrix(real().transpose()));
    return FieldMatrix(ComplexMatrix(cplx().transpose()));  // plain transpose, no conjugation
  }

  FieldMatrix block(Eigen::Index i, Eigen::Index j, Eigen::Index p, Eigen::Index q) const {
    if (is_real()) return FieldMatrix(RealMatrix(real().block(i, j, p, q)));
    return FieldMatrix(ComplexMatrix(cplx().block(i, j, p, q)));
  }

  /// Columns picked by index list, in the given order.
  FieldMatrix select_columns(const std::vector<int>& idx) const;

  double frobenius_norm() const {
    return std::visit([](const auto& m) { return m.norm(); }, storage_);
  }

  bool same_shape(const FieldMatrix& o) const { return rows() == o.rows() && cols() == o.cols(); }

  /// Max absolute entrywise difference; fields may differ (compared as complex).
  double max_abs_diff(const FieldMatrix& o) const;

 private:
  std::variant<RealMatrix, ComplexMatrix> storage_;
};

}  // namespace tenuniq
