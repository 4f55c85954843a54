#include "tenuniq/linalg.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/SVD>

namespace tenuniq {

std::int64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / (n - k + i))
      throw InvalidInput("binomial: value overflows 64 bits");
    r = r * (n - k + i) / i;
  }
  return r;
}

std::vector<std::vector<int>> subsets_lex(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  while (true) {
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return out;
}

namespace {

template <typename Mat>
std::vector<double> svals(const Mat& m) {
  // Jacobi is exact enough for the small blocks this toolkit works with;
  // divide-and-conquer takes over for larger ones.
  if (std::min(m.rows(), m.cols()) <= 16) {
    Eigen::JacobiSVD<Mat> svd(m);
    if (svd.info() != Eigen::Success)
      throw NumericalError("SVD failed to converge");
    std::vector<double> s(svd.singularValues().data(),
                          svd.singularValues().data() + svd.singularValues().size());
    return s;
  }
  Eigen::BDCSVD<Mat> svd(m);
  if (svd.info() != Eigen::Success)
    throw NumericalError("SVD failed to converge");
  std::vector<double> s(svd.singularValues().data(),
                        svd.singularValues().data() + svd.singularValues().size());
  return s;
}

int rank_from_svals(const std::vector<double>& s, const RankTolerance& tol) {
  if (s.empty() || s[0] == 0.0) return 0;
  int r = 0;
  for (double v : s)
    if (v > tol.rel_threshold * s[0]) ++r;
  return r;
}

template <typename Mat>
Mat compound_impl(const Mat& m, int order) {
  const auto row_sets = subsets_lex(static_cast<int>(m.rows()), order);
  const auto col_sets = subsets_lex(static_cast<int>(m.cols()), order);
  Mat out(static_cast<Eigen::Index>(row_sets.size()), static_cast<Eigen::Index>(col_sets.size()));
  Mat sub(order, order);
  for (std::size_t i = 0; i < row_sets.size(); ++i) {
    for (std::size_t j = 0; j < col_sets.size(); ++j) {
      for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b) sub(a, b) = m(row_sets[i][a], col_sets[j][b]);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sub.determinant();
    }
  }
  return out;
}

template <typename Mat>
Mat khatri_rao_impl(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.cols(); ++r)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), r, b.rows(), 1) = a(i, r) * b.col(r);
  return out;
}

template <typename Mat>
Mat kronecker_impl(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Mat>
Mat least_squares_impl(const Mat& a, const Mat& y) {
  // Complete orthogonal decomposition gives the minimum-norm solution for
  // rank-deficient systems.
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
  return cod.solve(y);
}

bool both_real(const FieldMatrix& a, const FieldMatrix& b) {
  return a.is_real() && b.is_real();
}

}  // namespace

std::vector<double> singular_values(const FieldMatrix& m) {
  if (m.empty()) throw InvalidInput("singular_values: empty matrix");
  if (m.is_real()) return svals(m.real());
  return svals(m.cplx());
}

int rank(const FieldMatrix& m, const RankTolerance& tol) {
  if (m.empty()) throw InvalidInput("rank: empty matrix");
  return rank_from_svals(singular_values(m), tol);
}

int k_rank(const FieldMatrix& m, const RankTolerance& tol, int column_cap) {
  if (m.empty()) throw InvalidInput("k_rank: empty matrix");
  const int n = static_cast<int>(m.cols());
  if (n > column_cap)
    throw InvalidInput("k_rank: more than " + std::to_string(column_cap) +
                       " columns (subset enumeration refused)");

  // A numerically zero column (relative to the largest column) forces k = 0.
  std::vector<double> col_norm(n);
  double max_norm = 0.0;
  for (int j = 0; j < n; ++j) {
    col_norm[j] = m.block(0, j, m.rows(), 1).frobenius_norm();
    max_norm = std::max(max_norm, col_norm[j]);
  }
  if (max_norm == 0.0) return 0;
  for (int j = 0; j < n; ++j)
    if (col_norm[j] <= tol.rel_threshold * max_norm) return 0;

  // Independence is hereditary: a full-column-rank matrix has every subset
  // independent, no enumeration needed.
  if (rank(m, tol) == n) return n;

  const int kmax = static_cast<int>(std::min<Eigen::Index>(m.rows(), n));
  for (int k = 2; k <= kmax; ++k) {
    for (const auto& s : subsets_lex(n, k)) {
      if (rank(m.select_columns(s), tol) < k) return k - 1;
    }
  }
  return kmax;
}

FieldMatrix compound(const FieldMatrix& m, int order) {
  if (m.empty()) throw InvalidInput("compound: empty matrix");
  if (order < 1 || order > std::min(m.rows(), m.cols()))
    throw InvalidInput("compound: order out of range");
  const std::int64_t out_rows = binomial(static_cast<int>(m.rows()), order);
  const std::int64_t out_cols = binomial(static_cast<int>(m.cols()), order);
  if (out_rows * out_cols > (std::int64_t{1} << 26))
    throw InvalidInput("compound: result would exceed the supported size");
  if (m.is_real()) return FieldMatrix(compound_impl(m.real(), order));
  return FieldMatrix(compound_impl(m.cplx(), order));
}

FieldMatrix khatri_rao(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.cols()) throw InvalidInput("khatri_rao: column count mismatch");
  if (both_real(a, b)) return FieldMatrix(khatri_rao_impl(a.real(), b.real()));
  return FieldMatrix(khatri_rao_impl(a.to_complex(), b.to_complex()));
}

FieldMatrix kronecker(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.empty() || b.empty()) throw InvalidInput("kronecker: empty input");
  if (both_real(a, b)) return FieldMatrix(kronecker_impl(a.real(), b.real()));
  return FieldMatrix(kronecker_impl(a.to_complex(), b.to_complex()));
}

FieldMatrix least_squares(const FieldMatrix& a, const FieldMatrix& y) {
  if (a.rows() != y.rows()) throw InvalidInput("least_squares: row count mismatch");
  FieldMatrix x = both_real(a, y)
                      ? FieldMatrix(least_squares_impl(a.real(), y.real()))
                      : FieldMatrix(least_squares_impl(a.to_complex(), y.to_complex()));
  const bool finite = [&] {
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Complex v = x.at(i, j);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
      }
    return true;
  }();
  if (!finite) throw NumericalError("least_squares: non-finite solution");
  return x;
}

}  // namespace tenuniq
