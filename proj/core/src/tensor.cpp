#include "tenuniq/tensor.hpp"

namespace tenuniq {

Tensor3::Tensor3(Field f, Eigen::Index i, Eigen::Index j, Eigen::Index k) : dims_{i, j, k} {
  if (i < 1 || j < 1 || k < 1) throw InvalidInput("Tensor3: dimensions must be positive");
  if (f == Field::Real)
    storage_ = Eigen::VectorXd::Zero(i * j * k).eval();
  else
    storage_ = Eigen::VectorXcd::Zero(i * j * k).eval();
}

Complex Tensor3::at(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
  if (field() == Field::Real) return Complex(real_data()(flat(i, j, k)), 0.0);
  return cplx_data()(flat(i, j, k));
}

void Tensor3::set(Eigen::Index i, Eigen::Index j, Eigen::Index k, Complex v) {
  if (field() == Field::Real)
    real_data()(flat(i, j, k)) = v.real();
  else
    cplx_data()(flat(i, j, k)) = v;
}

double Tensor3::frobenius_norm() const {
  if (field() == Field::Real) return real_data().norm();
  return cplx_data().norm();
}

double Tensor3::distance(const Tensor3& other) const {
  if (dims_ != other.dims_) throw InvalidInput("Tensor3::distance: shape mismatch");
  if (field() == Field::Real && other.field() == Field::Real)
    return (real_data() - other.real_data()).norm();
  Eigen::VectorXcd a = field() == Field::Real ? real_data().cast<Complex>().eval() : cplx_data();
  Eigen::VectorXcd b =
      other.field() == Field::Real ? other.real_data().cast<Complex>().eval() : other.cplx_data();
  return (a - b).norm();
}

void FactorSet::validate() const {
  if (A.cols() < 1) throw InvalidInput("FactorSet: R must be >= 1");
  if (B.cols() != A.cols() || C.cols() != A.cols())
    throw InvalidInput("FactorSet: factor matrices must share the column count");
  if (A.empty() || B.empty() || C.empty()) throw InvalidInput("FactorSet: empty factor");
  if (sfs) {
    if (A.rows() != B.rows() || A.max_abs_diff(B) != 0.0)
      throw InvalidInput("FactorSet: sfs set but B differs from A");
  }
}

namespace {

template <typename Mat, typename Vec>
void fill_from_factors(const Mat& a, const Mat& b, const Mat& c, Vec& out) {
  const Eigen::Index I = a.rows(), J = b.rows(), K = c.rows(), R = a.cols();
  for (Eigen::Index k = 0; k < K; ++k)
    for (Eigen::Index j = 0; j < J; ++j)
      for (Eigen::Index i = 0; i < I; ++i) {
        typename Mat::Scalar v(0);
        for (Eigen::Index r = 0; r < R; ++r) v += a(i, r) * b(j, r) * c(k, r);
        out(i + I * (j + J * k)) = v;
      }
}

}  // namespace

Tensor3 from_factors(const FactorSet& f) {
  f.validate();
  const Eigen::Index I = f.A.rows(), J = f.B.rows(), K = f.C.rows();
  Tensor3 t(f.field(), I, J, K);
  if (f.field() == Field::Real)
    fill_from_factors(f.A.real(), f.B.real(), f.C.real(), t.real_data());
  else {
    ComplexMatrix a = f.A.to_complex(), b = f.B.to_complex(), c = f.C.to_complex();
    fill_from_factors(a, b, c, t.cplx_data());
  }
  return t;
}

namespace {

// (row, col) of an entry (i,j,k) in the mode-n unfolding.
inline std::pair<Eigen::Index, Eigen::Index> unfold_pos(int mode, Eigen::Index i, Eigen::Index j,
                                                        Eigen::Index k, Eigen::Index I,
                                                        Eigen::Index J, Eigen::Index K) {
  switch (mode) {
    case 1: return {i, k * J + j};
    case 2: return {j, i * K + k};
    default: return {k, j * I + i};
  }
  (void)K;
}

}  // namespace

FieldMatrix unfold(const Tensor3& t, int mode) {
  if (mode < 1 || mode > 3) throw InvalidInput("unfold: mode must be 1, 2, or 3");
  const Eigen::Index I = t.dim(0), J = t.dim(1), K = t.dim(2);
  const Eigen::Index rows = mode == 1 ? I : mode == 2 ? J : K;
  const Eigen::Index cols = I * J * K / rows;
  if (t.field() == Field::Real) {
    RealMatrix m(rows, cols);
    for (Eigen::Index k = 0; k < K; ++k)
      for (Eigen::Index j = 0; j < J; ++j)
        for (Eigen::Index i = 0; i < I; ++i) {
          auto [r, c] = unfold_pos(mode, i, j, k, I, J, K);
          m(r, c) = t.at(i, j, k).real();
        }
    return FieldMatrix(std::move(m));
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index k = 0; k < K; ++k)
    for (Eigen::Index j = 0; j < J; ++j)
      for (Eigen::Index i = 0; i < I; ++i) {
        auto [r, c] = unfold_pos(mode, i, j, k, I, J, K);
        m(r, c) = t.at(i, j, k);
      }
  return FieldMatrix(std::move(m));
}

Tensor3 refold(const FieldMatrix& m, int mode, const std::array<Eigen::Index, 3>& dims) {
  if (mode < 1 || mode > 3) throw InvalidInput("refold: mode must be 1, 2, or 3");
  const Eigen::Index I = dims[0], J = dims[1], K = dims[2];
  const Eigen::Index rows = mode == 1 ? I : mode == 2 ? J : K;
  if (m.rows() != rows || m.cols() != I * J * K / rows)
    throw InvalidInput("refold: matrix shape inconsistent with dims");
  Tensor3 t(m.field(), I, J, K);
  for (Eigen::Index k = 0; k < K; ++k)
    for (Eigen::Index j = 0; j < J; ++j)
      for (Eigen::Index i = 0; i < I; ++i) {
        auto [r, c] = unfold_pos(mode, i, j, k, I, J, K);
        t.set(i, j, k, m.at(r, c));
      }
  return t;
}

FieldMatrix frontal_slice(const Tensor3& t, Eigen::Index k) {
  if (k < 0 || k >= t.dim(2)) throw InvalidInput("frontal_slice: index out of range");
  const Eigen::Index I = t.dim(0), J = t.dim(1);
  if (t.field() == Field::Real) {
    RealMatrix m(I, J);
    for (Eigen::Index j = 0; j < J; ++j)
      for (Eigen::Index i = 0; i < I; ++i) m(i, j) = t.at(i, j, k).real();
    return FieldMatrix(std::move(m));
  }
  ComplexMatrix m(I, J);
  for (Eigen::Index j = 0; j < J; ++j)
    for (Eigen::Index i = 0; i < I; ++i) m(i, j) = t.at(i, j, k);
  return FieldMatrix(std::move(m));
}

bool is_sfs(const Tensor3& t, const RankTolerance& tol) {
  if (t.dim(0) != t.dim(1)) return false;
  for (Eigen::Index k = 0; k < t.dim(2); ++k) {
    FieldMatrix s = frontal_slice(t, k);
    const double den = s.frobenius_norm();
    double num;
    if (s.is_real())
      num = (s.real() - s.real().transpose().eval()).norm();
    else
      num = (s.cplx() - s.cplx().transpose().eval()).norm();
    if (num > tol.rel_threshold * den) return false;
  }
  return true;
}

}  // namespace tenuniq
