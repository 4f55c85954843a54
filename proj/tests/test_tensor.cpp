#include <doctest.h>

#include "tenuniq/tensor.hpp"

#include "helpers.hpp"

using namespace tenuniq;

namespace {

FactorSet random_factors(std::uint64_t seed, int i, int j, int k, int r) {
  GaussianSampler g(seed);
  return FactorSet{FieldMatrix(test::gaussian(g, i, r)), FieldMatrix(test::gaussian(g, j, r)),
                   FieldMatrix(test::gaussian(g, k, r)), false};
}

}  // namespace

TEST_CASE("from_factors: rank-1 outer product") {
  RealMatrix a(2, 1), b(2, 1), c(2, 1);
  a << 1, 2;
  b << 1, 0;
  c << 1, 1;
  Tensor3 t = from_factors({FieldMatrix(a), FieldMatrix(b), FieldMatrix(c), false});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        CHECK(t.at(i, j, k).real() == doctest::Approx(a(i, 0) * b(j, 0) * c(k, 0)));
  CHECK(t.at(0, 0, 0).real() == 1);
  CHECK(t.at(0, 1, 0).real() == 0);
  CHECK(t.at(1, 0, 0).real() == 2);
  CHECK(t.at(0, 0, 1).real() == 1);
}

TEST_CASE("from_factors: identity factors give the superdiagonal tensor") {
  FieldMatrix id = FieldMatrix::identity(Field::Real, 3);
  Tensor3 t = from_factors({id, id, id, false});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        CHECK(t.at(i, j, k).real() == doctest::Approx(i == j && j == k ? 1.0 : 0.0));
}

TEST_CASE("from_factors: zero columns contribute nothing") {
  FactorSet f = random_factors(9, 3, 4, 5, 2);
  GaussianSampler g(10);
  RealMatrix a3(3, 3), b3(4, 3), c3(5, 3);
  a3 << f.A.real(), RealMatrix::Zero(3, 1);
  b3 << f.B.real(), test::gaussian(g, 4, 1);
  c3 << f.C.real(), test::gaussian(g, 5, 1);
  Tensor3 t2 = from_factors({FieldMatrix(a3), FieldMatrix(b3), FieldMatrix(c3), false});
  CHECK(t2.distance(from_factors(f)) < 1e-14);
}

TEST_CASE("unfold: mode identities against Khatri-Rao forms") {
  FactorSet f = random_factors(12, 3, 4, 5, 3);
  Tensor3 t = from_factors(f);
  const double n = t.frobenius_norm();

  RealMatrix u1 = unfold(t, 1).real();
  RealMatrix u2 = unfold(t, 2).real();
  RealMatrix u3 = unfold(t, 3).real();
  CHECK((u1 - f.A.real() * khatri_rao(f.C, f.B).real().transpose()).norm() <= 1e-12 * n);
  CHECK((u2 - f.B.real() * khatri_rao(f.A, f.C).real().transpose()).norm() <= 1e-12 * n);
  CHECK((u3 - f.C.real() * khatri_rao(f.B, f.A).real().transpose()).norm() <= 1e-12 * n);

  FieldMatrix id = FieldMatrix::identity(Field::Real, 3);
  Tensor3 diag = from_factors({id, id, id, false});
  CHECK(unfold(diag, 1).real().isApprox(id.real() * khatri_rao(id, id).real().transpose()));
}

TEST_CASE("unfold: rank-1 tensor unfolds to rank 1 in every mode") {
  FactorSet f = random_factors(21, 3, 4, 5, 1);
  Tensor3 t = from_factors(f);
  for (int mode = 1; mode <= 3; ++mode) CHECK(rank(unfold(t, mode)) == 1);
}

TEST_CASE("unfold/refold round-trip is the identity") {
  GaussianSampler g(33);
  Tensor3 t(Field::Real, 2, 3, 4);
  for (Eigen::Index i = 0; i < t.size(); ++i) t.real_data()(i) = g.normal();
  for (int mode = 1; mode <= 3; ++mode) {
    Tensor3 back = refold(unfold(t, mode), mode, t.dims());
    CHECK(back.distance(t) == 0.0);
  }
  CHECK_THROWS_AS(unfold(t, 4), InvalidInput);
}

TEST_CASE("frontal_slice: equals A diag(C row k) B^T") {
  FactorSet f = random_factors(44, 4, 4, 3, 2);
  Tensor3 t = from_factors(f);
  for (int k = 0; k < 3; ++k) {
    RealMatrix want =
        f.A.real() * f.C.real().row(k).asDiagonal() * f.B.real().transpose();
    CHECK((frontal_slice(t, k).real() - want).norm() <= 1e-12 * want.norm());
  }
  CHECK_THROWS_AS(frontal_slice(t, 3), InvalidInput);
  CHECK_THROWS_AS(frontal_slice(t, -1), InvalidInput);
}

TEST_CASE("is_sfs: construction, genericity, and degenerate cases") {
  GaussianSampler g(55);
  FieldMatrix a(test::gaussian(g, 4, 3)), c(test::gaussian(g, 5, 3));
  Tensor3 sym = from_factors({a, a, c, true});
  CHECK(is_sfs(sym));
  for (int k = 0; k < 5; ++k) {
    FieldMatrix s = frontal_slice(sym, k);
    CHECK((s.real() - s.real().transpose().eval()).norm() <= 1e-12 * s.real().norm());
  }

  FactorSet f = random_factors(56, 4, 4, 5, 3);
  CHECK_FALSE(is_sfs(from_factors(f)));
  CHECK_FALSE(is_sfs(from_factors(random_factors(57, 3, 4, 5, 2))));  // I != J

  Tensor3 zero(Field::Real, 3, 3, 2);
  CHECK(is_sfs(zero));
}

TEST_CASE("from_factors is multilinear in each factor") {
  GaussianSampler g(66);
  const double alpha = 0.7, beta = -1.3;
  FactorSet f = random_factors(67, 3, 4, 5, 3);
  FieldMatrix a2(test::gaussian(g, 3, 3));

  RealMatrix mix = alpha * f.A.real() + beta * a2.real();
  Tensor3 lhs = from_factors({FieldMatrix(mix), f.B, f.C, false});

  Tensor3 t1 = from_factors(f);
  Tensor3 t2 = from_factors({a2, f.B, f.C, false});
  Tensor3 want(Field::Real, 3, 4, 5);
  want.real_data() = alpha * t1.real_data() + beta * t2.real_data();
  CHECK(lhs.distance(want) <= 1e-12 * want.frobenius_norm());
}

TEST_CASE("trivial indeterminacies leave the tensor unchanged") {
  FactorSet f = random_factors(78, 3, 4, 5, 3);
  // Permute columns by (2,0,1) and rescale with per-term scale product 1.
  std::vector<int> perm{2, 0, 1};
  const double al[3] = {2.0, -0.5, 3.0};
  const double be[3] = {0.25, -4.0, 1.0 / 3.0};
  RealMatrix a(3, 3), b(4, 3), c(5, 3);
  for (int r = 0; r < 3; ++r) {
    a.col(r) = al[r] * f.A.real().col(perm[r]);
    b.col(r) = be[r] * f.B.real().col(perm[r]);
    c.col(r) = (1.0 / (al[r] * be[r])) * f.C.real().col(perm[r]);
  }
  Tensor3 t1 = from_factors(f);
  Tensor3 t2 = from_factors({FieldMatrix(a), FieldMatrix(b), FieldMatrix(c), false});
  CHECK(t1.distance(t2) <= 1e-12 * t1.frobenius_norm());
}

TEST_CASE("FactorSet validation") {
  GaussianSampler g(88);
  FieldMatrix a(test::gaussian(g, 3, 2)), b(test::gaussian(g, 4, 2)), c(test::gaussian(g, 5, 3));
  CHECK_THROWS_AS(from_factors({a, b, c, false}), InvalidInput);  // column mismatch
  FactorSet bad{a, FieldMatrix(test::gaussian(g, 3, 2)), FieldMatrix(test::gaussian(g, 5, 2)), true};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);  // sfs but B != A
}
