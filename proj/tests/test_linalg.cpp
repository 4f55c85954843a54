#include <doctest.h>

#include "tenuniq/linalg.hpp"
#include "tenuniq/rng.hpp"

#include "helpers.hpp"

using namespace tenuniq;

TEST_CASE("rank: pinned cases") {
  CHECK(rank(FieldMatrix::identity(Field::Real, 3)) == 3);

  RealMatrix ones(2, 2);
  ones << 1, 1, 1, 1;
  CHECK(rank(FieldMatrix(ones)) == 1);

  CHECK(rank(FieldMatrix::zero(Field::Real, 3, 4)) == 0);
  CHECK_THROWS_AS(rank(FieldMatrix(RealMatrix(0, 0))), InvalidInput);
}

TEST_CASE("rank: random 5x7 is 5, cross-checked by Gram determinant") {
  GaussianSampler g(41);
  RealMatrix m = test::gaussian(g, 5, 7);
  CHECK(rank(FieldMatrix(m)) == 5);
  // Independent oracle: the 5x5 Gram matrix of a full-row-rank sample has a
  // determinant far from zero relative to its scale.
  RealMatrix gram = m * m.transpose();
  CHECK(std::abs(gram.determinant()) > 1e-6 * std::pow(gram.norm(), 5));
}

TEST_CASE("k_rank: pinned cases") {
  RealMatrix m(2, 3);
  m << 1, 0, 1, 0, 1, 1;  // [e1, e2, e1+e2]
  CHECK(k_rank(FieldMatrix(m)) == 2);
  // Exhaustive oracle: every pair independent (nonzero 2x2 determinant), full
  // set has rank 2 < 3.
  for (const auto& s : subsets_lex(3, 2)) {
    RealMatrix sub(2, 2);
    sub << m(0, s[0]), m(0, s[1]), m(1, s[0]), m(1, s[1]);
    CHECK(std::abs(sub.determinant()) > 0.5);
  }
  CHECK(rank(FieldMatrix(m)) == 2);

  RealMatrix dup(3, 3);
  dup << 1, 2, 2, 0, 1, 1, 0, 0, 0;
  CHECK(k_rank(FieldMatrix(dup)) == 1);

  RealMatrix zcol(2, 2);
  zcol << 1, 0, 0, 0;
  CHECK(k_rank(FieldMatrix(zcol)) == 0);

  CHECK_THROWS_AS(k_rank(FieldMatrix::zero(Field::Real, 2, 26)), InvalidInput);
}

TEST_CASE("k_rank: random 4x6 Gaussian samples have k-rank 4") {
  for (int t = 0; t < 20; ++t) {
    GaussianSampler g(seed_mix(100, static_cast<std::uint64_t>(t)));
    CHECK(k_rank(FieldMatrix(test::gaussian(g, 4, 6))) == 4);
  }
}

TEST_CASE("compound: pinned cases") {
  GaussianSampler g(7);
  RealMatrix a = test::gaussian(g, 3, 4);
  CHECK(compound(FieldMatrix(a), 1).real().isApprox(a));

  CHECK(compound(FieldMatrix::identity(Field::Real, 3), 2)
            .real()
            .isApprox(RealMatrix::Identity(3, 3)));

  RealMatrix m(3, 2);
  m << 1, 2, 3, 4, 5, 6;
  FieldMatrix c = compound(FieldMatrix(m), 2);
  REQUIRE(c.rows() == 3);
  REQUIRE(c.cols() == 1);
  CHECK(c.real()(0, 0) == doctest::Approx(-2));
  CHECK(c.real()(1, 0) == doctest::Approx(-4));
  CHECK(c.real()(2, 0) == doctest::Approx(-2));

  CHECK_THROWS_AS(compound(FieldMatrix(m), 3), InvalidInput);
  CHECK_THROWS_AS(compound(FieldMatrix(m), 0), InvalidInput);
}

TEST_CASE("compound: dimensions are binomial coefficients") {
  GaussianSampler g(11);
  RealMatrix m = test::gaussian(g, 6, 5);
  for (int order = 1; order <= 5; ++order) {
    FieldMatrix c = compound(FieldMatrix(m), order);
    CHECK(c.rows() == binomial(6, order));
    CHECK(c.cols() == binomial(5, order));
  }
}

TEST_CASE("compound: Cauchy-Binet on random products") {
  for (int t = 0; t < 10; ++t) {
    GaussianSampler g(seed_mix(200, static_cast<std::uint64_t>(t)));
    RealMatrix a = test::gaussian(g, 6, 5);
    RealMatrix b = test::gaussian(g, 5, 4);
    for (int m = 2; m <= 3; ++m) {
      RealMatrix lhs = compound(FieldMatrix(RealMatrix(a * b)), m).real();
      RealMatrix rhs = compound(FieldMatrix(a), m).real() * compound(FieldMatrix(b), m).real();
      CHECK((lhs - rhs).norm() <= 1e-9 * rhs.norm());
    }
  }
}

TEST_CASE("compound: Cauchy-Binet over the complex field") {
  GaussianSampler g(17);
  ComplexMatrix a = test::cgaussian(g, 5, 4);
  ComplexMatrix b = test::cgaussian(g, 4, 4);
  ComplexMatrix lhs = compound(FieldMatrix(ComplexMatrix(a * b)), 2).cplx();
  ComplexMatrix rhs = compound(FieldMatrix(a), 2).cplx() * compound(FieldMatrix(b), 2).cplx();
  CHECK((lhs - rhs).norm() <= 1e-9 * rhs.norm());
}

TEST_CASE("khatri_rao: pinned cases and row identity") {
  RealMatrix a(2, 1), b(2, 1);
  a << 1, 2;
  b << 3, 4;
  FieldMatrix kr = khatri_rao(FieldMatrix(a), FieldMatrix(b));
  RealMatrix want(4, 1);
  want << 3, 4, 6, 8;
  CHECK(kr.real().isApprox(want));

  GaussianSampler g(5);
  RealMatrix m = test::gaussian(g, 3, 4);
  CHECK(khatri_rao(FieldMatrix(m), FieldMatrix::zero(Field::Real, 2, 4)).frobenius_norm() == 0.0);

  FieldMatrix ii =
      khatri_rao(FieldMatrix::identity(Field::Real, 2), FieldMatrix::identity(Field::Real, 2));
  RealMatrix want2(4, 2);
  want2 << 1, 0, 0, 0, 0, 0, 0, 1;
  CHECK(ii.real().isApprox(want2));

  // Row (i*Jb + j) of A kr B is the entrywise product of A row i and B row j.
  RealMatrix x = test::gaussian(g, 3, 5), y = test::gaussian(g, 2, 5);
  RealMatrix k = khatri_rao(FieldMatrix(x), FieldMatrix(y)).real();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK((k.row(i * 2 + j) - x.row(i).cwiseProduct(y.row(j))).norm() < 1e-14);

  CHECK_THROWS_AS(khatri_rao(FieldMatrix(x), FieldMatrix(test::gaussian(g, 2, 4))), InvalidInput);
}

TEST_CASE("kronecker: pinned cases") {
  CHECK(kronecker(FieldMatrix::identity(Field::Real, 2), FieldMatrix::identity(Field::Real, 2))
            .real()
            .isApprox(RealMatrix::Identity(4, 4)));

  GaussianSampler g(3);
  RealMatrix b = test::gaussian(g, 3, 2);
  RealMatrix one(1, 1);
  one << 1;
  CHECK(kronecker(FieldMatrix(one), FieldMatrix(b)).real().isApprox(b));

  RealMatrix r(1, 2), c(2, 1);
  r << 1, 2;
  c << 3, 4;
  RealMatrix want(2, 2);
  want << 3, 6, 4, 8;
  CHECK(kronecker(FieldMatrix(r), FieldMatrix(c)).real().isApprox(want));
}

TEST_CASE("least_squares: pinned cases") {
  GaussianSampler g(23);
  RealMatrix y = test::gaussian(g, 4, 3);
  CHECK(least_squares(FieldMatrix::identity(Field::Real, 4), FieldMatrix(y)).real().isApprox(y));

  RealMatrix a = test::gaussian(g, 6, 3);
  RealMatrix x0 = test::gaussian(g, 3, 2);
  FieldMatrix x = least_squares(FieldMatrix(a), FieldMatrix(RealMatrix(a * x0)));
  CHECK((x.real() - x0).norm() <= 1e-10 * x0.norm());

  FieldMatrix xz = least_squares(FieldMatrix::zero(Field::Real, 4, 3), FieldMatrix(y));
  CHECK(xz.frobenius_norm() == 0.0);
}

TEST_CASE("k_rank <= rank <= min(rows, cols)") {
  for (int t = 0; t < 10; ++t) {
    GaussianSampler g(seed_mix(300, static_cast<std::uint64_t>(t)));
    RealMatrix m = test::gaussian(g, 4, 6);
    if (t % 2 == 1) m.col(5) = m.col(0);  // force a k-rank drop
    const int kr = k_rank(FieldMatrix(m));
    const int r = rank(FieldMatrix(m));
    CHECK(kr <= r);
    CHECK(r <= 4);
  }
}

TEST_CASE("complex-tagged real inputs match the real path to 1e-12") {
  GaussianSampler g(31);
  RealMatrix a = test::gaussian(g, 4, 5), b = test::gaussian(g, 3, 5);
  FieldMatrix ar(a), br(b);
  FieldMatrix ac{ComplexMatrix(a.cast<Complex>())}, bc{ComplexMatrix(b.cast<Complex>())};

  CHECK(rank(ac) == rank(ar));
  CHECK(k_rank(ac) == k_rank(ar));
  CHECK(compound(ac, 2).max_abs_diff(compound(ar, 2)) < 1e-12);
  CHECK(khatri_rao(ac, bc).max_abs_diff(khatri_rao(ar, br)) < 1e-12);
  CHECK(kronecker(ac, bc).max_abs_diff(kronecker(ar, br)) < 1e-12);

  RealMatrix y = test::gaussian(g, 4, 2);
  FieldMatrix yr(y), yc{ComplexMatrix(y.cast<Complex>())};
  CHECK(least_squares(ac, yc).max_abs_diff(least_squares(ar, yr)) < 1e-12);
}

TEST_CASE("subsets_lex enumerates in lexicographic order") {
  const auto s = subsets_lex(4, 2);
  REQUIRE(s.size() == 6);
  CHECK(s.front() == std::vector<int>{0, 1});
  CHECK(s[1] == std::vector<int>{0, 2});
  CHECK(s.back() == std::vector<int>{2, 3});
  CHECK(binomial(25, 12) == 5200300);
}
