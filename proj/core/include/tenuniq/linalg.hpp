#pragma once

#include <vector>

#include "tenuniq/field_matrix.hpp"

namespace tenuniq {

/// Tolerance-based numerical rank: the number of singular values above
/// rel_threshold * sigma_max. Zero matrix has rank 0.
int rank(const FieldMatrix& m, const RankTolerance& tol = RankTolerance());

/// Largest k such that every k-column submatrix has rank k; 0 if some column
/// is numerically zero. Exhaustive over column subsets in lexicographic order
/// with early exit, so matrices wider than `column_cap` are refused.
int k_rank(const FieldMatrix& m, const RankTolerance& tol = RankTolerance(),
           int column_cap = 25);

/// Matrix of determinants of all m x m submatrices, row/column index sets
/// enumerated in lexicographic order. Result is binom(rows,m) x binom(cols,m).
FieldMatrix compound(const FieldMatrix& m, int order);

/// Columnwise Kronecker product; columns counts must match.
FieldMatrix khatri_rao(const FieldMatrix& a, const FieldMatrix& b);

/// Standard Kronecker product.
FieldMatrix kronecker(const FieldMatrix& a, const FieldMatrix& b);

/// Minimizer X of ||A X - Y||_F via a rank-revealing factorization;
/// minimum-norm solution when A is rank-deficient.
FieldMatrix least_squares(const FieldMatrix& a, const FieldMatrix& y);

/// Singular values, descending.
std::vector<double> singular_values(const FieldMatrix& m);

/// All size-k index subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets_lex(int n, int k);

/// binom(n, k) as a non-overflowing 64-bit value (throws on overflow).
std::int64_t binomial(int n, int k);

}  // namespace tenuniq
