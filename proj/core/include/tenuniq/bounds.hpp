#pragma once

#include <array>
#include <string>
#include <vector>

#include "tenuniq/field_matrix.hpp"

namespace tenuniq {

/// Tensor dimensions a bound is evaluated for. With sfs set, the tensor is
/// I x I x K and only (I, K) are free.
struct ProblemDims {
  int I = 1, J = 1, K = 1;
  bool sfs = false;

  static ProblemDims cpd(int i, int j, int k) {
    if (i < 1 || j < 1 || k < 1) throw InvalidInput("ProblemDims: dimensions must be positive");
    return ProblemDims{i, j, k, false};
  }
  static ProblemDims sfs_dims(int i, int k) {
    if (i < 1 || k < 1) throw InvalidInput("ProblemDims: dimensions must be positive");
    return ProblemDims{i, i, k, true};
  }
};

enum class PropositionId {
  KRUSKAL_GENERIC,
  STRASSEN_CO,
  PROP14_I,
  PROP14_II,
  PROP14_III,
  NICK_FORMULA,
  PROP15,
  COR16,
  KRUSKAL_SFS,
  PROP13_MC,
  PROP18,
  PROP19,
  PROP110,
};

const char* to_string(PropositionId id);

/// Which scalar field a bound statement covers.
enum class FieldScope { BothFields, ComplexOnly };

/// Ranks R for which one proposition guarantees generic uniqueness at the
/// given dimensions, evaluated by exact integer scan over R = 1..r_cap.
struct BoundEntry {
  PropositionId id;
  std::vector<int> rank_set;  // ascending
  int max_rank = 0;           // 0 when rank_set is empty
  bool literature_only = false;
  FieldScope field_scope = FieldScope::BothFields;
  std::string note;  // emptiness reason or applicability remark
};

/// Aggregated table over every applicable proposition.
struct BoundTable {
  ProblemDims dims;
  std::array<int, 3> sorted_dims{};  // dims the unstructured formulas were applied to
  bool permuted = false;
  int r_cap = 200;
  std::vector<BoundEntry> entries;
  /// Largest proven R, excluding literature-only entries. For SFS dims this
  /// includes the monotonicity closure over smaller K (guaranteed set is then
  /// downward closed: every R <= overall_max is guaranteed).
  int overall_max_real = 0;
  int overall_max_complex = 0;
  std::string closure_note;
};

// Closed-form bound calculators. Unstructured ones sort (I,J,K) ascending
// internally; the SFS ones never permute I and K.
BoundEntry kruskal_generic(const ProblemDims& dims, int r_cap);
BoundEntry strassen_co(const ProblemDims& dims, int r_cap);
std::array<BoundEntry, 3> prop14(const ProblemDims& dims, int r_cap);
BoundEntry nick_formula(const ProblemDims& dims, int r_cap);
BoundEntry prop15(const ProblemDims& dims, int r_cap);
BoundEntry cor16(const ProblemDims& dims, int r_cap);
BoundEntry kruskal_sfs(const ProblemDims& dims, int r_cap);
BoundEntry prop18(const ProblemDims& dims, int r_cap);
BoundEntry prop19(const ProblemDims& dims, int r_cap);
BoundEntry prop110(const ProblemDims& dims, int r_cap);

BoundTable aggregate(const ProblemDims& dims, int r_cap = 200);

namespace bounds_detail {
// Membership of a single rank in each bound's radical and m-parameter forms,
// exposed so property suites can cross-check the two routes independently.
// All comparisons are exact integer arithmetic (no floating point).
bool prop15_radical(long long I, long long J, long long K, long long R);
bool prop15_mform(long long I, long long J, long long K, long long R);
bool prop19_radical(long long I, long long K, long long R);
bool prop19_mform(long long I, long long K, long long R);
bool prop110_radical(long long I, long long K, long long R);
bool prop110_mform(long long I, long long K, long long R);
}  // namespace bounds_detail

}  // namespace tenuniq
