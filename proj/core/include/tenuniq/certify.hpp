#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tenuniq/linalg.hpp"
#include "tenuniq/tensor.hpp"

namespace tenuniq {

/// Knobs for the deterministic certification routes and the randomized
/// falsifiers. Everything downstream is a pure function of (input, params).
struct CertParams {
  RankTolerance tol;
  std::uint64_t falsify_trials = 200;  // supports examined before giving up; capped at 1e6
  std::uint64_t seed = 0;
  int krank_column_cap = 25;
  /// Candidate witnesses whose entries fall strictly between
  /// decisive_zero and decisive_support (relative to max |lambda_r|) are
  /// rejected as numerically ambiguous rather than reported.
  double decisive_support = 1e-6;
  double decisive_zero = 1e-12;
  int falsify_restarts = 3;
  int falsify_iters = 60;

  void validate() const {
    if (falsify_trials > 1000000) throw InvalidInput("CertParams: falsify_trials capped at 1e6");
  }
};

enum class ConditionStatus { Proven, Refuted, Unknown };
const char* to_string(ConditionStatus s);

enum class Route { KRUSKAL, PROP32, PROP43, PROP61 };
const char* to_string(Route r);

enum class Verdict { UNIQUE_PROVEN, NOT_PROVEN };
const char* to_string(Verdict v);

/// A machine-checkable counterexample to a Um/Wm-style condition:
/// rank(A diag(lambda) B^T) <= m-1 while omega(lambda) >= m
/// (and lambda in range(C^T) for the Wm flavor, with x the preimage).
struct FalsifierWitness {
  Eigen::VectorXcd lambda;
  std::optional<Eigen::VectorXcd> x;
  int weight = 0;
  int product_rank = 0;
};

struct ConditionOutcome {
  std::string condition_id;
  ConditionStatus status = ConditionStatus::Unknown;
  std::string note;
  std::map<std::string, std::int64_t> stats;  // k-ranks, observed ranks, m values, ...
  std::optional<FalsifierWitness> witness;
};

struct Certificate {
  Route route = Route::PROP32;
  std::vector<ConditionOutcome> outcomes;
  Verdict verdict = Verdict::NOT_PROVEN;
  std::string note;

  const ConditionOutcome* find(const std::string& id) const {
    for (const auto& o : outcomes)
      if (o.condition_id == id) return &o;
    return nullptr;
  }
};

/// Number of entries with |lambda_r| > rel_threshold * max_r |lambda_r|.
int weight(const Eigen::VectorXcd& lambda, const RankTolerance& tol = RankTolerance());

/// Kruskal: PROVEN iff 2R <= k_A + k_B + k_C - 2. Never REFUTED (the
/// condition is sufficient, not necessary); failures come back UNKNOWN with
/// the k-ranks recorded.
ConditionOutcome check_kruskal(const FactorSet& f, const CertParams& p);

/// PROVEN iff compound(M1,m) kr compound(M2,m) has full column rank binom(R,m)
/// under the tolerance; otherwise UNKNOWN with the observed rank recorded.
ConditionOutcome check_cm_condition(const FieldMatrix& m1, const FieldMatrix& m2, int m,
                                    const CertParams& p);

/// Searches for lambda with rank(A diag(lambda) B^T) <= m-1 and
/// omega(lambda) >= m. REFUTED with a re-verified witness when found,
/// UNKNOWN once the support budget is exhausted. Deterministic given p.seed.
ConditionOutcome falsify_um(const FieldMatrix& a, const FieldMatrix& b, int m,
                            const CertParams& p);

/// Same search constrained to lambda in range(C^T). When C has full column
/// rank this delegates to falsify_um (the constraint is vacuous).
ConditionOutcome falsify_wm(const FieldMatrix& a, const FieldMatrix& b, const FieldMatrix& c,
                            int m, const CertParams& p);

/// Full unstructured certificate: the Kruskal route and the three-part
/// compound/k-rank route both run; either one proving suffices.
Certificate certify_cpd(const FactorSet& f, const CertParams& p);

/// SFS certificate via k_A + k_C >= R + 2 plus the Um condition on (A, A)
/// at m = R - rank(C) + 2.
Certificate certify_sfs_prop43(const FieldMatrix& a, const FieldMatrix& c, const CertParams& p);

/// SFS certificate via the reshaped I x K x I tensor: k-rank inequality on
/// (A, C, A) plus the Um condition on (A, C) at m = R - rank(A) + 2.
Certificate certify_sfs_prop61(const FieldMatrix& a, const FieldMatrix& c, const CertParams& p);

}  // namespace tenuniq
