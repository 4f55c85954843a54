#pragma once

#include <string>
#include <vector>

#include "tenuniq/bounds.hpp"
#include "tenuniq/tensor.hpp"

namespace tenuniq {

/// Random-instance description: i.i.d. standard Gaussian factor entries
/// (independent real/imaginary parts for the complex field), deterministic
/// from (seed, trial).
struct SampleSpec {
  ProblemDims dims;
  int rank = 1;
  Field field = Field::Real;
  std::uint64_t seed = 0;
  int trials = 1;
};

struct AlsOptions {
  int max_iters = 10000;  // capped at 1e5
  double fit_tol = 1e-12;
  int n_inits = 20;
  std::uint64_t seed = 0;
  // Empirical-protocol thresholds (standard CPD practice; all configurable).
  // The stop tolerance and the keep gate are deliberately far apart: ALS
  // crawls through long plateaus, so stopping needs a machine-level fit_tol
  // while "this run genuinely fits T" is a much coarser statement.
  double keep_gate_multiplier = 1e6;  // keep runs with fit >= 1 - mult*fit_tol
  double match_threshold = 0.99;
  double distinct_threshold = 0.9;
  bool record_trace = false;  // keep the per-iteration fit sequence in AlsRun

  void validate() const {
    if (max_iters < 1 || max_iters > 100000)
      throw InvalidInput("AlsOptions: max_iters must be in [1, 1e5]");
    if (!(fit_tol > 0)) throw InvalidInput("AlsOptions: fit_tol must be positive");
    if (n_inits < 1) throw InvalidInput("AlsOptions: n_inits must be positive");
  }
};

FactorSet sample_factors(const SampleSpec& spec, int trial);

enum class GenericRoute { PROP17, PROP13 };
const char* to_string(GenericRoute r);

/// One compound-Khatri-Rao full-rank condition inside a Monte Carlo run.
struct GenericConditionTally {
  std::string condition_id;
  int m = 0;
  std::int64_t check_rows = 0, check_cols = 0;
  int passes = 0, fails = 0, gated = 0;
  std::string gate_reason;
};

struct GenericCheckSummary {
  GenericRoute route;
  int trials = 0;
  std::vector<GenericConditionTally> conditions;
  int trials_any_pass = 0;  // trials where at least one condition held
};

/// Evaluates the route's full-rank conditions on random instances. A single
/// passing trial is the generic-uniqueness evidence the statements call for.
GenericCheckSummary monte_carlo_generic_check(const SampleSpec& spec, GenericRoute route,
                                              const RankTolerance& tol = RankTolerance());

struct AlsRun {
  FactorSet factors;
  double fit = 0.0;  // 1 - ||T - That||_F / ||T||_F
  int iters = 0;
  bool diverged = false;
  std::vector<double> fit_trace;  // filled when opts.record_trace
};

/// One ALS descent from the init derived from init_seed.
AlsRun als_cpd_single(const Tensor3& t, int tensor_rank, const AlsOptions& opts,
                      std::uint64_t init_seed);
/// Symmetric variant keeping B = A exactly (averaged update with per-column
/// scale alignment); requires symmetric frontal slices.
AlsRun als_sfs_single(const Tensor3& t, int tensor_rank, const AlsOptions& opts,
                      std::uint64_t init_seed);

/// Best fit over opts.n_inits independent starts. Throws NumericalError if
/// every start diverges.
std::pair<FactorSet, double> als_cpd(const Tensor3& t, int tensor_rank, const AlsOptions& opts);
std::pair<FactorSet, double> als_sfs(const Tensor3& t, int tensor_rank, const AlsOptions& opts);

/// Factor matching modulo the trivial indeterminacies: optimal column
/// assignment on the congruence matrix (product of absolute cosine
/// similarities of the three factor columns).
struct MatchResult {
  std::vector<int> permutation;  // column r of f1 pairs with permutation[r] of f2
  double congruence = 0.0;       // minimum over matched terms
  double residual = 0.0;         // relative Frobenius distance of the two tensors
};
MatchResult match_decompositions(const FactorSet& f1, const FactorSet& f2);

enum class EmpiricalVerdict { UNIQUE_LIKE, NON_UNIQUE_LIKE, INCONCLUSIVE };
const char* to_string(EmpiricalVerdict v);

struct EmpiricalRunRow {
  int init = 0;
  double fit = 0.0;
  int iters = 0;
  bool kept = false;
  double congruence_vs_truth = 0.0;
};

struct EmpiricalResult {
  EmpiricalVerdict verdict = EmpiricalVerdict::INCONCLUSIVE;
  std::vector<EmpiricalRunRow> runs;
  int kept_count = 0;
  double worst_pair_congruence = 1.0;  // among kept runs; 1.0 when fewer than 2
  std::string note;
};

/// Multi-start uniqueness probe: sample a ground truth, fit from independent
/// inits, and compare the well-fitting runs to the truth and to each other.
EmpiricalResult empirical_uniqueness(const SampleSpec& spec, const AlsOptions& opts);

}  // namespace tenuniq
