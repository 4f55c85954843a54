#include "tenuniq/lab.hpp"

#include <algorithm>
#include <cmath>

#include "dense_ops.hpp"
#include "parallel.hpp"
#include "tenuniq/linalg.hpp"

namespace tenuniq {

using detail::as_dense;
using detail::khatri_rao_dense;
using detail::Mat;
using detail::random_gaussian_mat;
using detail::solve_ls;
using detail::Vec;

const char* to_string(GenericRoute r) { return r == GenericRoute::PROP17 ? "PROP17" : "PROP13"; }

const char* to_string(EmpiricalVerdict v) {
  switch (v) {
    case EmpiricalVerdict::UNIQUE_LIKE: return "UNIQUE_LIKE";
    case EmpiricalVerdict::NON_UNIQUE_LIKE: return "NON_UNIQUE_LIKE";
    case EmpiricalVerdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

FactorSet sample_factors(const SampleSpec& spec, int trial) {
  if (spec.rank < 1) throw InvalidInput("sample_factors: rank must be >= 1");
  GaussianSampler g(seed_mix(spec.seed, static_cast<std::uint64_t>(trial)));
  FactorSet f;
  f.sfs = spec.dims.sfs;
  const Eigen::Index I = spec.dims.I, J = spec.dims.J, K = spec.dims.K, R = spec.rank;
  if (spec.field == Field::Real) {
    RealMatrix a = random_gaussian_mat<double>(g, I, R);
    RealMatrix b = f.sfs ? a : random_gaussian_mat<double>(g, J, R);
    RealMatrix c = random_gaussian_mat<double>(g, K, R);
    f.A = FieldMatrix(std::move(a));
    f.B = FieldMatrix(std::move(b));
    f.C = FieldMatrix(std::move(c));
  } else {
    ComplexMatrix a = random_gaussian_mat<Complex>(g, I, R);
    ComplexMatrix b = f.sfs ? a : random_gaussian_mat<Complex>(g, J, R);
    ComplexMatrix c = random_gaussian_mat<Complex>(g, K, R);
    f.A = FieldMatrix(std::move(a));
    f.B = FieldMatrix(std::move(b));
    f.C = FieldMatrix(std::move(c));
  }
  return f;
}

namespace {

struct CheckPlan {
  std::string id;
  int m;
  int rows1, rows2;  // row counts of the two compounded matrices
  int which;         // 0: (A,B) 1: (B,C) 2: (C,A) 3: (A,A) 4: (A,C)
};

std::vector<CheckPlan> route_plan(const SampleSpec& spec, GenericRoute route) {
  const int I = spec.dims.I, J = spec.dims.J, K = spec.dims.K, R = spec.rank;
  const int m_c = R - std::min(K, R) + 2;
  const int m_a = R - std::min(I, R) + 2;
  const int m_b = R - std::min(J, R) + 2;
  if (route == GenericRoute::PROP17)
    return {{"i", m_c, I, J, 0}, {"ii", m_a, J, K, 1}, {"iii", m_b, K, I, 2}};
  return {{"c1", m_c, I, I, 3}, {"c2", m_a, I, K, 4}};
}

}  // namespace

GenericCheckSummary monte_carlo_generic_check(const SampleSpec& spec, GenericRoute route,
                                              const RankTolerance& tol) {
  if (route == GenericRoute::PROP13 && !spec.dims.sfs)
    throw InvalidInput("monte_carlo_generic_check: PROP13 route requires SFS dims");
  if (route == GenericRoute::PROP17 && spec.dims.sfs)
    throw InvalidInput("monte_carlo_generic_check: PROP17 route requires unstructured dims");
  if (spec.trials < 1) throw InvalidInput("monte_carlo_generic_check: trials must be >= 1");
  if (spec.rank < 1) throw InvalidInput("monte_carlo_generic_check: rank must be >= 1");

  const int R = spec.rank;
  GenericCheckSummary summary;
  summary.route = route;
  summary.trials = spec.trials;

  std::vector<CheckPlan> plan = route_plan(spec, route);
  std::vector<bool> feasible(plan.size(), true);
  for (std::size_t c = 0; c < plan.size(); ++c) {
    GenericConditionTally tally;
    tally.condition_id = plan[c].id;
    tally.m = plan[c].m;
    const int m = plan[c].m;
    std::string reason;
    if (m > std::min(plan[c].rows1, R) || m > std::min(plan[c].rows2, R)) {
      reason = "compound order m = " + std::to_string(m) + " exceeds matrix limits";
    } else {
      tally.check_rows = binomial(plan[c].rows1, m) * binomial(plan[c].rows2, m);
      tally.check_cols = binomial(R, m);
      if (tally.check_rows < tally.check_cols)
        reason = "check matrix has fewer rows than columns, necessarily rank-deficient";
    }
    if (!reason.empty()) {
      feasible[c] = false;
      tally.gated = spec.trials;
      tally.gate_reason = reason;
    }
    summary.conditions.push_back(std::move(tally));
  }

  std::vector<std::vector<bool>> pass(static_cast<std::size_t>(spec.trials));
  detail::parallel_for(spec.trials, [&](int trial) {
    FactorSet f = sample_factors(spec, trial);
    std::vector<bool> row(plan.size(), false);
    for (std::size_t c = 0; c < plan.size(); ++c) {
      if (!feasible[c]) continue;
      const FieldMatrix* m1 = nullptr;
      const FieldMatrix* m2 = nullptr;
      switch (plan[c].which) {
        case 0: m1 = &f.A; m2 = &f.B; break;
        case 1: m1 = &f.B; m2 = &f.C; break;
        case 2: m1 = &f.C; m2 = &f.A; break;
        case 3: m1 = &f.A; m2 = &f.A; break;
        default: m1 = &f.A; m2 = &f.C; break;
      }
      FieldMatrix prod = khatri_rao(compound(*m1, plan[c].m), compound(*m2, plan[c].m));
      row[c] = rank(prod, tol) == binomial(R, plan[c].m);
    }
    pass[static_cast<std::size_t>(trial)] = std::move(row);
  });

  for (int trial = 0; trial < spec.trials; ++trial) {
    bool any = false;
    for (std::size_t c = 0; c < plan.size(); ++c) {
      if (!feasible[c]) continue;
      if (pass[static_cast<std::size_t>(trial)][c]) {
        ++summary.conditions[c].passes;
        any = true;
      } else {
        ++summary.conditions[c].fails;
      }
    }
    if (any) ++summary.trials_any_pass;
  }
  return summary;
}

namespace {

template <typename Scalar>
AlsRun als_core(const Tensor3& t, int R, const AlsOptions& o, std::uint64_t init_seed,
                bool symmetric) {
  const Eigen::Index I = t.dim(0), J = t.dim(1), K = t.dim(2);
  const double norm_t = t.frobenius_norm();
  const Field field = t.field();

  AlsRun run;
  if (norm_t == 0.0) {
    // Zero tensor fits exactly with zero factors; fit is 1 by convention.
    run.factors = FactorSet{FieldMatrix::zero(field, I, R), FieldMatrix::zero(field, J, R),
                            FieldMatrix::zero(field, K, R), symmetric};
    run.fit = 1.0;
    return run;
  }

  const Mat<Scalar> u1t = as_dense<Scalar>(unfold(t, 1)).transpose();
  const Mat<Scalar> u2t = as_dense<Scalar>(unfold(t, 2)).transpose();
  const Mat<Scalar> u3t = as_dense<Scalar>(unfold(t, 3)).transpose();

  GaussianSampler g(init_seed);
  Mat<Scalar> A = random_gaussian_mat<Scalar>(g, I, R);
  Mat<Scalar> B = symmetric ? A : random_gaussian_mat<Scalar>(g, J, R);
  Mat<Scalar> C = random_gaussian_mat<Scalar>(g, K, R);

  double fit_prev = -std::numeric_limits<double>::infinity();
  for (int it = 1; it <= o.max_iters; ++it) {
    run.iters = it;
    if (!symmetric) {
      A = solve_ls<Scalar>(khatri_rao_dense<Scalar>(C, B), u1t).transpose();
      B = solve_ls<Scalar>(khatri_rao_dense<Scalar>(A, C), u2t).transpose();
    } else {
      Mat<Scalar> a_step = solve_ls<Scalar>(khatri_rao_dense<Scalar>(C, A), u1t).transpose();
      Mat<Scalar> b_step = solve_ls<Scalar>(khatri_rao_dense<Scalar>(a_step, C), u2t).transpose();
      // Per-column scale alignment of the B step onto the A step, then average.
      for (Eigen::Index r = 0; r < R; ++r) {
        const double nb = b_step.col(r).squaredNorm();
        if (nb > 0.0) {
          const Scalar s = (b_step.col(r).adjoint() * a_step.col(r))(0) / Scalar(nb);
          b_step.col(r) *= s;
        }
      }
      A = 0.5 * (a_step + b_step);
      B = A;
    }
    const Mat<Scalar> kr_ba = khatri_rao_dense<Scalar>(B, A);
    C = solve_ls<Scalar>(kr_ba, u3t).transpose();
    const double resid = (kr_ba * C.transpose() - u3t).norm();
    const double fit = 1.0 - resid / norm_t;
    if (!std::isfinite(fit)) {
      run.diverged = true;
      run.fit = fit;
      break;
    }
    run.fit = fit;
    if (o.record_trace) run.fit_trace.push_back(fit);
    if (std::abs(fit - fit_prev) < o.fit_tol) break;
    fit_prev = fit;
  }

  FieldMatrix fa{A}, fb{B}, fc{C};
  run.factors = FactorSet{std::move(fa), std::move(fb), std::move(fc), symmetric};
  return run;
}

AlsRun als_single(const Tensor3& t, int R, const AlsOptions& o, std::uint64_t init_seed,
                  bool symmetric) {
  o.validate();
  if (R < 1) throw InvalidInput("als: rank must be >= 1");
  if (symmetric && !is_sfs(t))
    throw InvalidInput("als_sfs: tensor does not have symmetric frontal slices");
  if (t.field() == Field::Real) return als_core<double>(t, R, o, init_seed, symmetric);
  return als_core<Complex>(t, R, o, init_seed, symmetric);
}

std::pair<FactorSet, double> als_best(const Tensor3& t, int R, const AlsOptions& o,
                                      bool symmetric) {
  o.validate();
  if (R < 1) throw InvalidInput("als: rank must be >= 1");
  if (symmetric && !is_sfs(t))
    throw InvalidInput("als_sfs: tensor does not have symmetric frontal slices");
  std::vector<AlsRun> runs(static_cast<std::size_t>(o.n_inits));
  detail::parallel_for(o.n_inits, [&](int i) {
    runs[static_cast<std::size_t>(i)] =
        als_single(t, R, o, seed_mix(o.seed, static_cast<std::uint64_t>(i)), symmetric);
  });
  const AlsRun* best = nullptr;
  for (const AlsRun& r : runs)
    if (!r.diverged && (best == nullptr || r.fit > best->fit)) best = &r;
  if (best == nullptr) throw NumericalError("als: every initialization diverged");
  return {best->factors, best->fit};
}

}  // namespace

AlsRun als_cpd_single(const Tensor3& t, int tensor_rank, const AlsOptions& opts,
                      std::uint64_t init_seed) {
  return als_single(t, tensor_rank, opts, init_seed, false);
}

AlsRun als_sfs_single(const Tensor3& t, int tensor_rank, const AlsOptions& opts,
                      std::uint64_t init_seed) {
  return als_single(t, tensor_rank, opts, init_seed, true);
}

std::pair<FactorSet, double> als_cpd(const Tensor3& t, int tensor_rank, const AlsOptions& opts) {
  return als_best(t, tensor_rank, opts, false);
}

std::pair<FactorSet, double> als_sfs(const Tensor3& t, int tensor_rank, const AlsOptions& opts) {
  return als_best(t, tensor_rank, opts, true);
}

namespace {

/// Max-total assignment on an n x n score matrix (shortest augmenting paths
/// with potentials, on the negated scores). Returns row -> column.
std::vector<int> assign_max(const Eigen::MatrixXd& score) {
  const int n = static_cast<int>(score.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -score(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, 0);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

ComplexMatrix unit_columns(const FieldMatrix& m) {
  ComplexMatrix out = m.to_complex();
  for (Eigen::Index r = 0; r < out.cols(); ++r) {
    const double n = out.col(r).norm();
    if (n > 0.0) out.col(r) /= n;
  }
  return out;
}

}  // namespace

MatchResult match_decompositions(const FactorSet& f1, const FactorSet& f2) {
  f1.validate();
  f2.validate();
  if (f1.rank() != f2.rank() || f1.A.rows() != f2.A.rows() || f1.B.rows() != f2.B.rows() ||
      f1.C.rows() != f2.C.rows())
    throw InvalidInput("match_decompositions: shape mismatch");
  const Eigen::Index R = f1.rank();

  const ComplexMatrix a1 = unit_columns(f1.A), b1 = unit_columns(f1.B), c1 = unit_columns(f1.C);
  const ComplexMatrix a2 = unit_columns(f2.A), b2 = unit_columns(f2.B), c2 = unit_columns(f2.C);

  Eigen::MatrixXd score(R, R);
  for (Eigen::Index i = 0; i < R; ++i)
    for (Eigen::Index j = 0; j < R; ++j)
      score(i, j) = std::abs((a1.col(i).adjoint() * a2.col(j))(0)) *
                    std::abs((b1.col(i).adjoint() * b2.col(j))(0)) *
                    std::abs((c1.col(i).adjoint() * c2.col(j))(0));

  MatchResult res;
  res.permutation = assign_max(score);
  res.congruence = 1.0;
  for (Eigen::Index i = 0; i < R; ++i)
    res.congruence = std::min(res.congruence, score(i, res.permutation[static_cast<std::size_t>(i)]));

  const Tensor3 t1 = from_factors(f1);
  const Tensor3 t2 = from_factors(f2);
  const double base = std::max(t1.frobenius_norm(), t2.frobenius_norm());
  res.residual = base == 0.0 ? 0.0 : t1.distance(t2) / base;
  return res;
}

EmpiricalResult empirical_uniqueness(const SampleSpec& spec, const AlsOptions& opts) {
  opts.validate();
  const FactorSet truth = sample_factors(spec, 0);
  const Tensor3 t = from_factors(truth);
  const double keep_gate = 1.0 - opts.keep_gate_multiplier * opts.fit_tol;
  const bool symmetric = spec.dims.sfs;

  std::vector<AlsRun> runs(static_cast<std::size_t>(opts.n_inits));
  detail::parallel_for(opts.n_inits, [&](int i) {
    runs[static_cast<std::size_t>(i)] =
        als_single(t, spec.rank, opts, seed_mix(opts.seed, 1000 + static_cast<std::uint64_t>(i)),
                   symmetric);
  });

  EmpiricalResult out;
  std::vector<int> kept;
  for (int i = 0; i < opts.n_inits; ++i) {
    const AlsRun& r = runs[static_cast<std::size_t>(i)];
    EmpiricalRunRow row;
    row.init = i;
    row.fit = r.fit;
    row.iters = r.iters;
    row.kept = !r.diverged && r.fit >= keep_gate;
    row.congruence_vs_truth = r.diverged ? 0.0 : match_decompositions(r.factors, truth).congruence;
    if (row.kept) kept.push_back(i);
    out.runs.push_back(row);
  }
  out.kept_count = static_cast<int>(kept.size());

  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = a + 1; b < kept.size(); ++b) {
      const double cg = match_decompositions(runs[static_cast<std::size_t>(kept[a])].factors,
                                             runs[static_cast<std::size_t>(kept[b])].factors)
                            .congruence;
      out.worst_pair_congruence = std::min(out.worst_pair_congruence, cg);
    }

  if (kept.size() < 2) {
    out.verdict = EmpiricalVerdict::INCONCLUSIVE;
    out.note = "fewer than two runs reached the fit gate; cannot compare";
    return out;
  }
  const bool all_match_truth = std::all_of(kept.begin(), kept.end(), [&](int i) {
    return out.runs[static_cast<std::size_t>(i)].congruence_vs_truth >= opts.match_threshold;
  });
  if (all_match_truth) {
    out.verdict = EmpiricalVerdict::UNIQUE_LIKE;
    out.note = "every well-fitting run matches the ground truth decomposition";
  } else if (out.worst_pair_congruence < opts.distinct_threshold) {
    out.verdict = EmpiricalVerdict::NON_UNIQUE_LIKE;
    out.note = "two well-fitting runs disagree with each other";
  } else {
    out.verdict = EmpiricalVerdict::INCONCLUSIVE;
    out.note = "well-fitting runs neither all match the truth nor clearly disagree";
  }
  return out;
}

}  // namespace tenuniq
