#include "tenuniq/certify.hpp"

#include <algorithm>

#include <Eigen/SVD>

#include "dense_ops.hpp"
#include "tenuniq/rng.hpp"

namespace tenuniq {

const char* to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::Proven: return "PROVEN";
    case ConditionStatus::Refuted: return "REFUTED";
    case ConditionStatus::Unknown: return "UNKNOWN";
  }
  return "?";
}

const char* to_string(Route r) {
  switch (r) {
    case Route::KRUSKAL: return "KRUSKAL";
    case Route::PROP32: return "PROP32";
    case Route::PROP43: return "PROP43";
    case Route::PROP61: return "PROP61";
  }
  return "?";
}

const char* to_string(Verdict v) {
  return v == Verdict::UNIQUE_PROVEN ? "UNIQUE_PROVEN" : "NOT_PROVEN";
}

int weight(const Eigen::VectorXcd& lambda, const RankTolerance& tol) {
  double mx = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) mx = std::max(mx, std::abs(lambda(i)));
  if (mx == 0.0) return 0;
  int w = 0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (std::abs(lambda(i)) > tol.rel_threshold * mx) ++w;
  return w;
}

namespace {

using detail::Mat;
using detail::Vec;

template <typename Scalar>
Mat<Scalar> as(const FieldMatrix& m) {
  return detail::as_dense<Scalar>(m);
}

template <typename Scalar>
int mat_rank(const Mat<Scalar>& m, const RankTolerance& tol) {
  return detail::dense_rank<Scalar>(m, tol);
}

template <typename Scalar>
Vec<Scalar> random_vec(GaussianSampler& g, Eigen::Index n) {
  return detail::random_gaussian_vec<Scalar>(g, n);
}

/// Shared search engine behind falsify_um / falsify_wm. Works over the
/// input's own field: for real pairs only real counterexamples count.
template <typename Scalar>
class Falsifier {
 public:
  Falsifier(const Mat<Scalar>& a, const Mat<Scalar>& b, int m, const CertParams& p)
      : A(a), B(b), m_(m), p_(p) {}

  // lambda restricted to range(C^T); empty c_ means unrestricted.
  void restrict_to_range(const Mat<Scalar>& c) { C = c; has_range_ = true; }

  ConditionOutcome run() {
    ConditionOutcome out;
    out.status = ConditionStatus::Unknown;
    const int R = static_cast<int>(A.cols());
    out.stats["m"] = m_;
    out.stats["R"] = R;
    if (p_.falsify_trials == 0) {
      out.note = "no falsification trials requested";
      return out;
    }
    if (m_ > R) {
      out.note = "weight target m exceeds R: no lambda can violate the condition";
      return out;
    }

    std::uint64_t used = 0;
    const int s_min = has_range_
                          ? std::max(m_, R - static_cast<int>(C.rows()) + 1)
                          : m_;
    for (int s = s_min; s <= R; ++s) {
      const std::int64_t n_supp = binomial(R, s);
      const bool exhaustive = n_supp <= 5000;
      const std::int64_t count = exhaustive ? n_supp : static_cast<std::int64_t>(p_.falsify_trials);
      auto lex = exhaustive ? subsets_lex(R, s) : std::vector<std::vector<int>>{};
      for (std::int64_t idx = 0; idx < count; ++idx) {
        if (used >= p_.falsify_trials) {
          out.note = "support budget exhausted after " + std::to_string(used) + " supports";
          out.stats["supports_examined"] = static_cast<std::int64_t>(used);
          return out;
        }
        ++used;
        GaussianSampler rng(seed_mix(p_.seed, (static_cast<std::uint64_t>(s) << 32) | 0x5u,
                                     static_cast<std::uint64_t>(idx)));
        std::vector<int> S = exhaustive ? lex[static_cast<std::size_t>(idx)]
                                        : random_support(rng, R, s);
        if (auto w = examine_support(S, rng)) {
          out.status = ConditionStatus::Refuted;
          out.witness = std::move(*w);
          out.note = "counterexample found (support size " + std::to_string(s) + ")";
          out.stats["supports_examined"] = static_cast<std::int64_t>(used);
          out.stats["witness_weight"] = out.witness->weight;
          out.stats["witness_product_rank"] = out.witness->product_rank;
          return out;
        }
      }
    }
    out.note = "search space exhausted, no counterexample";
    out.stats["supports_examined"] = static_cast<std::int64_t>(used);
    return out;
  }

 private:
  static std::vector<int> random_support(GaussianSampler& rng, int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
      const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> s(pool.begin(), pool.begin() + k);
    std::sort(s.begin(), s.end());
    return s;
  }

  // lambda(y) = P y, with P mapping the search coordinates onto F^R.
  // Unrestricted with support S: columns of P are unit vectors on S.
  // Range-restricted: P = C^T N where N spans the x's zeroing lambda off S.
  std::optional<Mat<Scalar>> parametrization(const std::vector<int>& S) {
    const int R = static_cast<int>(A.cols());
    if (!has_range_) {
      Mat<Scalar> P = Mat<Scalar>::Zero(R, static_cast<Eigen::Index>(S.size()));
      for (std::size_t i = 0; i < S.size(); ++i) P(S[i], static_cast<Eigen::Index>(i)) = Scalar(1);
      return P;
    }
    const Eigen::Index K = C.rows();
    std::vector<int> Z;
    for (int r = 0, si = 0; r < R; ++r) {
      if (si < static_cast<int>(S.size()) && S[static_cast<std::size_t>(si)] == r) { ++si; continue; }
      Z.push_back(r);
    }
    Mat<Scalar> N;
    if (Z.empty()) {
      N = Mat<Scalar>::Identity(K, K);
    } else {
      Mat<Scalar> Cz(static_cast<Eigen::Index>(Z.size()), K);
      for (std::size_t i = 0; i < Z.size(); ++i) Cz.row(static_cast<Eigen::Index>(i)) = C.col(Z[i]).transpose();
      Eigen::JacobiSVD<Mat<Scalar>> svd(Cz, Eigen::ComputeFullV);
      const auto& s = svd.singularValues();
      int rk = 0;
      for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 1e-12 * std::max(s(0), 1e-300)) ++rk;
      if (rk >= K) return std::nullopt;  // cannot zero those entries with x != 0
      N = svd.matrixV().rightCols(K - rk);
    }
    Mat<Scalar> P = C.transpose() * N;
    if (P.norm() == 0.0) return std::nullopt;
    return P;
  }

  std::optional<FalsifierWitness> examine_support(const std::vector<int>& S, GaussianSampler& rng) {
    auto Popt = parametrization(S);
    if (!Popt) return std::nullopt;
    const Mat<Scalar>& P = *Popt;
    const Eigen::Index I = A.rows(), J = B.rows();
    const int t = m_ - 1;

    // Trivial regime: any lambda has rank <= min(I,J) <= m-1, so any
    // representable lambda of weight >= m already violates the condition.
    if (t >= std::min(I, J)) {
      for (int probe = 0; probe < 4; ++probe) {
        Vec<Scalar> y = probe == 0 ? Vec<Scalar>::Ones(P.cols()).eval()
                                   : random_vec<Scalar>(rng, P.cols());
        if (auto w = accept(P * y)) return w;
      }
      return std::nullopt;
    }

    // Kernel route: lambda with A diag(lambda) B^T = 0 exactly.
    {
      Mat<Scalar> Psi(I * J, P.cols());
      for (Eigen::Index c = 0; c < P.cols(); ++c) {
        Mat<Scalar> M = A * P.col(c).asDiagonal() * B.transpose();
        Psi.col(c) = Eigen::Map<Vec<Scalar>>(M.data(), I * J);
      }
      Eigen::JacobiSVD<Mat<Scalar>> svd(Psi, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      std::vector<Eigen::Index> kernel;
      for (Eigen::Index i = 0; i < P.cols(); ++i)
        if (i >= sv.size() || sv(i) <= 1e-12 * std::max(sv(0), 1e-300)) kernel.push_back(i);
      for (Eigen::Index ki : kernel)
        if (auto w = accept(P * svd.matrixV().col(ki))) return w;
      if (kernel.size() > 1) {
        Vec<Scalar> y = Vec<Scalar>::Zero(P.cols());
        for (Eigen::Index ki : kernel) y += random_vec<Scalar>(rng, 1)(0) * svd.matrixV().col(ki);
        if (auto w = accept(P * y)) return w;
      }
    }

    // Rank-target route: alternate between lambda and a null-space estimate
    // X of A diag(lambda) B^T until rank <= t is reached (or not).
    if (t >= 1) {
      for (int restart = 0; restart < p_.falsify_restarts; ++restart) {
        Vec<Scalar> y = random_vec<Scalar>(rng, P.cols());
        Vec<Scalar> lam = P * y;
        for (int it = 0; it < p_.falsify_iters; ++it) {
          Mat<Scalar> M = A * lam.asDiagonal() * B.transpose();
          Eigen::JacobiSVD<Mat<Scalar>> msvd(M, Eigen::ComputeFullV);
          const auto& ms = msvd.singularValues();
          if (it > 0 && ms(0) > 0.0 && ms(t) <= 1e-13 * ms(0)) break;  // on the variety
          Mat<Scalar> X = msvd.matrixV().rightCols(J - t);  // numeric null directions
          Mat<Scalar> H(I * (J - t), P.cols());
          // vec(A diag(P y) B^T X) = H y, column by column of P.
          for (Eigen::Index c = 0; c < P.cols(); ++c) {
            Mat<Scalar> G = A * P.col(c).asDiagonal() * (X.transpose() * B).transpose();
            H.col(c) = Eigen::Map<Vec<Scalar>>(G.data(), I * (J - t));
          }
          Eigen::JacobiSVD<Mat<Scalar>> hsvd(H, Eigen::ComputeFullV);
          y = hsvd.matrixV().col(P.cols() - 1);
          lam = P * y;
        }
        if (auto w = accept(lam)) return w;
      }
    }
    return std::nullopt;
  }

  std::optional<FalsifierWitness> accept(Vec<Scalar> lam) {
    const int R = static_cast<int>(A.cols());
    Eigen::Index argmax = 0;
    double mx = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      if (std::abs(lam(i)) > mx) { mx = std::abs(lam(i)); argmax = i; }
    if (mx == 0.0) return std::nullopt;
    lam /= lam(argmax);

    // Reject numerically ambiguous candidates: every entry must be either a
    // decisive zero or a decisive member of the support.
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      const double a = std::abs(lam(i));
      if (a > p_.decisive_zero && a < p_.decisive_support) return std::nullopt;
    }
    if (!has_range_) {
      for (Eigen::Index i = 0; i < lam.size(); ++i)
        if (std::abs(lam(i)) <= p_.decisive_zero) lam(i) = Scalar(0);
    }

    Eigen::VectorXcd lam_c(R);
    for (int i = 0; i < R; ++i) lam_c(i) = Complex(lam(i));
    const int w = weight(lam_c, p_.tol);
    if (w < m_) return std::nullopt;

    Mat<Scalar> M = A * lam.asDiagonal() * B.transpose();
    const int r = mat_rank(M, p_.tol);
    if (r > m_ - 1) return std::nullopt;

    FalsifierWitness witness;
    witness.lambda = lam_c;
    witness.weight = w;
    witness.product_rank = r;
    if (has_range_) {
      // lambda must sit in range(C^T) up to a 1e-8 relative residual.
      Eigen::CompleteOrthogonalDecomposition<Mat<Scalar>> cod(C.transpose().eval());
      Vec<Scalar> x = cod.solve(lam);
      const double resid = (C.transpose() * x - lam).norm() / lam.norm();
      if (resid > 1e-8) return std::nullopt;
      Eigen::VectorXcd xc(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) xc(i) = Complex(x(i));
      witness.x = xc;
    }
    return witness;
  }

  const Mat<Scalar>& A;
  const Mat<Scalar>& B;
  Mat<Scalar> C;
  bool has_range_ = false;
  int m_;
  CertParams p_;
};

template <typename Scalar>
ConditionOutcome falsify_um_impl(const FieldMatrix& a, const FieldMatrix& b, int m,
                                 const CertParams& p) {
  Mat<Scalar> am = as<Scalar>(a), bm = as<Scalar>(b);
  Falsifier<Scalar> f(am, bm, m, p);
  return f.run();
}

template <typename Scalar>
ConditionOutcome falsify_wm_impl(const FieldMatrix& a, const FieldMatrix& b, const FieldMatrix& c,
                                 int m, const CertParams& p) {
  Mat<Scalar> am = as<Scalar>(a), bm = as<Scalar>(b), cm = as<Scalar>(c);
  Falsifier<Scalar> f(am, bm, m, p);
  f.restrict_to_range(cm);
  return f.run();
}

bool any_complex(std::initializer_list<const FieldMatrix*> ms) {
  for (const FieldMatrix* m : ms)
    if (!m->is_real()) return true;
  return false;
}

}  // namespace

ConditionOutcome check_kruskal(const FactorSet& f, const CertParams& p) {
  p.validate();
  const std::int64_t R = f.rank();
  const int ka = k_rank(f.A, p.tol, p.krank_column_cap);
  const int kb = k_rank(f.B, p.tol, p.krank_column_cap);
  const int kc = k_rank(f.C, p.tol, p.krank_column_cap);
  ConditionOutcome out;
  out.condition_id = "kruskal";
  out.stats = {{"k_A", ka}, {"k_B", kb}, {"k_C", kc}, {"R", R}};
  if (2 * R <= ka + kb + kc - 2) {
    out.status = ConditionStatus::Proven;
    out.note = "2R <= k_A + k_B + k_C - 2";
  } else {
    out.status = ConditionStatus::Unknown;
    out.note = "k-rank inequality not satisfied (sufficient condition only)";
  }
  return out;
}

ConditionOutcome check_cm_condition(const FieldMatrix& m1, const FieldMatrix& m2, int m,
                                    const CertParams& p) {
  p.validate();
  if (m1.cols() != m2.cols()) throw InvalidInput("check_cm_condition: column count mismatch");
  const int R = static_cast<int>(m1.cols());
  FieldMatrix prod = khatri_rao(compound(m1, m), compound(m2, m));
  const std::int64_t target = binomial(R, m);
  const int observed = rank(prod, p.tol);
  ConditionOutcome out;
  out.condition_id = "cm";
  out.stats = {{"m", m},
               {"required_rank", target},
               {"observed_rank", observed},
               {"rows", prod.rows()},
               {"cols", prod.cols()}};
  if (observed == target) {
    out.status = ConditionStatus::Proven;
    out.note = "compound Khatri-Rao product has full column rank";
  } else {
    out.status = ConditionStatus::Unknown;
    out.note = "full column rank not confirmed (rank deficiency refutes nothing)";
  }
  return out;
}

ConditionOutcome falsify_um(const FieldMatrix& a, const FieldMatrix& b, int m,
                            const CertParams& p) {
  p.validate();
  if (a.cols() != b.cols()) throw InvalidInput("falsify_um: column count mismatch");
  if (m < 1) throw InvalidInput("falsify_um: m must be positive");
  ConditionOutcome out = any_complex({&a, &b}) ? falsify_um_impl<Complex>(a, b, m, p)
                                               : falsify_um_impl<double>(a, b, m, p);
  out.condition_id = "um";
  return out;
}

ConditionOutcome falsify_wm(const FieldMatrix& a, const FieldMatrix& b, const FieldMatrix& c,
                            int m, const CertParams& p) {
  p.validate();
  if (a.cols() != b.cols() || a.cols() != c.cols())
    throw InvalidInput("falsify_wm: column count mismatch");
  if (m < 1) throw InvalidInput("falsify_wm: m must be positive");

  const int rc = c.frobenius_norm() == 0.0 ? 0 : rank(c, p.tol);
  if (rc == 0) {
    ConditionOutcome out;
    out.condition_id = "wm";
    out.status = ConditionStatus::Unknown;
    out.note = "range(C^T) is {0}: only lambda = 0, vacuously no counterexample";
    return out;
  }
  if (rc == static_cast<int>(c.cols())) {
    // Full column rank: range(C^T) is the whole space, the constrained and
    // unconstrained searches are the same condition.
    ConditionOutcome out = falsify_um(a, b, m, p);
    out.condition_id = "wm";
    out.note += "; C has full column rank so the range constraint is vacuous";
    if (out.witness) {
      FieldMatrix lam_fm = [&]() -> FieldMatrix {
        if (any_complex({&a, &b, &c})) {
          ComplexMatrix lm(out.witness->lambda.size(), 1);
          lm.col(0) = out.witness->lambda;
          return FieldMatrix(lm);
        }
        RealMatrix lm(out.witness->lambda.size(), 1);
        for (Eigen::Index i = 0; i < out.witness->lambda.size(); ++i)
          lm(i, 0) = out.witness->lambda(i).real();
        return FieldMatrix(lm);
      }();
      FieldMatrix x = least_squares(c.transpose(), lam_fm);
      Eigen::VectorXcd xc(x.rows());
      for (Eigen::Index i = 0; i < x.rows(); ++i) xc(i) = x.at(i, 0);
      out.witness->x = xc;
    }
    return out;
  }

  ConditionOutcome out = any_complex({&a, &b, &c}) ? falsify_wm_impl<Complex>(a, b, c, m, p)
                                                   : falsify_wm_impl<double>(a, b, c, m, p);
  out.condition_id = "wm";
  return out;
}

namespace {

// Compound orders above min(rows, cols) of either matrix cannot be formed.
bool cm_feasible(const FieldMatrix& m1, const FieldMatrix& m2, int m, std::string* why) {
  const auto lim = [&](const FieldMatrix& x) { return std::min(x.rows(), x.cols()); };
  if (m < 1) { *why = "m < 1"; return false; }
  if (m > lim(m1) || m > lim(m2)) {
    *why = "m = " + std::to_string(m) + " exceeds compound limits of the factor matrices";
    return false;
  }
  return true;
}

ConditionOutcome krank_inequality(const std::string& id, std::int64_t lhs, std::int64_t rhs,
                                  std::map<std::string, std::int64_t> stats,
                                  const std::string& formula) {
  ConditionOutcome out;
  out.condition_id = id;
  out.stats = std::move(stats);
  if (lhs >= rhs) {
    out.status = ConditionStatus::Proven;
    out.note = formula;
  } else {
    out.status = ConditionStatus::Unknown;
    out.note = formula + " fails (sufficient condition only)";
  }
  return out;
}

}  // namespace

Certificate certify_cpd(const FactorSet& f, const CertParams& p) {
  p.validate();
  f.validate();
  if (f.sfs) throw InvalidInput("certify_cpd: expects an unstructured factor set");
  const std::int64_t R = f.rank();

  Certificate cert;
  ConditionOutcome kruskal = check_kruskal(f, p);
  const std::int64_t ka = kruskal.stats["k_A"], kb = kruskal.stats["k_B"], kc = kruskal.stats["k_C"];

  ConditionOutcome c1 = krank_inequality(
      "p32.i.kranks", std::max(std::min(ka, kb - 1), std::min(ka - 1, kb)) + kc, R + 1,
      {{"k_A", ka}, {"k_B", kb}, {"k_C", kc}, {"R", R}},
      "max(min(k_A,k_B-1), min(k_A-1,k_B)) + k_C >= R + 1");

  const int r_c = rank(f.C, p.tol);
  const int m_c = static_cast<int>(R) - r_c + 2;
  ConditionOutcome c2;
  c2.condition_id = "p32.ii.wm";
  c2.stats["m_C"] = m_c;
  c2.stats["rank_C"] = r_c;
  bool um_route = false;
  std::string gate;
  if (m_c <= 0) {
    c2.status = ConditionStatus::Unknown;
    c2.note = "degenerate m_C <= 0";
  } else if (cm_feasible(f.A, f.B, m_c, &gate)) {
    ConditionOutcome cm = check_cm_condition(f.A, f.B, m_c, p);
    c2.stats.insert(cm.stats.begin(), cm.stats.end());
    if (cm.status == ConditionStatus::Proven) {
      c2.status = ConditionStatus::Proven;
      c2.note = "compound check proves the Um condition, which implies the range-restricted one";
      um_route = true;
    } else {
      ConditionOutcome fw = falsify_wm(f.A, f.B, f.C, m_c, p);
      c2.status = fw.status;
      c2.witness = fw.witness;
      c2.note = "compound check inconclusive (" + cm.note + "); falsifier: " + fw.note;
    }
  } else {
    c2.status = ConditionStatus::Unknown;
    c2.note = gate;
    if (m_c <= static_cast<int>(R)) {
      ConditionOutcome fw = falsify_wm(f.A, f.B, f.C, m_c, p);
      if (fw.status == ConditionStatus::Refuted) {
        c2.status = ConditionStatus::Refuted;
        c2.witness = fw.witness;
        c2.note += "; falsifier found a counterexample";
      } else {
        c2.note += "; falsifier: " + fw.note;
      }
    }
  }

  ConditionOutcome c3;
  c3.condition_id = "p32.iii.kr_full_rank";
  if (c2.status == ConditionStatus::Proven && um_route) {
    c3.status = ConditionStatus::Proven;
    c3.note = "implied: the Um condition forces the Khatri-Rao product to full column rank";
    c3.stats["required_rank"] = R;
  } else {
    const int kr_rank = rank(khatri_rao(f.A, f.B), p.tol);
    c3.stats["observed_rank"] = kr_rank;
    c3.stats["required_rank"] = R;
    if (kr_rank == R) {
      c3.status = ConditionStatus::Proven;
      c3.note = "Khatri-Rao product has full column rank";
    } else {
      c3.status = ConditionStatus::Unknown;
      c3.note = "Khatri-Rao product rank deficient under tolerance";
    }
  }

  const bool p32_proven = c1.status == ConditionStatus::Proven &&
                          c2.status == ConditionStatus::Proven &&
                          c3.status == ConditionStatus::Proven;
  const bool kruskal_proven = kruskal.status == ConditionStatus::Proven;
  cert.outcomes = {kruskal, c1, c2, c3};
  cert.verdict = (kruskal_proven || p32_proven) ? Verdict::UNIQUE_PROVEN : Verdict::NOT_PROVEN;
  cert.route = kruskal_proven ? Route::KRUSKAL : Route::PROP32;
  cert.note = kruskal_proven ? "k-rank route proves uniqueness"
              : p32_proven   ? "compound route proves uniqueness"
                             : "no route proved uniqueness";
  return cert;
}

Certificate certify_sfs_prop43(const FieldMatrix& a, const FieldMatrix& c, const CertParams& p) {
  p.validate();
  if (a.cols() != c.cols()) throw InvalidInput("certify_sfs_prop43: column count mismatch");
  const std::int64_t R = a.cols();
  const int ka = k_rank(a, p.tol, p.krank_column_cap);
  const int kc = k_rank(c, p.tol, p.krank_column_cap);

  Certificate cert;
  cert.route = Route::PROP43;
  ConditionOutcome c1 = krank_inequality("p43.i.kranks", ka + kc, R + 2,
                                         {{"k_A", ka}, {"k_C", kc}, {"R", R}},
                                         "k_A + k_C >= R + 2");

  const int r_c = rank(c, p.tol);
  const int m_c = static_cast<int>(R) - r_c + 2;
  ConditionOutcome c2;
  c2.condition_id = "p43.ii.um";
  c2.stats["m_C"] = m_c;
  c2.stats["rank_C"] = r_c;
  std::string gate;
  if (cm_feasible(a, a, m_c, &gate)) {
    ConditionOutcome cm = check_cm_condition(a, a, m_c, p);
    c2.stats.insert(cm.stats.begin(), cm.stats.end());
    if (cm.status == ConditionStatus::Proven) {
      c2.status = ConditionStatus::Proven;
      c2.note = "compound check proves the Um condition for (A, A)";
    } else {
      ConditionOutcome fu = falsify_um(a, a, m_c, p);
      c2.status = fu.status;
      c2.witness = fu.witness;
      c2.note = "compound check inconclusive (" + cm.note + "); falsifier: " + fu.note;
    }
  } else {
    c2.status = ConditionStatus::Unknown;
    c2.note = gate;
    if (m_c >= 1 && m_c <= static_cast<int>(R)) {
      ConditionOutcome fu = falsify_um(a, a, m_c, p);
      if (fu.status == ConditionStatus::Refuted) {
        c2.status = ConditionStatus::Refuted;
        c2.witness = fu.witness;
        c2.note += "; falsifier found a counterexample";
      } else {
        c2.note += "; falsifier: " + fu.note;
      }
    }
  }

  cert.outcomes = {c1, c2};
  cert.verdict = (c1.status == ConditionStatus::Proven && c2.status == ConditionStatus::Proven)
                     ? Verdict::UNIQUE_PROVEN
                     : Verdict::NOT_PROVEN;
  return cert;
}

Certificate certify_sfs_prop61(const FieldMatrix& a, const FieldMatrix& c, const CertParams& p) {
  p.validate();
  if (a.cols() != c.cols()) throw InvalidInput("certify_sfs_prop61: column count mismatch");
  const std::int64_t R = a.cols();
  const int ka = k_rank(a, p.tol, p.krank_column_cap);
  const int kc = k_rank(c, p.tol, p.krank_column_cap);

  Certificate cert;
  cert.route = Route::PROP61;
  cert.note = "certifies the CPD of the reshaped I x K x I tensor with factors (A, C, A); "
              "uniqueness of the SFS decomposition follows";
  ConditionOutcome c1 = krank_inequality(
      "p61.i.kranks", std::max(std::min(ka, kc - 1), std::min(ka - 1, kc)) + ka, R + 1,
      {{"k_A", ka}, {"k_C", kc}, {"R", R}},
      "max(min(k_A,k_C-1), min(k_A-1,k_C)) + k_A >= R + 1");

  const int r_a = rank(a, p.tol);
  const int m_a = static_cast<int>(R) - r_a + 2;
  ConditionOutcome c2;
  c2.condition_id = "p61.ii.um";
  c2.stats["m_A"] = m_a;
  c2.stats["rank_A"] = r_a;
  std::string gate;
  if (cm_feasible(a, c, m_a, &gate)) {
    ConditionOutcome cm = check_cm_condition(a, c, m_a, p);
    c2.stats.insert(cm.stats.begin(), cm.stats.end());
    if (cm.status == ConditionStatus::Proven) {
      c2.status = ConditionStatus::Proven;
      c2.note = "compound check proves the Um condition for (A, C)";
    } else {
      ConditionOutcome fu = falsify_um(a, c, m_a, p);
      c2.status = fu.status;
      c2.witness = fu.witness;
      c2.note = "compound check inconclusive (" + cm.note + "); falsifier: " + fu.note;
    }
  } else {
    c2.status = ConditionStatus::Unknown;
    c2.note = gate;
    if (m_a >= 1 && m_a <= static_cast<int>(R)) {
      ConditionOutcome fu = falsify_um(a, c, m_a, p);
      if (fu.status == ConditionStatus::Refuted) {
        c2.status = ConditionStatus::Refuted;
        c2.witness = fu.witness;
        c2.note += "; falsifier found a counterexample";
      } else {
        c2.note += "; falsifier: " + fu.note;
      }
    }
  }

  cert.outcomes = {c1, c2};
  cert.verdict = (c1.status == ConditionStatus::Proven && c2.status == ConditionStatus::Proven)
                     ? Verdict::UNIQUE_PROVEN
                     : Verdict::NOT_PROVEN;
  return cert;
}

}  // namespace tenuniq
