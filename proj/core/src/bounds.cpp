#include "tenuniq/bounds.hpp"

#include <algorithm>

namespace tenuniq {

const char* to_string(PropositionId id) {
  switch (id) {
    case PropositionId::KRUSKAL_GENERIC: return "KRUSKAL_GENERIC";
    case PropositionId::STRASSEN_CO: return "STRASSEN_CO";
    case PropositionId::PROP14_I: return "PROP14_I";
    case PropositionId::PROP14_II: return "PROP14_II";
    case PropositionId::PROP14_III: return "PROP14_III";
    case PropositionId::NICK_FORMULA: return "NICK_FORMULA";
    case PropositionId::PROP15: return "PROP15";
    case PropositionId::COR16: return "COR16";
    case PropositionId::KRUSKAL_SFS: return "KRUSKAL_SFS";
    case PropositionId::PROP13_MC: return "PROP13_MC";
    case PropositionId::PROP18: return "PROP18";
    case PropositionId::PROP19: return "PROP19";
    case PropositionId::PROP110: return "PROP110";
  }
  return "?";
}

namespace bounds_detail {

// R <= (X - sqrt(D)) / 2 evaluated as: s := X - 2R >= 0 and s^2 >= D.

bool prop15_radical(long long I, long long J, long long K, long long R) {
  if (!(2 <= I && I <= J && J <= K && K <= R)) return false;
  const long long s = I + J + 2 * K - 2 - 2 * R;
  return s >= 0 && s * s >= (I - J) * (I - J) + 4 * K;
}

bool prop15_mform(long long I, long long J, long long K, long long R) {
  if (!(I <= J && J <= K && K <= R)) return false;
  const long long m = R - K + 2;
  if (!(m - 1 <= I)) return false;
  return R <= (I + 1 - m) * (J + 1 - m) + m - 2;
}

bool prop19_radical(long long I, long long K, long long R) {
  if (!(2 <= I && I <= K && K <= R)) return false;
  const long long s = 2 * I + 2 * K + 1 - 2 * R;
  return s >= 0 && s * s >= 8 * K + 8 * I + 1;
}

bool prop19_mform(long long I, long long K, long long R) {
  if (!(2 <= I && I <= K && K <= R)) return false;
  const long long m = R - K + 2;
  if (!(m - 1 <= I)) return false;
  return 2 * R <= I * I + (3 - 2 * m) * I + (m - 1) * (m - 2);
}

bool prop110_radical(long long I, long long K, long long R) {
  if (!(2 <= K && K <= I && I <= R)) return false;
  const long long s = K + 3 * I - 1 - 2 * R;
  return s >= 0 && s * s >= (K - I) * (K - I) + 2 * K + 6 * I - 3;
}

bool prop110_mform(long long I, long long K, long long R) {
  if (!(2 <= K && K <= I && I <= R)) return false;
  const long long m = R - I + 2;
  if (!(m - 1 <= K)) return false;
  return R <= (I + 1 - m) * (K + 1 - m);
}

}  // namespace bounds_detail

namespace {

using bounds_detail::prop110_mform;
using bounds_detail::prop110_radical;
using bounds_detail::prop15_mform;
using bounds_detail::prop15_radical;
using bounds_detail::prop19_mform;
using bounds_detail::prop19_radical;

struct SortedDims {
  long long I, J, K;
};

SortedDims sorted_cpd_dims(const ProblemDims& d) {
  std::array<long long, 3> a{d.I, d.J, d.K};
  std::sort(a.begin(), a.end());
  return {a[0], a[1], a[2]};
}

void require_cpd(const ProblemDims& d, const char* op) {
  if (d.sfs) throw InvalidInput(std::string(op) + ": expects unstructured dims (sfs = false)");
}
void require_sfs(const ProblemDims& d, const char* op) {
  if (!d.sfs) throw InvalidInput(std::string(op) + ": expects SFS dims");
}

template <typename Member>
BoundEntry scan(PropositionId id, int r_cap, Member member) {
  BoundEntry e;
  e.id = id;
  for (int r = 1; r <= r_cap; ++r)
    if (member(r)) e.rank_set.push_back(r);
  e.max_rank = e.rank_set.empty() ? 0 : e.rank_set.back();
  return e;
}

// Two routes stated as equivalent must agree at every rank; a disagreement is
// an implementation defect, not an input condition.
void check_forms_agree(PropositionId id, bool radical, bool mform, int r) {
  if (radical != mform)
    throw std::logic_error(std::string("internal inconsistency: radical and m-forms of ") +
                           to_string(id) + " disagree at R=" + std::to_string(r));
}

}  // namespace

BoundEntry kruskal_generic(const ProblemDims& dims, int r_cap) {
  require_cpd(dims, "kruskal_generic");
  const auto [I, J, K] = sorted_cpd_dims(dims);
  BoundEntry e = scan(PropositionId::KRUSKAL_GENERIC, r_cap, [&](long long R) {
    return 2 * R <= std::min(I, R) + std::min(J, R) + std::min(K, R) - 2;
  });
  if (e.rank_set.empty()) e.note = "no R satisfies the k-rank inequality at these dims";
  return e;
}

BoundEntry strassen_co(const ProblemDims& dims, int r_cap) {
  require_cpd(dims, "strassen_co");
  const auto [I, J, K] = sorted_cpd_dims(dims);
  BoundEntry e = scan(PropositionId::STRASSEN_CO, r_cap, [&](long long R) {
    return 3 <= I && R <= (I - 1) * (J - 1) && (I - 1) * (J - 1) <= K;
  });
  e.field_scope = FieldScope::ComplexOnly;
  if (e.rank_set.empty()) {
    if (I < 3) e.note = "requires 3 <= I";
    else if ((I - 1) * (J - 1) > K) e.note = "(I-1)(J-1) <= K fails";
  }
  return e;
}

std::array<BoundEntry, 3> prop14(const ProblemDims& dims, int r_cap) {
  require_cpd(dims, "prop14");
  const auto [I, J, K] = sorted_cpd_dims(dims);
  const bool ordered = 2 <= I;

  BoundEntry i1 = scan(PropositionId::PROP14_I, r_cap, [&](long long R) {
    // R <= IJK/(I+J+K-2) - K as integers: (R+K)(I+J+K-2) <= IJK.
    return ordered && 3 <= I && K <= R && (R + K) * (I + J + K - 2) <= I * J * K;
  });
  i1.field_scope = FieldScope::ComplexOnly;
  if (i1.rank_set.empty()) {
    if (I < 3) i1.note = "requires 3 <= I";
    else i1.note = "IJK/(I+J+K-2) - K < K at these dims";
  }

  long long alpha = 0, beta = 0;  // maximal exponents with 2^alpha <= I, 2^beta <= J
  while ((2LL << alpha) <= I) ++alpha;
  while ((2LL << beta) <= J) ++beta;
  BoundEntry i2 = scan(PropositionId::PROP14_II, r_cap, [&](long long R) {
    return ordered && K <= R && R <= (1LL << (alpha + beta - 2));
  });
  if (i2.rank_set.empty()) i2.note = "2^(alpha+beta-2) < K at these dims";

  BoundEntry i3 = scan(PropositionId::PROP14_III, r_cap, [&](long long R) {
    return ordered && K <= R && 2 * R <= I + J + K - 2;
  });
  if (i3.rank_set.empty()) i3.note = "(I+J+K-2)/2 < K at these dims";
  return {i1, i2, i3};
}

BoundEntry nick_formula(const ProblemDims& dims, int r_cap) {
  require_cpd(dims, "nick_formula");
  const auto [I, J, K] = sorted_cpd_dims(dims);
  BoundEntry e;
  const long long volume = I * J * K;
  if (volume > 15000) {
    e.id = PropositionId::NICK_FORMULA;
    e.note = "IJK > 15000: outside the formula's verified range";
  } else {
    const long long den = I + J + K - 2;
    const long long bound = (volume + den - 1) / den - 1;  // ceil(IJK/den) - 1
    e = scan(PropositionId::NICK_FORMULA, r_cap, [&](long long R) { return R <= bound; });
    e.note = "literature reference, not certified here";
  }
  e.id = PropositionId::NICK_FORMULA;
  e.literature_only = true;
  e.max_rank = e.rank_set.empty() ? 0 : e.rank_set.back();
  return e;
}

BoundEntry prop15(const ProblemDims& dims, int r_cap) {
  require_cpd(dims, "prop15");
  const auto [I, J, K] = sorted_cpd_dims(dims);
  BoundEntry e = scan(PropositionId::PROP15, r_cap, [&](long long R) {
    const bool radical = prop15_radical(I, J, K, R);
    check_forms_agree(PropositionId::PROP15, radical, prop15_mform(I, J, K, R), static_cast<int>(R));
    return radical;
  });
  if (e.rank_set.empty()) e.note = K > r_cap ? "K exceeds the scanned rank cap" : "empty at these dims (needs K <= R <= radical bound)";
  return e;
}

BoundEntry cor16(const ProblemDims& dims, int r_cap) {
  require_cpd(dims, "cor16");
  const auto [I, J, K] = sorted_cpd_dims(dims);
  BoundEntry e = scan(PropositionId::COR16, r_cap, [&](long long R) {
    return 3 <= I && J <= R && R <= K && R <= (I - 1) * (J - 1);
  });
  if (e.rank_set.empty()) {
    if (I < 3) e.note = "requires 3 <= I";
    else e.note = "no R with J <= R <= min(K, (I-1)(J-1))";
  }
  return e;
}

BoundEntry kruskal_sfs(const ProblemDims& dims, int r_cap) {
  require_sfs(dims, "kruskal_sfs");
  const long long I = dims.I, K = dims.K;
  BoundEntry e = scan(PropositionId::KRUSKAL_SFS, r_cap, [&](long long R) {
    return 2 * R <= 2 * std::min(I, R) + std::min(K, R) - 2;
  });
  if (e.rank_set.empty()) e.note = "no R satisfies the SFS k-rank inequality";
  return e;
}

BoundEntry prop18(const ProblemDims& dims, int r_cap) {
  require_sfs(dims, "prop18");
  const long long I = dims.I, K = dims.K;
  BoundEntry e = scan(PropositionId::PROP18, r_cap, [&](long long R) {
    return 4 <= I && I < R && R <= K && 2 * R <= I * I - I;
  });
  if (e.rank_set.empty()) {
    if (I < 4) e.note = "requires 4 <= I";
    else e.note = "no R with I < R <= min(K, (I^2-I)/2)";
  }
  return e;
}

BoundEntry prop19(const ProblemDims& dims, int r_cap) {
  require_sfs(dims, "prop19");
  const long long I = dims.I, K = dims.K;
  BoundEntry e = scan(PropositionId::PROP19, r_cap, [&](long long R) {
    const bool radical = prop19_radical(I, K, R);
    check_forms_agree(PropositionId::PROP19, radical, prop19_mform(I, K, R), static_cast<int>(R));
    return radical;
  });
  if (e.rank_set.empty()) e.note = "empty at these dims (needs K <= R <= radical bound)";
  return e;
}

BoundEntry prop110(const ProblemDims& dims, int r_cap) {
  require_sfs(dims, "prop110");
  const long long I = dims.I, K = dims.K;
  BoundEntry e = scan(PropositionId::PROP110, r_cap, [&](long long R) {
    const bool radical = prop110_radical(I, K, R);
    check_forms_agree(PropositionId::PROP110, radical, prop110_mform(I, K, R), static_cast<int>(R));
    return radical;
  });
  if (e.rank_set.empty()) {
    if (K > I) e.note = "requires K <= I";
    else e.note = "empty at these dims (needs I <= R <= radical bound)";
  }
  return e;
}

BoundTable aggregate(const ProblemDims& dims, int r_cap) {
  if (r_cap < 1) throw InvalidInput("aggregate: r_cap must be positive");
  BoundTable t;
  t.dims = dims;
  t.r_cap = r_cap;

  if (!dims.sfs) {
    const auto s = sorted_cpd_dims(dims);
    t.sorted_dims = {static_cast<int>(s.I), static_cast<int>(s.J), static_cast<int>(s.K)};
    t.permuted = !(dims.I <= dims.J && dims.J <= dims.K);
    t.entries.push_back(kruskal_generic(dims, r_cap));
    t.entries.push_back(strassen_co(dims, r_cap));
    auto p14 = prop14(dims, r_cap);
    t.entries.insert(t.entries.end(), p14.begin(), p14.end());
    t.entries.push_back(nick_formula(dims, r_cap));
    t.entries.push_back(prop15(dims, r_cap));
    t.entries.push_back(cor16(dims, r_cap));
    for (const auto& e : t.entries) {
      if (e.literature_only) continue;
      t.overall_max_complex = std::max(t.overall_max_complex, e.max_rank);
      if (e.field_scope == FieldScope::BothFields)
        t.overall_max_real = std::max(t.overall_max_real, e.max_rank);
    }
    return t;
  }

  t.sorted_dims = {dims.I, dims.I, dims.K};
  t.entries.push_back(kruskal_sfs(dims, r_cap));
  t.entries.push_back(prop18(dims, r_cap));
  t.entries.push_back(prop19(dims, r_cap));
  t.entries.push_back(prop110(dims, r_cap));

  // Monotonicity closure: anything guaranteed at (I, K') with K' <= K stays
  // guaranteed at (I, K), and so does every smaller rank. The closure scan
  // keeps the per-entry sets as stated at K and lifts only the overall figure.
  int best = 0;
  PropositionId best_id = PropositionId::KRUSKAL_SFS;
  int best_k = 0;
  for (int kp = 1; kp <= dims.K; ++kp) {
    const ProblemDims d2 = ProblemDims::sfs_dims(dims.I, kp);
    for (const BoundEntry& e :
         {kruskal_sfs(d2, r_cap), prop18(d2, r_cap), prop19(d2, r_cap), prop110(d2, r_cap)}) {
      if (e.max_rank > best) {
        best = e.max_rank;
        best_id = e.id;
        best_k = kp;
      }
    }
  }
  t.overall_max_real = t.overall_max_complex = best;
  if (best > 0) {
    t.closure_note = std::string("every R <= ") + std::to_string(best) +
                     " is guaranteed (monotonicity closure via " + to_string(best_id) + " at K'=" +
                     std::to_string(best_k) + ")";
  }
  return t;
}

}  // namespace tenuniq
