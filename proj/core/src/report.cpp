#include "tenuniq/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tenuniq/certify.hpp"
#include "tenuniq/lab.hpp"
#include "tenuniq/version.hpp"

namespace tenuniq {

using ordered_json = nlohmann::ordered_json;

ProblemDims parse_dims(const std::string& text, bool sfs) {
  std::vector<int> parts;
  std::string cur;
  for (char ch : text + "x") {
    if (ch == 'x' || ch == 'X') {
      if (cur.empty()) throw InvalidInput("dims: expected IxJxK (or IxK with --sfs), got '" + text + "'");
      try {
        std::size_t pos = 0;
        const int v = std::stoi(cur, &pos);
        if (pos != cur.size() || v < 1) throw std::invalid_argument("");
        parts.push_back(v);
      } catch (const std::exception&) {
        throw InvalidInput("dims: '" + cur + "' is not a positive integer");
      }
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (sfs) {
    if (parts.size() == 2) return ProblemDims::sfs_dims(parts[0], parts[1]);
    if (parts.size() == 3 && parts[0] == parts[1]) return ProblemDims::sfs_dims(parts[0], parts[2]);
    throw InvalidInput("dims: --sfs expects IxK (or IxIxK), got '" + text + "'");
  }
  if (parts.size() != 3) throw InvalidInput("dims: expected IxJxK, got '" + text + "'");
  return ProblemDims::cpd(parts[0], parts[1], parts[2]);
}

namespace {

FieldMatrix parse_matrix(const ordered_json& arr, Field field, const std::string& name) {
  if (!arr.is_array() || arr.empty())
    throw InvalidInput("factor file: '" + name + "' must be a non-empty array of rows");
  const std::size_t rows = arr.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!arr[i].is_array() || arr[i].empty())
      throw InvalidInput("factor file: '" + name + "' rows must be non-empty arrays");
    if (i == 0)
      cols = arr[i].size();
    else if (arr[i].size() != cols)
      throw InvalidInput("factor file: '" + name + "' rows have inconsistent lengths");
  }
  auto entry = [&](const ordered_json& v) -> Complex {
    if (field == Field::Real) {
      if (!v.is_number()) throw InvalidInput("factor file: real entries must be numbers");
      return Complex(v.get<double>(), 0.0);
    }
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw InvalidInput("factor file: complex entries must be [re, im] pairs");
    return Complex(v[0].get<double>(), v[1].get<double>());
  };
  if (field == Field::Real) {
    RealMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry(arr[i][j]).real();
    return FieldMatrix(std::move(m));
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry(arr[i][j]);
  return FieldMatrix(std::move(m));
}

ordered_json matrix_json(const FieldMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex v = m.at(i, j);
      if (m.is_real())
        row.push_back(v.real());
      else
        row.push_back(ordered_json::array({v.real(), v.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

FactorSet parse_factor_file(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw InvalidInput(std::string("factor file: JSON parse failed: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("factor file: top level must be an object");
  if (!j.contains("field") || !j["field"].is_string())
    throw InvalidInput("factor file: missing string key 'field'");
  const std::string fs = j["field"].get<std::string>();
  if (fs != "real" && fs != "complex")
    throw InvalidInput("factor file: field must be \"real\" or \"complex\"");
  const Field field = fs == "real" ? Field::Real : Field::Complex;
  const bool sfs = j.value("sfs", false);
  if (!j.contains("A") || !j.contains("C"))
    throw InvalidInput("factor file: keys 'A' and 'C' are required");

  FactorSet f;
  f.sfs = sfs;
  f.A = parse_matrix(j["A"], field, "A");
  f.C = parse_matrix(j["C"], field, "C");
  if (sfs) {
    if (j.contains("B")) {
      f.B = parse_matrix(j["B"], field, "B");
      if (f.B.rows() != f.A.rows() || f.B.cols() != f.A.cols() || f.A.max_abs_diff(f.B) != 0.0)
        throw InvalidInput("factor file: sfs set but B is not identical to A");
    } else {
      f.B = f.A;
    }
  } else {
    if (!j.contains("B")) throw InvalidInput("factor file: key 'B' required unless sfs");
    f.B = parse_matrix(j["B"], field, "B");
  }
  f.validate();
  return f;
}

FactorSet load_factor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("factor file: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_factor_file(ss.str());
}

std::string factor_file_json(const FactorSet& f) {
  f.validate();
  ordered_json j;
  j["field"] = to_string(f.field());
  j["sfs"] = f.sfs;
  j["A"] = matrix_json(f.A);
  if (!f.sfs) j["B"] = matrix_json(f.B);
  j["C"] = matrix_json(f.C);
  return j.dump(2) + "\n";
}

void save_factor_file(const FactorSet& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("factor file: cannot write '" + path + "'");
  out << factor_file_json(f);
}

namespace {

template <typename Fn>
CmdResult guarded(Fn fn) {
  try {
    return fn();
  } catch (const InvalidInput& e) {
    return CmdResult{1, "", std::string("error: ") + e.what() + "\n"};
  } catch (const NumericalError& e) {
    return CmdResult{2, "", std::string("numerical error: ") + e.what() + "\n"};
  }
}

ordered_json envelope(const std::string& command, ordered_json inputs, std::uint64_t seed,
                      ordered_json results) {
  ordered_json e;
  e["tool"] = kToolName;
  e["tool_version"] = kToolVersion;
  e["command"] = command;
  e["inputs"] = std::move(inputs);
  e["seed"] = seed;
  e["results"] = std::move(results);
  return e;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// [lo, hi] runs of a sorted integer set, e.g. {2,3,4,7} -> [[2,4],[7,7]].
ordered_json rank_runs(const std::vector<int>& xs) {
  ordered_json runs = ordered_json::array();
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j + 1 < xs.size() && xs[j + 1] == xs[j] + 1) ++j;
    runs.push_back(ordered_json::array({xs[i], xs[j]}));
    i = j + 1;
  }
  return runs;
}

std::string rank_runs_text(const std::vector<int>& xs) {
  std::string out;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j + 1 < xs.size() && xs[j + 1] == xs[j] + 1) ++j;
    if (!out.empty()) out += ";";
    out += std::to_string(xs[i]);
    if (j > i) out += "-" + std::to_string(xs[j]);
    i = j + 1;
  }
  return out;
}

const char* scope_text(FieldScope s) {
  return s == FieldScope::BothFields ? "both" : "complex";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

ordered_json bounds_results_json(const BoundTable& t, const std::string& field_filter) {
  ordered_json r;
  r["dims"] = {{"I", t.dims.I}, {"J", t.dims.J}, {"K", t.dims.K}, {"sfs", t.dims.sfs}};
  r["sorted_dims"] = t.sorted_dims;
  r["permuted"] = t.permuted;
  r["r_cap"] = t.r_cap;
  ordered_json entries = ordered_json::array();
  for (const BoundEntry& e : t.entries) {
    ordered_json je;
    je["proposition_id"] = to_string(e.id);
    je["field"] = scope_text(e.field_scope);
    je["literature_only"] = e.literature_only;
    je["max_rank"] = e.max_rank;
    je["rank_runs"] = rank_runs(e.rank_set);
    je["note"] = e.note;
    entries.push_back(std::move(je));
  }
  r["entries"] = std::move(entries);
  r["overall_max_proven_real"] = t.overall_max_real;
  r["overall_max_proven_complex"] = t.overall_max_complex;
  r["overall_max"] = field_filter == "real" ? t.overall_max_real : t.overall_max_complex;
  r["closure_note"] = t.closure_note;
  return r;
}

std::string bounds_csv(const BoundTable& t, const std::string& field_filter) {
  std::string out = "proposition_id,field,literature_only,max_rank,rank_set,note\n";
  for (const BoundEntry& e : t.entries) {
    out += std::string(to_string(e.id)) + "," + scope_text(e.field_scope) + "," +
           (e.literature_only ? "true" : "false") + "," + std::to_string(e.max_rank) + "," +
           rank_runs_text(e.rank_set) + "," + csv_escape(e.note) + "\n";
  }
  out += "OVERALL_PROVEN_REAL,both,false," + std::to_string(t.overall_max_real) + ",,\n";
  out += "OVERALL_PROVEN_COMPLEX,complex,false," + std::to_string(t.overall_max_complex) + ",,\n";
  out += "OVERALL_MAX," + field_filter + ",false," +
         std::to_string(field_filter == "real" ? t.overall_max_real : t.overall_max_complex) +
         ",,\n";
  return out;
}

std::string bounds_table_text(const BoundTable& t, const std::string& field_filter) {
  std::ostringstream os;
  os << "dims: " << t.dims.I << "x" << t.dims.J << "x" << t.dims.K
     << (t.dims.sfs ? " (sfs)" : "");
  if (t.permuted)
    os << "  [sorted to " << t.sorted_dims[0] << "x" << t.sorted_dims[1] << "x" << t.sorted_dims[2]
       << "]";
  os << "  r_cap: " << t.r_cap << "\n\n";
  os << "proposition        field    lit  max_R  ranks\n";
  for (const BoundEntry& e : t.entries) {
    std::string id = to_string(e.id);
    id.resize(18, ' ');
    std::string fs = scope_text(e.field_scope);
    fs.resize(8, ' ');
    std::string lit = e.literature_only ? "yes" : "no ";
    std::string mr = std::to_string(e.max_rank);
    mr.resize(6, ' ');
    os << id << " " << fs << " " << lit << "  " << mr << " " << rank_runs_text(e.rank_set);
    if (!e.note.empty()) os << "   (" << e.note << ")";
    os << "\n";
  }
  os << "\noverall proven max (real):    " << t.overall_max_real << "\n";
  os << "overall proven max (complex): " << t.overall_max_complex << "\n";
  if (field_filter != "both")
    os << "overall max for --field " << field_filter << ": "
       << (field_filter == "real" ? t.overall_max_real : t.overall_max_complex) << "\n";
  if (!t.closure_note.empty()) os << t.closure_note << "\n";
  return os.str();
}

ordered_json witness_json(const FalsifierWitness& w, Field field) {
  ordered_json j;
  ordered_json lam = ordered_json::array();
  for (Eigen::Index i = 0; i < w.lambda.size(); ++i) {
    if (field == Field::Real)
      lam.push_back(w.lambda(i).real());
    else
      lam.push_back(ordered_json::array({w.lambda(i).real(), w.lambda(i).imag()}));
  }
  j["lambda"] = std::move(lam);
  if (w.x) {
    ordered_json xv = ordered_json::array();
    for (Eigen::Index i = 0; i < w.x->size(); ++i) {
      if (field == Field::Real)
        xv.push_back((*w.x)(i).real());
      else
        xv.push_back(ordered_json::array({(*w.x)(i).real(), (*w.x)(i).imag()}));
    }
    j["x"] = std::move(xv);
  }
  j["weight"] = w.weight;
  j["product_rank"] = w.product_rank;
  return j;
}

ordered_json certificate_json(const Certificate& c, Field field) {
  ordered_json j;
  j["route"] = to_string(c.route);
  j["verdict"] = to_string(c.verdict);
  j["note"] = c.note;
  ordered_json outs = ordered_json::array();
  for (const ConditionOutcome& o : c.outcomes) {
    ordered_json jo;
    jo["condition_id"] = o.condition_id;
    jo["status"] = to_string(o.status);
    jo["note"] = o.note;
    ordered_json stats;
    for (const auto& [k, v] : o.stats) stats[k] = v;
    jo["stats"] = std::move(stats);
    if (o.witness) jo["witness"] = witness_json(*o.witness, field);
    outs.push_back(std::move(jo));
  }
  j["outcomes"] = std::move(outs);
  return j;
}

std::string certificates_table_text(const std::vector<Certificate>& certs) {
  std::ostringstream os;
  for (const Certificate& c : certs) {
    os << "route " << to_string(c.route) << ": " << to_string(c.verdict);
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
    for (const ConditionOutcome& o : c.outcomes) {
      std::string id = o.condition_id;
      id.resize(22, ' ');
      os << "  " << id << " " << to_string(o.status) << "  " << o.note << "\n";
    }
  }
  return os.str();
}

void require_format(const std::string& fmt, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (fmt == a) return;
  std::string all;
  for (const char* a : allowed) all += std::string(all.empty() ? "" : "|") + a;
  throw InvalidInput("unknown --format '" + fmt + "' (expected " + all + ")");
}

Field parse_field_flag(const std::string& f) {
  if (f == "real") return Field::Real;
  if (f == "complex") return Field::Complex;
  throw InvalidInput("unknown --field '" + f + "' (expected real|complex)");
}

}  // namespace

CmdResult cmd_bounds(const BoundsArgs& args) {
  return guarded([&]() -> CmdResult {
    require_format(args.format, {"table", "json", "csv"});
    if (args.field != "real" && args.field != "complex" && args.field != "both")
      throw InvalidInput("unknown --field '" + args.field + "' (expected real|complex|both)");
    if (args.max_rank < 1) throw InvalidInput("--max-rank must be >= 1");
    const ProblemDims dims = parse_dims(args.dims, args.sfs);
    const BoundTable table = aggregate(dims, args.max_rank);

    CmdResult res;
    if (args.format == "json") {
      ordered_json inputs = {{"dims", args.dims},
                             {"sfs", args.sfs},
                             {"max_rank", args.max_rank},
                             {"format", args.format},
                             {"field", args.field}};
      res.out = dump(envelope("bounds", inputs, 0, bounds_results_json(table, args.field)));
    } else if (args.format == "csv") {
      res.out = bounds_csv(table, args.field);
    } else {
      res.out = bounds_table_text(table, args.field);
    }
    return res;
  });
}

CmdResult cmd_certify(const CertifyArgs& args) {
  return guarded([&]() -> CmdResult {
    require_format(args.format, {"table", "json"});
    const FactorSet f = load_factor_file(args.input_path);
    CertParams p;
    p.tol = RankTolerance(args.tol);
    p.falsify_trials = args.falsify_trials;
    p.seed = args.seed;
    p.validate();

    std::vector<Certificate> certs;
    if (f.sfs) {
      certs.push_back(certify_sfs_prop43(f.A, f.C, p));
      certs.push_back(certify_sfs_prop61(f.A, f.C, p));
    } else {
      certs.push_back(certify_cpd(f, p));
    }

    CmdResult res;
    if (args.format == "json") {
      ordered_json inputs = {{"input", args.input_path},
                             {"tol", args.tol},
                             {"falsify_trials", args.falsify_trials},
                             {"seed", args.seed},
                             {"format", args.format}};
      ordered_json results;
      results["input"] = {{"I", f.A.rows()}, {"J", f.B.rows()}, {"K", f.C.rows()},
                          {"R", f.rank()},   {"field", to_string(f.field())}, {"sfs", f.sfs}};
      ordered_json jcerts = ordered_json::array();
      for (const Certificate& c : certs) jcerts.push_back(certificate_json(c, f.field()));
      results["certificates"] = std::move(jcerts);
      res.out = dump(envelope("certify", inputs, args.seed, std::move(results)));
    } else {
      res.out = certificates_table_text(certs);
    }
    return res;
  });
}

CmdResult cmd_generic_check(const GenericCheckArgs& args) {
  return guarded([&]() -> CmdResult {
    require_format(args.format, {"table", "json"});
    if (args.rank < 1) throw InvalidInput("--rank must be >= 1");
    if (args.trials < 1) throw InvalidInput("--trials must be >= 1");
    const ProblemDims dims = parse_dims(args.dims, args.sfs);
    SampleSpec spec;
    spec.dims = dims;
    spec.rank = args.rank;
    spec.field = parse_field_flag(args.field);
    spec.seed = args.seed;
    spec.trials = args.trials;
    const GenericRoute route = args.sfs ? GenericRoute::PROP13 : GenericRoute::PROP17;
    const GenericCheckSummary s = monte_carlo_generic_check(spec, route, RankTolerance(args.tol));

    CmdResult res;
    if (args.format == "json") {
      ordered_json inputs = {{"dims", args.dims}, {"sfs", args.sfs},     {"rank", args.rank},
                             {"trials", args.trials}, {"seed", args.seed}, {"field", args.field},
                             {"tol", args.tol},   {"format", args.format}};
      ordered_json results;
      results["route"] = to_string(s.route);
      results["trials"] = s.trials;
      ordered_json conds = ordered_json::array();
      for (const GenericConditionTally& c : s.conditions) {
        ordered_json jc;
        jc["condition_id"] = c.condition_id;
        jc["m"] = c.m;
        jc["check_rows"] = c.check_rows;
        jc["check_cols"] = c.check_cols;
        jc["passes"] = c.passes;
        jc["fails"] = c.fails;
        jc["gated"] = c.gated;
        jc["gate_reason"] = c.gate_reason;
        conds.push_back(std::move(jc));
      }
      results["conditions"] = std::move(conds);
      results["trials_any_pass"] = s.trials_any_pass;
      res.out = dump(envelope("generic-check", inputs, args.seed, std::move(results)));
    } else {
      std::ostringstream os;
      os << "route " << to_string(s.route) << ", " << s.trials << " trials, any-pass "
         << s.trials_any_pass << "/" << s.trials << "\n";
      for (const GenericConditionTally& c : s.conditions) {
        os << "  " << c.condition_id << " (m=" << c.m << ", " << c.check_rows << "x"
           << c.check_cols << "): pass " << c.passes << " fail " << c.fails << " gated "
           << c.gated;
        if (!c.gate_reason.empty()) os << " [" << c.gate_reason << "]";
        os << "\n";
      }
      res.out = os.str();
    }
    return res;
  });
}

CmdResult cmd_empirical(const EmpiricalArgs& args) {
  return guarded([&]() -> CmdResult {
    require_format(args.format, {"table", "json", "csv"});
    if (args.rank < 1) throw InvalidInput("--rank must be >= 1");
    if (args.inits < 1) throw InvalidInput("--inits must be >= 1");
    const ProblemDims dims = parse_dims(args.dims, args.sfs);
    SampleSpec spec;
    spec.dims = dims;
    spec.rank = args.rank;
    spec.field = parse_field_flag(args.field);
    spec.seed = args.seed;
    AlsOptions opts;
    opts.max_iters = args.max_iters;
    opts.fit_tol = args.fit_tol;
    opts.n_inits = args.inits;
    opts.seed = args.seed;
    const EmpiricalResult r = empirical_uniqueness(spec, opts);

    CmdResult res;
    if (args.format == "json") {
      ordered_json inputs = {{"dims", args.dims},       {"sfs", args.sfs},
                             {"rank", args.rank},       {"inits", args.inits},
                             {"seed", args.seed},       {"field", args.field},
                             {"max_iters", args.max_iters}, {"fit_tol", args.fit_tol},
                             {"format", args.format}};
      ordered_json results;
      results["verdict"] = to_string(r.verdict);
      results["kept_count"] = r.kept_count;
      results["worst_pair_congruence"] = r.worst_pair_congruence;
      results["note"] = r.note;
      ordered_json runs = ordered_json::array();
      for (const EmpiricalRunRow& row : r.runs) {
        ordered_json jr;
        jr["init"] = row.init;
        jr["fit"] = row.fit;
        jr["iters"] = row.iters;
        jr["kept"] = row.kept;
        jr["congruence_vs_truth"] = row.congruence_vs_truth;
        runs.push_back(std::move(jr));
      }
      results["runs"] = std::move(runs);
      res.out = dump(envelope("empirical", inputs, args.seed, std::move(results)));
    } else if (args.format == "csv") {
      std::ostringstream os;
      os << "init,fit,iters,kept,congruence_vs_truth\n";
      os.precision(17);
      for (const EmpiricalRunRow& row : r.runs)
        os << row.init << "," << row.fit << "," << row.iters << "," << (row.kept ? "true" : "false")
           << "," << row.congruence_vs_truth << "\n";
      os << "# verdict: " << to_string(r.verdict) << " (" << r.note << ")\n";
      res.out = os.str();
    } else {
      std::ostringstream os;
      os.precision(6);
      os << "verdict: " << to_string(r.verdict) << "\n";
      os << "kept " << r.kept_count << "/" << r.runs.size() << ", worst pair congruence "
         << r.worst_pair_congruence << "\n";
      os << r.note << "\n";
      res.out = os.str();
    }
    return res;
  });
}

}  // namespace tenuniq
