#pragma once

#include <cstdint>
#include <string>

#include "tenuniq/bounds.hpp"
#include "tenuniq/tensor.hpp"

namespace tenuniq {

/// Parse "IxJxK" (unstructured) or "IxK" / "IxIxK" (with sfs) into dims.
ProblemDims parse_dims(const std::string& text, bool sfs);

// FactorFile: JSON with keys field ("real"|"complex"), sfs (bool),
// A/B/C as nested row-major arrays; complex entries are [re, im] pairs;
// B omitted when sfs is true.
FactorSet parse_factor_file(const std::string& json_text);
FactorSet load_factor_file(const std::string& path);
std::string factor_file_json(const FactorSet& f);
void save_factor_file(const FactorSet& f, const std::string& path);

struct BoundsArgs {
  std::string dims;
  bool sfs = false;
  int max_rank = 200;
  std::string format = "table";  // table | json | csv
  std::string field = "both";    // real | complex | both
};

struct CertifyArgs {
  std::string input_path;
  double tol = 1e-9;
  std::uint64_t falsify_trials = 200;
  std::uint64_t seed = 0;
  std::string format = "json";  // json | table
};

struct GenericCheckArgs {
  std::string dims;
  bool sfs = false;
  int rank = 0;
  int trials = 10;
  std::uint64_t seed = 0;
  std::string field = "real";
  double tol = 1e-9;
  std::string format = "json";  // json | table
};

struct EmpiricalArgs {
  std::string dims;
  bool sfs = false;
  int rank = 0;
  int inits = 20;
  std::uint64_t seed = 0;
  std::string field = "real";
  int max_iters = 10000;
  double fit_tol = 1e-12;
  std::string format = "json";  // json | table | csv
};

/// Outcome of one CLI command: report text on `out`, diagnostics on `err`.
/// Exit codes: 0 ok, 1 usage or input error, 2 numerical failure. Verdicts
/// never drive nonzero exits.
struct CmdResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CmdResult cmd_bounds(const BoundsArgs& args);
CmdResult cmd_certify(const CertifyArgs& args);
CmdResult cmd_generic_check(const GenericCheckArgs& args);
CmdResult cmd_empirical(const EmpiricalArgs& args);

}  // namespace tenuniq
