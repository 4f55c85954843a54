// tenuniq: uniqueness certification for third-order tensor decompositions.
//
//   tenuniq bounds        closed-form generic-uniqueness bound table
//   tenuniq certify       deterministic certificate for a factor file
//   tenuniq generic-check Monte Carlo compound Khatri-Rao full-rank checks
//   tenuniq empirical     multi-start ALS uniqueness probe
//
// Reports go to stdout, diagnostics to stderr. Exit codes: 0 ok,
// 1 usage or input error, 2 numerical failure. Verdicts never change the
// exit code. TENUNIQ_THREADS caps internal parallelism.

#include <iostream>

#include <CLI11.hpp>

#include "tenuniq/report.hpp"
#include "tenuniq/version.hpp"

namespace {

int finish(const tenuniq::CmdResult& r) {
  if (!r.out.empty()) std::cout << r.out;
  if (!r.err.empty()) std::cerr << r.err;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(tenuniq::kToolName) + " " + tenuniq::kToolVersion +
               " - CPD / SFS-CPD uniqueness certification toolkit"};
  app.require_subcommand(1);

  tenuniq::BoundsArgs bounds;
  CLI::App* cb = app.add_subcommand("bounds", "generic-uniqueness bound table for given dims");
  cb->add_option("--dims", bounds.dims, "tensor dims, IxJxK (or IxK with --sfs)")->required();
  cb->add_flag("--sfs", bounds.sfs, "symmetric-frontal-slice (INDSCAL) bounds");
  cb->add_option("--max-rank", bounds.max_rank, "largest rank scanned (default 200)");
  cb->add_option("--format", bounds.format, "table|json|csv (default table)");
  cb->add_option("--field", bounds.field, "real|complex|both (default both)");

  tenuniq::CertifyArgs certify;
  CLI::App* cc = app.add_subcommand("certify", "deterministic certificate for a factor file");
  cc->add_option("input", certify.input_path, "factor file (JSON)")->required();
  cc->add_option("--tol", certify.tol, "relative rank tolerance (default 1e-9)");
  cc->add_option("--falsify-trials", certify.falsify_trials,
                 "support budget for the falsifier (default 200)");
  cc->add_option("--seed", certify.seed, "falsifier seed (default 0)");
  cc->add_option("--format", certify.format, "json|table (default json)");

  tenuniq::GenericCheckArgs gen;
  CLI::App* cg = app.add_subcommand("generic-check", "Monte Carlo generic-uniqueness conditions");
  cg->add_option("--dims", gen.dims, "tensor dims, IxJxK (or IxK with --sfs)")->required();
  cg->add_flag("--sfs", gen.sfs, "use the SFS route");
  cg->add_option("--rank", gen.rank, "decomposition rank R")->required();
  cg->add_option("--trials", gen.trials, "number of random instances (default 10)");
  cg->add_option("--seed", gen.seed, "sampling seed (default 0)");
  cg->add_option("--field", gen.field, "real|complex (default real)");
  cg->add_option("--tol", gen.tol, "relative rank tolerance (default 1e-9)");
  cg->add_option("--format", gen.format, "json|table (default json)");

  tenuniq::EmpiricalArgs emp;
  CLI::App* ce = app.add_subcommand("empirical", "multi-start ALS uniqueness probe");
  ce->add_option("--dims", emp.dims, "tensor dims, IxJxK (or IxK with --sfs)")->required();
  ce->add_flag("--sfs", emp.sfs, "SFS sampling and symmetric ALS");
  ce->add_option("--rank", emp.rank, "decomposition rank R")->required();
  ce->add_option("--inits", emp.inits, "independent ALS starts (default 20)");
  ce->add_option("--seed", emp.seed, "experiment seed (default 0)");
  ce->add_option("--field", emp.field, "real|complex (default real)");
  ce->add_option("--max-iters", emp.max_iters, "ALS iteration cap (default 10000)");
  ce->add_option("--fit-tol", emp.fit_tol, "relative fit-change stop (default 1e-12)");
  ce->add_option("--format", emp.format, "json|table|csv (default json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints usage or help text
    return code == 0 ? 0 : 1;
  }

  if (cb->parsed()) return finish(tenuniq::cmd_bounds(bounds));
  if (cc->parsed()) return finish(tenuniq::cmd_certify(certify));
  if (cg->parsed()) return finish(tenuniq::cmd_generic_check(gen));
  return finish(tenuniq::cmd_empirical(emp));
}
