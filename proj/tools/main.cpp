// qsym — finite symmetry algebras, relativized observables, and the
// two-path interference scenario, exposed as reproducible commands.
//
// Every command prints one report (JSON by default) and exits 0 exactly
// when the report's embedded checks pass.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsym/reports.hpp"

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qsym::Error("cannot open input file: " + path);
  return nlohmann::json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Finite symmetry algebras, relativized observables, and the two-path "
      "scenario"};
  app.require_subcommand(1);

  qsym::RunConfig cfg;
  std::string format = "json";
  app.add_option("--tol", cfg.tol.eq_tol, "Equality tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--rank-tol", cfg.tol.rank_tol, "Rank / spectral-gap tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for randomized block separation")
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.add_option("--dim-cap", cfg.dim_cap, "Upper bound on joint dimensions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* ex = app.add_subcommand(
      "example-z3",
      "Order-three shift example: spectrum, charge diagonal, twirl masks");

  int t1_order = 2;
  int t1_systems = 2;
  CLI::App* t1 = app.add_subcommand(
      "table1",
      "Weak/strong comparison: blocks, factor, reversibility, charge access");
  t1->add_option("--order", t1_order, "Group order")
      ->check(CLI::Range(2, 12))
      ->capture_default_str();
  t1->add_option("--systems", t1_systems, "Number of systems")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();

  bool corrupt = false;
  CLI::App* th = app.add_subcommand(
      "theorem1", "Compare both descriptions of the momentum measurement");
  th->add_flag("--corrupt", corrupt,
               "Deliberately corrupt one gate (negative control)")
      ->group("");

  std::string twirl_kind;
  std::string twirl_file;
  CLI::App* tw =
      app.add_subcommand("twirl", "Twirl the state in the input document");
  tw->add_option("--kind", twirl_kind, "Twirl kind")
      ->required()
      ->check(CLI::IsMember({"weak", "strong"}));
  tw->add_option("--input", twirl_file,
                 "JSON document: {order, dim, generator, state}")
      ->required()
      ->check(CLI::ExistingFile);

  std::string gens_file;
  CLI::App* al = app.add_subcommand(
      "algebra", "Close a generator set and report its block structure");
  al->add_option("--generators", gens_file, "JSON document: {dim, generators}")
      ->required()
      ->check(CLI::ExistingFile);

  int ca_order = 3;
  int ca_systems = 2;
  CLI::App* ca = app.add_subcommand(
      "charge-access",
      "Total-charge accessibility per perspective and collaboratively");
  ca->add_option("--order", ca_order, "Group order")
      ->check(CLI::Range(2, 12))
      ->capture_default_str();
  ca->add_option("--systems", ca_systems, "Number of systems")
      ->check(CLI::Range(2, 8))
      ->capture_default_str();

  // Let global flags (--tol, --seed, --format, ...) appear after the
  // subcommand name as well as before it.
  for (CLI::App* sub : {ex, t1, th, tw, al, ca}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  cfg.format =
      format == "json" ? qsym::OutputFormat::Json : qsym::OutputFormat::Table;

  try {
    qsym::Report report;
    if (ex->parsed()) {
      report = qsym::example_z3_report(cfg);
    } else if (t1->parsed()) {
      report = qsym::table1_report(cfg, t1_order, t1_systems);
    } else if (th->parsed()) {
      report = qsym::theorem1_report(cfg, corrupt);
    } else if (tw->parsed()) {
      const auto kind = twirl_kind == "weak" ? qsym::SymmetryKind::Weak
                                             : qsym::SymmetryKind::Strong;
      report = qsym::twirl_report(cfg, kind, load_json(twirl_file));
    } else if (al->parsed()) {
      report = qsym::algebra_report(cfg, load_json(gens_file));
    } else {
      report = qsym::charge_access_report(cfg, ca_order, ca_systems);
    }
    std::cout << qsym::render(report, cfg.format);
    return report.value("ok", false) ? 0 : 1;
  } catch (const std::exception& e) {
    qsym::Report err;
    err["schema"] = 1;
    err["error"] = e.what();
    err["ok"] = false;
    std::cout << qsym::render(err, cfg.format);
    return 1;
  }
}
