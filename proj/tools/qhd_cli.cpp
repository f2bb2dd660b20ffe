// Command-line front end over the shared-library C API.
//
// Exit codes: 0 all checks pass, 1 a check failed or a load-time invariant
// was violated, 2 I/O or parse error.

#include <qhd/qhd.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

struct CommonOpts {
  double tol = 1e-9;
  std::uint64_t seed = 20226;
  bool force_deep = false;
  std::string report_path;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--tol", c.tol, "verdict tolerance")->capture_default_str();
  cmd->add_option("--seed", c.seed, "seed for randomized spot checks")->capture_default_str();
  cmd->add_flag("--force-deep-checks", c.force_deep,
                "run the gated high-dimension coherence checks");
  cmd->add_option("--report", c.report_path, "also write the report to this file");
}

qhd_options make_options(const CommonOpts& c) {
  qhd_options o;
  qhd_options_init(&o);
  o.tol = c.tol;
  o.seed = c.seed;
  o.force_deep_checks = c.force_deep ? 1 : 0;
  return o;
}

int emit_report(qhd_report* rep, const CommonOpts& c) {
  char* jsonl = qhd_report_to_jsonl(rep);
  if (jsonl) {
    std::fputs(jsonl, stdout);
    if (!c.report_path.empty()) {
      std::ofstream out(c.report_path);
      out << jsonl;
    }
    qhd_string_free(jsonl);
  }
  int rc = qhd_report_all_pass(rep) ? 0 : 1;
  qhd_report_free(rep);
  return rc;
}

int fail_with(qhd_status st) {
  std::cerr << "error: " << qhd_last_error() << "\n";
  return (st == QHD_ERR_IO || st == QHD_ERR_PARSE) ? 2 : 1;
}

using AlgebraPtr = std::unique_ptr<qhd_algebra, decltype(&qhd_algebra_free)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification kernel for quasitriangular quasi-Hopf doubles"};
  app.require_subcommand(1);

  CommonOpts copt;
  std::string algebra_path, group_path, cocycle_path, export_path, format = "sc-json";
  bool export_double = false;

  CLI::App* verify = app.add_subcommand("verify", "run the full axiom suite on an algebra file");
  verify->add_option("algebra", algebra_path, "algebra file (sc-json)")->required();
  add_common(verify, copt);

  CLI::App* dbl = app.add_subcommand("double", "build and verify the double of an algebra");
  dbl->add_option("algebra", algebra_path, "algebra file (sc-json)")->required();
  dbl->add_option("--export", export_path, "write the constructed double as sc-json");
  add_common(dbl, copt);

  CLI::App* twisted =
      app.add_subcommand("twisted-double", "cocycle pipeline over a finite group");
  twisted->add_option("group", group_path, "group file")->required();
  twisted->add_option("cocycle", cocycle_path, "cocycle file (table or named family)")->required();
  twisted->add_option("--export", export_path, "write the constructed double as sc-json");
  add_common(twisted, copt);

  CLI::App* mono = app.add_subcommand("monodromy", "monodromy relations over the double");
  mono->add_option("algebra", algebra_path, "quasitriangular algebra file")->required();
  add_common(mono, copt);

  CLI::App* exp = app.add_subcommand("export", "re-emit structure constants of a built algebra");
  exp->add_option("algebra", algebra_path, "algebra file")->required();
  exp->add_option("-o,--output", export_path, "output path")->required();
  exp->add_option("--format", format, "output format")->capture_default_str();
  exp->add_flag("--double", export_double, "export the constructed double instead of the input");
  add_common(exp, copt);

  CLI11_PARSE(app, argc, argv);
  qhd_options opts = make_options(copt);

  if (verify->parsed()) {
    qhd_algebra* a = nullptr;
    if (qhd_status st = qhd_algebra_load(algebra_path.c_str(), &a); st != QHD_OK)
      return fail_with(st);
    AlgebraPtr guard(a, &qhd_algebra_free);
    qhd_report* rep = nullptr;
    if (qhd_status st = qhd_verify(a, &opts, &rep); st != QHD_OK) return fail_with(st);
    return emit_report(rep, copt);
  }

  if (dbl->parsed()) {
    qhd_algebra* a = nullptr;
    if (qhd_status st = qhd_algebra_load(algebra_path.c_str(), &a); st != QHD_OK)
      return fail_with(st);
    AlgebraPtr guard(a, &qhd_algebra_free);
    qhd_report* rep = nullptr;
    qhd_algebra* d = nullptr;
    if (qhd_status st = qhd_double_build(a, &opts, &d, &rep); st != QHD_OK) return fail_with(st);
    AlgebraPtr dguard(d, &qhd_algebra_free);
    if (!export_path.empty() && d) {
      if (qhd_status st = qhd_algebra_export(d, nullptr, export_path.c_str()); st != QHD_OK) {
        qhd_report_free(rep);
        return fail_with(st);
      }
    }
    return emit_report(rep, copt);
  }

  if (twisted->parsed()) {
    qhd_group* g = nullptr;
    if (qhd_status st = qhd_group_load(group_path.c_str(), &g); st != QHD_OK)
      return fail_with(st);
    std::unique_ptr<qhd_group, decltype(&qhd_group_free)> gguard(g, &qhd_group_free);
    qhd_cocycle* w = nullptr;
    if (qhd_status st = qhd_cocycle_load(g, cocycle_path.c_str(), &w); st != QHD_OK)
      return fail_with(st);
    std::unique_ptr<qhd_cocycle, decltype(&qhd_cocycle_free)> wguard(w, &qhd_cocycle_free);
    qhd_report* rep = nullptr;
    qhd_algebra* d = nullptr;
    if (qhd_status st = qhd_twisted_double(g, w, &opts, &d, &rep); st != QHD_OK)
      return fail_with(st);
    AlgebraPtr dguard(d, &qhd_algebra_free);
    if (!export_path.empty() && d) {
      if (qhd_status st = qhd_algebra_export(d, nullptr, export_path.c_str()); st != QHD_OK) {
        qhd_report_free(rep);
        return fail_with(st);
      }
    }
    return emit_report(rep, copt);
  }

  if (mono->parsed()) {
    qhd_algebra* a = nullptr;
    if (qhd_status st = qhd_algebra_load(algebra_path.c_str(), &a); st != QHD_OK)
      return fail_with(st);
    AlgebraPtr guard(a, &qhd_algebra_free);
    qhd_report* rep = nullptr;
    if (qhd_status st = qhd_monodromy(a, &opts, &rep); st != QHD_OK) return fail_with(st);
    return emit_report(rep, copt);
  }

  if (exp->parsed()) {
    if (format != "sc-json") {
      std::cerr << "error: unknown format " << format << "\n";
      return 2;
    }
    qhd_algebra* a = nullptr;
    if (qhd_status st = qhd_algebra_load(algebra_path.c_str(), &a); st != QHD_OK)
      return fail_with(st);
    AlgebraPtr guard(a, &qhd_algebra_free);
    if (export_double) {
      qhd_report* rep = nullptr;
      qhd_algebra* d = nullptr;
      if (qhd_status st = qhd_double_build(a, &opts, &d, &rep); st != QHD_OK)
        return fail_with(st);
      AlgebraPtr dguard(d, &qhd_algebra_free);
      int rc = qhd_report_all_pass(rep) ? 0 : 1;
      qhd_report_free(rep);
      if (rc != 0 || !d) return rc ? rc : 1;
      if (qhd_status st = qhd_algebra_export(d, nullptr, export_path.c_str()); st != QHD_OK)
        return fail_with(st);
      return 0;
    }
    if (qhd_status st = qhd_algebra_export(a, nullptr, export_path.c_str()); st != QHD_OK)
      return fail_with(st);
    return 0;
  }
  return 2;
}
