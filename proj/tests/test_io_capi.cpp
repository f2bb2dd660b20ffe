#include <doctest.h>

#include "fixtures.hpp"
#include "io.hpp"

#include <qhd/qhd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using namespace qhd;

namespace {

const std::string kData = QHD_DATA_DIR;
const std::string kCli = QHD_CLI_PATH;

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/qhd_test_") + std::to_string(::getpid()) + "_" + name;
}

int run_cli(const std::string& args) {
  std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("bundled fixtures load and validate") {
  FiniteGroup z2 = load_group(kData + "/z2_group.json");
  CHECK(z2.order == 2);
  FiniteGroup s3 = load_group(kData + "/s3_group.json");
  CHECK(s3.order == 6);

  Options opt;
  ThreeCocycle w = load_cocycle(z2, kData + "/z2_omega_nontrivial.json");
  CHECK(verify_cocycle(z2, w, opt).all_pass());
  ThreeCocycle bad = load_cocycle(z2, kData + "/z2_omega_noncocycle.json");
  CHECK_FALSE(verify_cocycle(z2, bad, opt).all_pass());

  SpaceRegistry reg;
  QuasiHopf H = load_algebra(reg, kData + "/funz2_omega.json");
  CHECK(verify_quasi_hopf(H, opt).all_pass());
}

TEST_CASE("broken tables are rejected with the offending data named") {
  std::string p = tmp_path("badgroup.json");
  {
    std::ofstream out(p);
    out << R"({"kind":"group","name":"broken","order":3,
               "table":[[0,1,2],[1,2,0],[2,1,0]]})";
  }
  CHECK_THROWS_WITH_AS(load_group(p), doctest::Contains("not associative at triple"), Error);
  std::remove(p.c_str());

  CHECK_THROWS_AS(load_group(kData + "/cz2_hopf.json"), IoError);  // wrong kind
}

TEST_CASE("export and reload reproduce identical verdicts") {
  Fixtures fx;
  Report rep;
  DoubleAlgebra da = build_double(fx.funz2_w(), fx.opt, rep);
  REQUIRE(rep.all_pass());

  std::string p = tmp_path("double.json");
  export_algebra_sc_json(da.dbl, "dfz2", p);

  SpaceRegistry reg2;
  QuasiHopf back = load_algebra(reg2, p);
  Report a = verify_quasi_hopf(da.dbl, fx.opt);
  Report b = verify_quasi_hopf(back, fx.opt);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].pass == b.checks[i].pass);
  }
  Report aq = verify_quasitriangular(da.dbl, fx.opt);
  Report bq = verify_quasitriangular(back, fx.opt);
  REQUIRE(aq.checks.size() == bq.checks.size());
  for (std::size_t i = 0; i < aq.checks.size(); ++i) CHECK(aq.checks[i].pass == bq.checks[i].pass);
  std::remove(p.c_str());

  // reloading without the optional inverse records still works
  {
    std::string p2 = tmp_path("noinv.json");
    nlohmann::json j = algebra_to_json(da.dbl, "dfz2");
    j.erase("phi_inv");
    j.erase("r_matrix_inv");
    std::ofstream out(p2);
    out << j.dump();
    out.close();
    SpaceRegistry reg3;
    QuasiHopf solved = load_algebra(reg3, p2);
    CHECK(verify_quasi_hopf(solved, fx.opt).all_pass());
    CHECK(verify_quasitriangular(solved, fx.opt).all_pass());
    std::remove(p2.c_str());
  }
}

TEST_CASE("C API round trip") {
  qhd_options opts;
  qhd_options_init(&opts);
  CHECK(opts.tol == 1e-9);

  qhd_algebra* a = nullptr;
  REQUIRE(qhd_algebra_load((kData + "/cz2_hopf.json").c_str(), &a) == QHD_OK);
  CHECK(qhd_algebra_dim(a) == 2);
  CHECK(qhd_algebra_has_rmatrix(a) == 1);

  qhd_report* rep = nullptr;
  REQUIRE(qhd_verify(a, &opts, &rep) == QHD_OK);
  CHECK(qhd_report_all_pass(rep) == 1);
  CHECK(qhd_report_count(rep) > 20);
  char* jsonl = qhd_report_to_jsonl(rep);
  REQUIRE(jsonl != nullptr);
  CHECK(std::string(jsonl).find("\"anchor\"") != std::string::npos);
  qhd_string_free(jsonl);
  qhd_report_free(rep);

  qhd_report* drep = nullptr;
  qhd_algebra* dbl = nullptr;
  REQUIRE(qhd_double_build(a, &opts, &dbl, &drep) == QHD_OK);
  CHECK(qhd_report_all_pass(drep) == 1);
  CHECK(qhd_algebra_dim(dbl) == 4);
  qhd_report_free(drep);

  qhd_report* mrep = nullptr;
  REQUIRE(qhd_monodromy(dbl, &opts, &mrep) == QHD_OK);
  CHECK(qhd_report_all_pass(mrep) == 1);
  qhd_report_free(mrep);
  qhd_algebra_free(dbl);
  qhd_algebra_free(a);

  qhd_algebra* missing = nullptr;
  CHECK(qhd_algebra_load("/nonexistent/file.json", &missing) == QHD_ERR_IO);
  CHECK(std::string(qhd_last_error()).find("cannot open") != std::string::npos);
}

TEST_CASE("C API twisted-double pipeline") {
  qhd_options opts;
  qhd_options_init(&opts);
  qhd_group* g = nullptr;
  REQUIRE(qhd_group_load((kData + "/z2_group.json").c_str(), &g) == QHD_OK);
  CHECK(qhd_group_order(g) == 2);
  qhd_cocycle* w = nullptr;
  REQUIRE(qhd_cocycle_load(g, (kData + "/z2_omega_nontrivial.json").c_str(), &w) == QHD_OK);

  qhd_report* rep = nullptr;
  qhd_algebra* dbl = nullptr;
  REQUIRE(qhd_twisted_double(g, w, &opts, &dbl, &rep) == QHD_OK);
  CHECK(qhd_report_all_pass(rep) == 1);
  CHECK(qhd_algebra_dim(dbl) == 4);

  bool saw_square = false;
  for (std::size_t i = 0; i < qhd_report_count(rep); ++i)
    if (std::string(qhd_report_check_anchor(rep, i)) == "explicit-double.generator-product") {
      saw_square = true;
      CHECK(std::string(qhd_report_check_detail(rep, i)).find("delta_1=-1") != std::string::npos);
    }
  CHECK(saw_square);
  qhd_report_free(rep);
  qhd_algebra_free(dbl);
  qhd_cocycle_free(w);
  qhd_group_free(g);
}

TEST_CASE("command-line surface") {
  CHECK(run_cli("verify " + kData + "/cz2_hopf.json") == 0);
  CHECK(run_cli("verify " + kData + "/funz2_omega.json --tol 1e-9") == 0);
  CHECK(run_cli("twisted-double " + kData + "/z2_group.json " + kData +
                "/z2_omega_nontrivial.json") == 0);
  CHECK(run_cli("twisted-double " + kData + "/z2_group.json " + kData +
                "/z2_omega_noncocycle.json") == 1);
  CHECK(run_cli("monodromy " + kData + "/cz2_hopf.json") == 0);
  CHECK(run_cli("verify /nonexistent.json") == 2);
  CHECK(run_cli("nonsense") != 0);

  // a corrupted reassociator is caught and the pentagon is named
  std::string p = tmp_path("corrupt.json");
  {
    SpaceRegistry reg;
    Options opt;
    QuasiHopf H = load_algebra(reg, kData + "/funz2_omega.json");
    nlohmann::json j = algebra_to_json(H, "corrupt");
    j["phi"][7]["im"] = 1.0;  // the (x,x,x) entry stops being a cocycle value
    j["phi"][7]["re"] = 0.0;
    j.erase("phi_inv");
    std::ofstream out(p);
    out << j.dump();
  }
  std::string report = tmp_path("report.jsonl");
  CHECK(run_cli("double " + p + " --report " + report) == 1);
  {
    std::ifstream in(report);
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(all.find("\"anchor\":\"qh.pentagon\",\"check\":\"pentagon\",") != std::string::npos);
    CHECK(all.find("\"pass\":false") != std::string::npos);
  }
  std::remove(p.c_str());
  std::remove(report.c_str());

  // export of the double, then re-verify through the CLI
  std::string d = tmp_path("exported.json");
  CHECK(run_cli("double " + kData + "/funz2_omega.json --export " + d) == 0);
  CHECK(run_cli("verify " + d) == 0);
  CHECK(run_cli("export " + d + " -o " + d + ".2 --format sc-json") == 0);
  std::remove((d + ".2").c_str());
  std::remove(d.c_str());
}

TEST_CASE("regenerated fixture files match the committed ones") {
  // keeps data/ reproducible from the generator tool
  std::string dir = tmp_path("fixdir");
  std::string mk = std::string(QHD_CLI_PATH);
  mk = mk.substr(0, mk.find_last_of('/')) + "/qhd-mkfixtures";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  REQUIRE(std::system((mk + " " + dir).c_str()) == 0);
  for (const char* f : {"z2_group.json", "z4_group.json", "s3_group.json", "cz2_hopf.json",
                        "cs3_hopf.json", "funz2_omega.json", "z2_omega_trivial.json",
                        "z2_omega_nontrivial.json", "z2_omega_noncocycle.json",
                        "z4_omega_p1.json"}) {
    std::ifstream a(kData + "/" + f), b(dir + "/" + f);
    REQUIRE(a.good());
    REQUIRE(b.good());
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
  }
  REQUIRE(std::system(("rm -rf " + dir).c_str()) == 0);
}

TEST_CASE("monodromy requires a quasitriangular input") {
  qhd_options opts;
  qhd_options_init(&opts);
  qhd_algebra* a = nullptr;
  REQUIRE(qhd_algebra_load((kData + "/funz2_omega.json").c_str(), &a) == QHD_OK);
  CHECK(qhd_algebra_has_rmatrix(a) == 0);
  qhd_report* rep = nullptr;
  CHECK(qhd_monodromy(a, &opts, &rep) == QHD_ERR_INVALID);
  CHECK(std::string(qhd_last_error()).find("R-matrix") != std::string::npos);
  qhd_algebra_free(a);
}
