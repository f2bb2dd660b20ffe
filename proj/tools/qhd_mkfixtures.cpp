// Regenerates the bundled fixture files under a target directory.  The
// committed copies in data/ were produced by this tool; the test suite
// re-runs it and diffs against them.

#include "group_double.hpp"
#include "io.hpp"

#include <fstream>
#include <iostream>

using namespace qhd;

namespace {

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: qhd-mkfixtures <output-dir>\n";
    return 2;
  }
  std::string dir = argv[1];
  Options opt;
  try {
    FiniteGroup z2 = cyclic_group(2), z4 = cyclic_group(4), s3 = symmetric_group_3();
    write_json(group_to_json(z2), dir + "/z2_group.json");
    write_json(group_to_json(z4), dir + "/z4_group.json");
    write_json(group_to_json(s3), dir + "/s3_group.json");

    {
      nlohmann::json j;
      j["kind"] = "cocycle";
      j["family"] = {{"name", "trivial"}};
      write_json(j, dir + "/z2_omega_trivial.json");
    }
    {
      ThreeCocycle w = trivial_cocycle(z2);
      w.values[(std::size_t(1) * 2 + 1) * 2 + 1] = -1.0;
      write_json(cocycle_to_json(w), dir + "/z2_omega_nontrivial.json");
    }
    {
      ThreeCocycle w = trivial_cocycle(z2);
      w.values[(std::size_t(1) * 2 + 1) * 2 + 1] = cplx(0.0, 1.0);
      write_json(cocycle_to_json(w), dir + "/z2_omega_noncocycle.json");
    }
    {
      nlohmann::json j;
      j["kind"] = "cocycle";
      j["family"] = {{"name", "cyclic-standard"}, {"p", 1}};
      write_json(j, dir + "/z4_omega_p1.json");
    }

    SpaceRegistry reg;
    write_json(algebra_to_json(group_algebra_qha(reg, z2), "cz2"), dir + "/cz2_hopf.json");
    write_json(algebra_to_json(group_algebra_qha(reg, s3), "cs3"), dir + "/cs3_hopf.json");
    {
      ThreeCocycle w = trivial_cocycle(z2);
      w.values[(std::size_t(1) * 2 + 1) * 2 + 1] = -1.0;
      write_json(algebra_to_json(fun_qha(reg, z2, w, opt), "funz2_tw"),
                 dir + "/funz2_omega.json");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
