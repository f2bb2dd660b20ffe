#pragma once

#include "group_double.hpp"

#include <memory>

// Shared fixture algebras.  Each Fixtures instance owns one registry, so
// tests stay independent of each other.
struct Fixtures {
  qhd::SpaceRegistry reg;
  qhd::Options opt;

  qhd::FiniteGroup z2 = qhd::cyclic_group(2);
  qhd::FiniteGroup z4 = qhd::cyclic_group(4);
  qhd::FiniteGroup s3 = qhd::symmetric_group_3();

  qhd::ThreeCocycle z2_w() const {
    auto w = qhd::trivial_cocycle(z2);
    w.values[(std::size_t(1) * 2 + 1) * 2 + 1] = -1.0;
    return w;
  }
  qhd::ThreeCocycle z2_bad() const {
    auto w = qhd::trivial_cocycle(z2);
    w.values[(std::size_t(1) * 2 + 1) * 2 + 1] = qhd::cplx(0.0, 1.0);
    return w;
  }

  qhd::QuasiHopf cz2() { return qhd::group_algebra_qha(reg, z2); }
  qhd::QuasiHopf cs3() { return qhd::group_algebra_qha(reg, s3); }
  qhd::QuasiHopf funz2_triv() { return qhd::fun_qha(reg, z2, qhd::trivial_cocycle(z2), opt); }
  qhd::QuasiHopf funz2_w() { return qhd::fun_qha(reg, z2, z2_w(), opt); }
  qhd::QuasiHopf funz4_w(std::uint32_t p = 1) {
    return qhd::fun_qha(reg, z4, qhd::cyclic_standard_cocycle(z4, p), opt);
  }
};
