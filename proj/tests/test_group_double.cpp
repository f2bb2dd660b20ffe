#include <doctest.h>

#include "fixtures.hpp"

#include <numbers>

using namespace qhd;

namespace {

// Independent cocycle-identity oracle: plain enumeration over quadruples,
// no Report machinery.
double cocycle_oracle(const FiniteGroup& G, const ThreeCocycle& w) {
  double worst = 0.0;
  for (std::uint32_t g = 0; g < G.order; ++g)
    for (std::uint32_t x = 0; x < G.order; ++x)
      for (std::uint32_t y = 0; y < G.order; ++y)
        for (std::uint32_t z = 0; z < G.order; ++z) {
          cplx v = w.at(g, x, y) * std::conj(w.at(G.mul(g, x), y, z)) * w.at(g, G.mul(x, y), z) *
                   std::conj(w.at(g, x, G.mul(y, z))) * w.at(x, y, z);
          worst = std::max(worst, std::abs(v - cplx(1.0)));
        }
  return worst;
}

}  // namespace

TEST_CASE("group construction and validation") {
  Fixtures fx;
  CHECK(fx.s3.order == 6);
  CHECK(fx.s3.identity == 0);
  std::vector<std::uint32_t> bad = {0, 1, 1, 1};
  CHECK_THROWS_WITH_AS(make_group("bad", 2, std::move(bad)), doctest::Contains("no inverse"),
                       Error);
  std::vector<std::uint32_t> bad2 = {0, 1, 2, 1, 2, 0, 2, 1, 0};
  CHECK_THROWS_WITH_AS(make_group("bad2", 3, std::move(bad2)),
                       doctest::Contains("not associative at triple"), Error);
}

TEST_CASE("cocycle verification") {
  Fixtures fx;
  CHECK(verify_cocycle(fx.z2, trivial_cocycle(fx.z2), fx.opt).all_pass());
  CHECK(verify_cocycle(fx.z2, fx.z2_w(), fx.opt).all_pass());
  CHECK(cocycle_oracle(fx.z2, fx.z2_w()) == 0.0);

  Report bad = verify_cocycle(fx.z2, fx.z2_bad(), fx.opt);
  CHECK_FALSE(bad.all_pass());
  CHECK(bad.find("degree-three cocycle identity")->detail.find("quadruple") != std::string::npos);
  CHECK(cocycle_oracle(fx.z2, fx.z2_bad()) > 0.5);

  // the standard family on cyclic groups up to order six
  for (std::uint32_t n = 2; n <= 6; ++n) {
    FiniteGroup zn = cyclic_group(n);
    for (std::uint32_t p = 0; p < n; ++p) {
      ThreeCocycle w = cyclic_standard_cocycle(zn, p);
      CHECK(verify_cocycle(zn, w, fx.opt).all_pass());
      CHECK(cocycle_oracle(zn, w) < 1e-12);
    }
  }
}

TEST_CASE("the function quasi-Hopf algebra from a cocycle") {
  Fixtures fx;
  QuasiHopf T = fx.funz2_triv();
  CHECK(residual(T.beta, T.unit()) == 0.0);
  CHECK(verify_quasi_hopf(T, fx.opt).all_pass());

  QuasiHopf H = fx.funz2_w();
  CHECK(std::abs(H.beta.at({1}) - cplx(-1.0)) == 0.0);

  Report p4 = verify_quasi_hopf(fx.funz4_w(), fx.opt);
  CHECK(p4.find("pentagon")->residual < 1e-12);

  CHECK_THROWS_AS(fun_qha(fx.reg, fx.z2, fx.z2_bad(), fx.opt), Error);
}

TEST_CASE("the explicit double presentation") {
  Fixtures fx;
  Report rep;
  ExplicitDouble dd = explicit_double(fx.reg, fx.z2, fx.z2_w(), fx.opt, rep);
  CHECK(rep.all_pass());

  // commutation: (e (x) delta_g)(x (x) 1) = (x (x) delta_{x^-1 g x})
  {
    Tensor lhs(fx.reg, {dd.space}), x1(fx.reg, {dd.space});
    lhs.ent[0 * 2 + 1] = 1.0;  // e (x) delta_x
    for (std::uint32_t g = 0; g < 2; ++g) x1.ent[1 * 2 + g] = 1.0;
    Tensor expect(fx.reg, {dd.space});
    expect.ent[1 * 2 + 1] = 1.0;
    CHECK(residual(multiply(lhs, x1), expect) == 0.0);
  }

  // the derived coefficients of (x (x) 1)^2
  CHECK(std::abs(dd.product_coefficient(1, 1, 0) - cplx(1.0)) == 0.0);
  CHECK(std::abs(dd.product_coefficient(1, 1, 1) - cplx(-1.0)) == 0.0);
  {
    Tensor x1(fx.reg, {dd.space});
    for (std::uint32_t g = 0; g < 2; ++g) x1.ent[1 * 2 + g] = 1.0;
    Tensor sq = multiply(x1, x1);
    Tensor expect(fx.reg, {dd.space});
    expect.ent[0 * 2 + 0] = 1.0;   // + (e (x) delta_e)
    expect.ent[0 * 2 + 1] = -1.0;  // - (e (x) delta_x)
    CHECK(residual(sq, expect) == 0.0);
  }
  CHECK(rep.find("generator square coefficients")->detail.find("delta_1=-1") != std::string::npos);

  // trivial cocycle: group-like coproduct of the generators
  Report rep0;
  ExplicitDouble d0 = explicit_double(fx.reg, fx.z2, trivial_cocycle(fx.z2), fx.opt, rep0);
  CHECK(rep0.all_pass());
  for (std::uint32_t g = 0; g < 2; ++g)
    for (const auto& [jk, c] : d0.coproduct.entries[1 * 2 + g])
      CHECK(std::abs(c - cplx(1.0)) == 0.0);
}

TEST_CASE("the explicit presentation agrees with the generic double") {
  Fixtures fx;
  SUBCASE("z2, nontrivial cocycle") {
    Report rep;
    QuasiHopf H = fx.funz2_w();
    DoubleAlgebra da = build_double(H, fx.opt, rep);
    REQUIRE(rep.all_pass());
    Report drep;
    ExplicitDouble dd = explicit_double(fx.reg, fx.z2, fx.z2_w(), fx.opt, drep);
    REQUIRE(drep.all_pass());
    Report srep = sigma_check(fx.z2, fx.z2_w(), da, dd, fx.opt);
    CHECK(srep.all_pass());
  }
  SUBCASE("z2, trivial cocycle") {
    Report rep;
    QuasiHopf H = fx.funz2_triv();
    DoubleAlgebra da = build_double(H, fx.opt, rep);
    REQUIRE(rep.all_pass());
    Report drep;
    ExplicitDouble dd = explicit_double(fx.reg, fx.z2, trivial_cocycle(fx.z2), fx.opt, drep);
    Report srep = sigma_check(fx.z2, trivial_cocycle(fx.z2), da, dd, fx.opt);
    CHECK(srep.all_pass());
  }
  SUBCASE("z4, standard cocycle") {
    Report rep;
    QuasiHopf H = fx.funz4_w();
    DoubleAlgebra da = build_double(H, fx.opt, rep);
    REQUIRE(rep.all_pass());
    Report drep;
    ExplicitDouble dd = explicit_double(fx.reg, fx.z4, cyclic_standard_cocycle(fx.z4, 1), fx.opt, drep);
    REQUIRE(drep.all_pass());
    Report srep = sigma_check(fx.z4, cyclic_standard_cocycle(fx.z4, 1), da, dd, fx.opt);
    CHECK(srep.all_pass());
  }
}

TEST_CASE("a coboundary-shifted cocycle still yields a valid double") {
  Fixtures fx;
  // multiply the nontrivial z2 cocycle by the coboundary of a normalized
  // 2-cochain b(g,h): (db)(g,h,k) = b(h,k) b(g,hk) / (b(gh,k) b(g,h))
  std::vector<cplx> b(4, cplx(1.0));
  b[3] = std::polar(1.0, 1.1);  // b(x,x)
  auto B = [&](std::uint32_t g, std::uint32_t h) { return b[g * 2 + h]; };
  ThreeCocycle w = fx.z2_w();
  for (std::uint32_t g = 0; g < 2; ++g)
    for (std::uint32_t h = 0; h < 2; ++h)
      for (std::uint32_t k = 0; k < 2; ++k)
        w.values[(std::size_t(g) * 2 + h) * 2 + k] *=
            B(h, k) * B(g, fx.z2.mul(h, k)) / (B(fx.z2.mul(g, h), k) * B(g, h));
  REQUIRE(verify_cocycle(fx.z2, w, fx.opt).all_pass());

  QuasiHopf H = fun_qha(fx.reg, fx.z2, w, fx.opt);
  CHECK(verify_quasi_hopf(H, fx.opt).all_pass());
  Report rep;
  DoubleAlgebra da = build_double(H, fx.opt, rep);
  CHECK(rep.all_pass());
  CHECK(verify_quasi_hopf(da.dbl, fx.opt).all_pass());
  CHECK(verify_quasitriangular(da.dbl, fx.opt).all_pass());
}

TEST_CASE("explicit presentation on a nonabelian group") {
  Fixtures fx;
  ThreeCocycle w = trivial_cocycle(fx.s3);
  Report drep;
  ExplicitDouble dd = explicit_double(fx.reg, fx.s3, w, fx.opt, drep);
  CHECK(drep.all_pass());

  // (e (x) delta_g)(x (x) 1) = (x (x) delta_{x^-1 g x}) with g a transposition
  // and x a three-cycle
  const std::uint32_t g = 3, x = 4;  // indices into the fixed enumeration
  std::uint32_t conj = fx.s3.mul(fx.s3.mul(fx.s3.inv(x), g), x);
  CHECK(conj != g);
  Tensor eg(fx.reg, {dd.space}), x1(fx.reg, {dd.space});
  eg.ent[fx.s3.identity * 6 + g] = 1.0;
  for (std::uint32_t t = 0; t < 6; ++t) x1.ent[x * 6 + t] = 1.0;
  Tensor expect(fx.reg, {dd.space});
  expect.ent[x * 6 + conj] = 1.0;
  CHECK(residual(multiply(eg, x1), expect) == 0.0);

  // transport against the generic double of the function algebra
  QuasiHopf H = fun_qha(fx.reg, fx.s3, w, fx.opt);
  Report rep;
  DoubleAlgebra da = build_double(H, fx.opt, rep);
  REQUIRE(rep.all_pass());
  Report srep = sigma_check(fx.s3, w, da, dd, fx.opt);
  CHECK(srep.all_pass());
}
