#include <doctest.h>

#include "fixtures.hpp"

#include <random>

using namespace qhd;

namespace {

// Independent pentagon oracle for function algebras with a diagonal
// reassociator: on the delta-function basis both sides of the pentagon
// reduce to products of cocycle values, evaluated here by direct
// enumeration with no tensor machinery involved.
double pentagon_oracle(const FiniteGroup& G, const ThreeCocycle& w) {
  double worst = 0.0;
  for (std::uint32_t a = 0; a < G.order; ++a)
    for (std::uint32_t b = 0; b < G.order; ++b)
      for (std::uint32_t c = 0; c < G.order; ++c)
        for (std::uint32_t d = 0; d < G.order; ++d) {
          cplx lhs = w.at(a, b, G.mul(c, d)) * w.at(G.mul(a, b), c, d);
          cplx rhs = w.at(b, c, d) * w.at(a, G.mul(b, c), d) * w.at(a, b, c);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

QuasiHopf with_bad_reassociator(Fixtures& fx, const ThreeCocycle& w) {
  QuasiHopf H = fx.funz2_triv();
  for (std::uint32_t g = 0; g < 2; ++g)
    for (std::uint32_t h = 0; h < 2; ++h)
      for (std::uint32_t k = 0; k < 2; ++k) {
        std::uint64_t key = (std::uint64_t(g) * 2 + h) * 2 + k;
        H.phi.ent[key] = w.at(g, h, k);
        H.phi_inv.ent[key] = cplx(1.0) / w.at(g, h, k);
      }
  return H;
}

}  // namespace

TEST_CASE("ordinary Hopf fixtures pass the full axiom suite with zero residual") {
  Fixtures fx;
  for (QuasiHopf H : {fx.cz2(), fx.cs3()}) {
    Report rep = verify_quasi_hopf(H, fx.opt);
    CHECK(rep.all_pass());
    CHECK(rep.worst_residual() == 0.0);
  }
}

TEST_CASE("twisted function algebras pass; the pentagon matches the enumeration oracle") {
  Fixtures fx;
  CHECK(pentagon_oracle(fx.z2, fx.z2_w()) == 0.0);
  CHECK(pentagon_oracle(fx.z4, cyclic_standard_cocycle(fx.z4, 1)) < 1e-12);

  QuasiHopf H = fx.funz2_w();
  Report rep = verify_quasi_hopf(H, fx.opt);
  CHECK(rep.all_pass());

  // the derived antipode element: beta = delta_e - delta_x
  CHECK(std::abs(H.beta.at({0}) - cplx(1.0)) == 0.0);
  CHECK(std::abs(H.beta.at({1}) - cplx(-1.0)) == 0.0);

  Report rep4 = verify_quasi_hopf(fx.funz4_w(), fx.opt);
  CHECK(rep4.all_pass());
}

TEST_CASE("a non-cocycle reassociator fails exactly the pentagon") {
  Fixtures fx;
  ThreeCocycle bad = fx.z2_bad();
  double oracle = pentagon_oracle(fx.z2, bad);
  CHECK(oracle > 0.5);

  QuasiHopf H = with_bad_reassociator(fx, bad);
  Report rep = verify_quasi_hopf(H, fx.opt);
  const Check* pent = rep.find("pentagon");
  REQUIRE(pent != nullptr);
  CHECK_FALSE(pent->pass);
  CHECK(pent->residual == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("pruning does not change verdicts") {
  Fixtures fx;
  QuasiHopf H = fx.funz2_w();
  Options strict = fx.opt;
  strict.prune = 0.0;
  Report a = verify_quasi_hopf(H, fx.opt);
  Report b = verify_quasi_hopf(H, strict);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].pass == b.checks[i].pass);
}

TEST_CASE("quasitriangular suite") {
  Fixtures fx;
  for (QuasiHopf H : {fx.cz2(), fx.cs3(), fx.funz2_triv()}) {
    Report rep = verify_quasitriangular(H, fx.opt);
    CHECK(rep.all_pass());
  }

  // a deliberately skewed coproduct breaks the intertwining law
  QuasiHopf H = fx.cs3();
  Mat conj = Mat::Zero(6, 6);
  for (std::uint32_t g = 0; g < 6; ++g) conj(fx.s3.mul(fx.s3.mul(1, g), 1), g) = 1.0;
  SparseMap2 skew = H.coproduct;
  for (std::uint32_t g = 0; g < 6; ++g) {
    skew.entries[g].clear();
    skew.entries[g].push_back({{g, fx.s3.mul(fx.s3.mul(1, g), fx.s3.inv(1))}, cplx(1.0)});
  }
  H.coproduct = skew;
  Report rep = verify_quasitriangular(H, fx.opt);
  const Check* c = rep.find("R intertwines coproducts");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
}

TEST_CASE("derived twists") {
  Fixtures fx;
  {
    QuasiHopf H = fx.cs3();
    Report rep;
    DerivedElements dt = derived_twists(H, fx.opt, rep);
    CHECK(rep.all_pass());
    CHECK(residual(dt.gamma, H.unit_n(2)) == 0.0);
    CHECK(residual(dt.delta_el, H.unit_n(2)) == 0.0);
    CHECK(residual(dt.f, H.unit_n(2)) == 0.0);
  }
  {
    QuasiHopf H = fx.funz2_w();
    Report rep;
    derived_twists(H, fx.opt, rep);
    CHECK(rep.all_pass());
    const Check* c = rep.find("f Delta(alpha) = gamma");
    REQUIRE(c != nullptr);
    CHECK(c->residual == 0.0);
  }
  {
    Report rep;
    derived_twists(fx.funz4_w(), fx.opt, rep);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("p/q elements and their identities") {
  Fixtures fx;
  {
    QuasiHopf H = fx.cz2();
    Report rep;
    PQElements pq = pq_elements(H, fx.opt, rep);
    CHECK(rep.all_pass());
    for (const Tensor* t : {&pq.p_lambda, &pq.p_rho, &pq.q_lambda, &pq.q_rho})
      CHECK(residual(*t, H.unit_n(2)) == 0.0);
  }
  {
    QuasiHopf H = fx.funz2_w();
    Report rep;
    PQElements pq = pq_elements(H, fx.opt, rep);
    CHECK(rep.all_pass());
    // q_rho evaluated directly from the reassociator data: on the diagonal
    // function algebra it collapses to sum_{x,y} omega(x,y,y^-1) d_x (x) d_y;
    // checked against an explicit two-index enumeration.
    ThreeCocycle w = fx.z2_w();
    Tensor expect(fx.reg, H.legs(2));
    for (std::uint32_t x = 0; x < 2; ++x)
      for (std::uint32_t y = 0; y < 2; ++y)
        expect.accumulate(expect.strides[0] * x + y, w.at(x, y, fx.z2.inv(y)));
    CHECK(residual(pq.q_rho, expect) < 1e-14);
    CHECK(rep.find("rho contraction (p through q)")->residual < 1e-12);
    CHECK(rep.find("q_lambda commutation")->residual < 1e-12);
  }
  {
    Report rep;
    pq_elements(fx.funz4_w(), fx.opt, rep);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("the contraction identities fail exactly when the zig-zag fails") {
  Fixtures fx;
  QuasiHopf H = fx.funz2_w();
  H.beta = scale(H.beta, cplx(0.0, 1.0));  // corrupt beta
  Report qh = verify_quasi_hopf(H, fx.opt);
  const Check* zig = qh.find("antipode zig-zag (reassociator)");
  REQUIRE(zig != nullptr);
  CHECK_FALSE(zig->pass);

  Report pqrep;
  pq_elements(H, fx.opt, pqrep);
  CHECK_FALSE(pqrep.all_pass());
  CHECK_FALSE(pqrep.find("rho contraction (p through q)")->pass);
}

TEST_CASE("twist transformations") {
  Fixtures fx;
  QuasiHopf H = fx.funz2_w();

  // identity twist leaves everything unchanged
  QuasiHopf T = apply_twist(H, H.unit_n(2), H.unit_n(2), fx.opt);
  CHECK(residual(T.phi, H.phi) < 1e-14);
  CHECK(residual(T.alpha, H.alpha) < 1e-14);

  // explicit unit-modulus twist, rows/columns normalized at the identity
  Tensor F(fx.reg, H.legs(2)), Fi(fx.reg, H.legs(2));
  auto put = [&](std::uint32_t g, std::uint32_t h, cplx c) {
    F.ent[F.strides[0] * g + h] = c;
    Fi.ent[F.strides[0] * g + h] = cplx(1.0) / c;
  };
  put(0, 0, 1.0);
  put(0, 1, 1.0);
  put(1, 0, 1.0);
  put(1, 1, std::polar(1.0, 0.7));
  QuasiHopf TF = apply_twist(H, F, Fi, fx.opt);
  CHECK(verify_quasi_hopf(TF, fx.opt).all_pass());

  // twist of a twist composes along the product
  std::mt19937_64 rng(fx.opt.seed);
  auto [F1, F1i] = random_admissible_twist(H, rng, fx.opt);
  auto [F2, F2i] = random_admissible_twist(H, rng, fx.opt);
  QuasiHopf step = apply_twist(apply_twist(H, F1, F1i, fx.opt), F2, F2i, fx.opt);
  QuasiHopf direct = apply_twist(H, multiply(F2, F1), multiply(F1i, F2i), fx.opt);
  CHECK(residual(step.phi, direct.phi) < 1e-10);
  CHECK(residual(step.alpha, direct.alpha) < 1e-10);
  CHECK(residual(step.beta, direct.beta) < 1e-10);
  for (std::uint32_t i = 0; i < H.dim; ++i) {
    Tensor a(fx.reg, {H.space});
    a.ent[i] = 1.0;
    CHECK(residual(step.delta(a), direct.delta(a)) < 1e-10);
  }

  // non-normalized twists are rejected
  Tensor badF = scale(H.unit_n(2), 2.0);
  CHECK_THROWS_AS(apply_twist(H, badF, scale(H.unit_n(2), 0.5), fx.opt), Error);
}

TEST_CASE("opposite and co-opposite structures") {
  Fixtures fx;
  {
    QuasiHopf H = fx.funz2_w();
    Variants v = variants(H);
    CHECK(verify_quasi_hopf(v.op, fx.opt).all_pass());
    CHECK(verify_quasi_hopf(v.cop, fx.opt).all_pass());
    CHECK(verify_quasi_hopf(v.op_cop, fx.opt).all_pass());

    // alpha_op = S^-1(beta), compared entrywise across the two spaces
    auto resigned = [&](Tensor t, std::uint32_t space) {
      for (auto& sp : t.sig) sp = space;
      return t;
    };
    CHECK(residual(v.op.alpha, resigned(H.s_inv_of(H.beta), v.op.space)) < 1e-14);

    // applying op twice reproduces the original data
    Variants vv = variants(v.op);
    CHECK(residual(vv.op.phi, resigned(H.phi, vv.op.space)) < 1e-14);
    for (std::uint32_t i = 0; i < H.dim; ++i)
      for (std::uint32_t j = 0; j < H.dim; ++j) {
        Tensor a = from_sparse(fx.reg, vv.op.space, fx.reg.product(vv.op.space, i, j));
        Tensor b = from_sparse(fx.reg, vv.op.space, fx.reg.product(H.space, i, j));
        CHECK(residual(a, b) == 0.0);
      }
  }
  {
    QuasiHopf H = fx.cs3();
    Variants v = variants(H);
    CHECK(verify_quasitriangular(v.op, fx.opt).all_pass());
    CHECK(verify_quasitriangular(v.cop, fx.opt).all_pass());
    CHECK(verify_quasitriangular(v.op_cop, fx.opt).all_pass());
  }
}

TEST_CASE("closed-form inverse of the R-matrix on the Hopf fixtures") {
  Fixtures fx;
  QuasiHopf H = fx.cz2();
  Report rep;
  Tensor Ri = r_inverse_formula(H, fx.opt, rep);
  CHECK(rep.all_pass());
  CHECK(residual(Ri, H.unit_n(2)) < 1e-14);

  Report img = antipode_image_check(H, fx.opt);
  CHECK(img.all_pass());
}

TEST_CASE("a non-unital coproduct is rejected with the weak case named") {
  Fixtures fx;
  QuasiHopf H = fx.funz2_triv();
  H.coproduct.entries[0].pop_back();  // Delta(1) loses a term
  Report rep = verify_quasi_hopf(H, fx.opt);
  const Check* c = rep.find("coproduct unital");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
  CHECK(c->detail.find("weak case") != std::string::npos);
}

TEST_CASE("the pentagon gate is liftable") {
  Fixtures fx;
  QuasiHopf H = fx.cz2();
  Options gated = fx.opt;
  gated.double_pentagon_dim_gate = 1;  // force the skip path even at dim 2
  Report skipped = verify_quasi_hopf(H, gated);
  CHECK(skipped.find("pentagon")->detail.find("skipped") != std::string::npos);
  gated.force_deep_checks = true;
  Report forced = verify_quasi_hopf(H, gated);
  CHECK(forced.find("pentagon")->detail.empty());
}
