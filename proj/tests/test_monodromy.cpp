#include <doctest.h>

#include "fixtures.hpp"
#include "monodromy.hpp"

using namespace qhd;

TEST_CASE("monodromy matrix on cocommutative bases with a trivial R-matrix") {
  Fixtures fx;
  for (QuasiHopf H : {fx.cz2(), fx.cs3()}) {
    Report rep;
    DoubleAlgebra da = build_double(H, fx.opt, rep);
    REQUIRE(rep.all_pass());
    MonodromyData md = monodromy_matrix(da, fx.opt);

    // with R = 1 (x) 1 the monodromy matrix is the flip operator itself
    CHECK(residual(md.M, da.D) < 1e-13);
    // and the dressed exchange element collapses
    CHECK(residual(md.R_hat, unit_tensor(fx.reg, md.R_hat.sig)) < 1e-13);

    Report vrep = verify_monodromy(da, md, fx.opt);
    CHECK(vrep.all_pass());
  }
}

TEST_CASE("second-level monodromy over the double of the group algebra of order two") {
  Fixtures fx;
  Report rep0;
  DoubleAlgebra base = build_double(fx.cz2(), fx.opt, rep0);
  REQUIRE(rep0.all_pass());
  REQUIRE(verify_quasitriangular(base.dbl, fx.opt).all_pass());

  Report rep;
  DoubleAlgebra dd = build_double(base.dbl, fx.opt, rep);
  CHECK(rep.all_pass());
  MonodromyData md = monodromy_matrix(dd, fx.opt);
  Report vrep = verify_monodromy(dd, md, fx.opt);
  CHECK(vrep.all_pass());
  CHECK(vrep.find("monodromy generator map is bijective")->pass);
}

TEST_CASE("dropping the R factor breaks the exchange relation on a non-cocommutative base") {
  Fixtures fx;
  Report rep0;
  DoubleAlgebra base = build_double(fx.cs3(), fx.opt, rep0);
  REQUIRE(rep0.all_pass());

  // the base here is the dim-36 double; its own double is only ever needed
  // through lazily evaluated products
  Report rep;
  DoubleAlgebra dd = build_double(base.dbl, fx.opt, rep, /*algebra_only=*/true,
                                  /*lazy_product=*/true);
  CHECK(rep.all_pass());

  MonodromyData md = monodromy_matrix(dd, fx.opt);
  CHECK(exchange_residual(dd, md.M, md.R_hat) < 1e-9);
  // the mutation: the bare flip operator in place of the monodromy matrix
  CHECK(exchange_residual(dd, dd.D, md.R_hat) > 1e-3);
}
