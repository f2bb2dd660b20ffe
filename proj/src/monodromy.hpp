// The monodromy matrix inside the double, the dressed exchange element, and
// the gauged exchange relations.

#pragma once

#include "double_alg.hpp"

namespace qhd {

struct MonodromyData {
  Tensor M;      // G (x) D(G)
  Tensor R_hat;  // G (x) G (x) D(G)
};

// M = (id (x) i_D)(R^op) D;  R_hat = phi^{213} R^{12} phi^-1 with the third
// leg embedded into the double.  Requires a quasitriangular base.
MonodromyData monodromy_matrix(const DoubleAlgebra& da, const Options& opt);

// The three defining relations: counit normalization, commutation with the
// embedded coproduct, and the exchange relation.  `rank_check` additionally
// verifies that phi (x) a -> M(phi) i_D(a) is a linear bijection.
Report verify_monodromy(const DoubleAlgebra& da, const MonodromyData& md, const Options& opt,
                        bool rank_check = true);

// Residual of the exchange relation for an arbitrary candidate in place of M
// (used by the mutation test that drops the R^op factor).
double exchange_residual(const DoubleAlgebra& da, const Tensor& candidate, const Tensor& R_hat);

}  // namespace qhd
