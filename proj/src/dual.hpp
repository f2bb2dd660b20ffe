// The dual object: coassociative coalgebra structure on G^, the transpose
// multiplication (dual to the coproduct, in general non-associative), the
// left/right arrow actions and the dual antipode.

#pragma once

#include "quasi_hopf.hpp"

namespace qhd {

struct DualStructure {
  std::uint32_t dual_space = 0;  // registered with the transpose multiplication
  std::uint32_t primal_space = 0;
  std::uint32_t dim = 0;
  SparseMap2 dual_coproduct;     // transpose of the primal multiplication
  std::vector<cplx> dual_counit; // evaluation at the primal unit
  SparseVec dual_unit;           // the primal counit as an element of the dual
  Mat S_hat, S_hat_inv;          // transposes of S, S^-1

  Tensor basis(const SpaceRegistry& reg, std::uint32_t mu) const {
    return basis_tensor(reg, dual_space, mu);
  }
  Tensor cop(const Tensor& phi) const { return apply_coproduct(phi, 0, dual_coproduct); }
  Tensor cop_leg(const Tensor& t, std::size_t leg) const {
    return apply_coproduct(t, leg, dual_coproduct);
  }
  Tensor s_hat(const Tensor& phi) const { return apply_matrix(phi, 0, S_hat); }
  Tensor s_hat_inv(const Tensor& phi) const { return apply_matrix(phi, 0, S_hat_inv); }
};

// Builds the dual of H and verifies its structural identities into `rep`
// when given: coassociativity (exact, from associativity of the primal
// product), unit laws, multiplicativity of the dual coproduct, and the
// antipode pairing transpose.
DualStructure dual_of(const QuasiHopf& H, const Options& opt, Report* rep = nullptr);

// Left and right arrow actions of the primal algebra on its dual:
//   a -> phi = phi_(1) <phi_(2)|a>,   phi <- a = phi_(2) <phi_(1)|a>.
Tensor act_left(const QuasiHopf& H, const DualStructure& D, const Tensor& a, const Tensor& phi);
Tensor act_right(const QuasiHopf& H, const DualStructure& D, const Tensor& phi, const Tensor& a);

// Arrow actions of the dual on the primal:
//   phi -> a = a_(1) <phi|a_(2)>,   a <- phi = <phi|a_(1)> a_(2).
Tensor harpoon_left(const QuasiHopf& H, const Tensor& phi, const Tensor& a);
Tensor harpoon_right(const QuasiHopf& H, const Tensor& a, const Tensor& phi);

// Two-sided action chi |> a <| psi = <psi|a_(1)> a_(2) <chi|a_(3)> built on
// the iterated coproduct.
Tensor two_sided_action(const QuasiHopf& H, const Tensor& chi, const Tensor& a, const Tensor& psi);

// Module-algebra identities for the arrows and the commutation of the two
// actions; plus the exact identity between the dual associator and the
// coassociativity defect of the primal coproduct.
Report verify_dual(const QuasiHopf& H, const DualStructure& D, const Options& opt);

}  // namespace qhd
