// Quasi-Hopf structure container and the derived-element machinery:
// reassociator axioms, antipode data, quasitriangular structure, the
// gamma/delta/f/h twists and the four p/q elements.

#pragma once

#include "report.hpp"
#include "tensor.hpp"

#include <optional>
#include <random>

namespace qhd {

struct QuasiHopf {
  SpaceRegistry* reg = nullptr;
  std::uint32_t space = 0;  // registered algebra
  std::uint32_t dim = 0;
  SparseMap2 coproduct;       // Delta(e_i)
  std::vector<cplx> counit;   // eps(e_i)
  Tensor phi, phi_inv;        // three legs
  Mat S, S_inv;               // antipode and its inverse, dense
  Tensor alpha, beta;         // one leg each
  std::optional<Tensor> R, R_inv;

  bool quasitriangular() const { return R.has_value(); }
  std::vector<std::uint32_t> legs(std::size_t n) const {
    return std::vector<std::uint32_t>(n, space);
  }
  Tensor unit() const { return unit_tensor(*reg, {space}); }
  Tensor unit_n(std::size_t n) const { return unit_tensor(*reg, legs(n)); }
  Tensor basis(std::uint32_t i) const { return basis_tensor(*reg, space, i); }
  Tensor delta(const Tensor& a) const { return apply_coproduct(a, 0, coproduct); }
  Tensor delta_op(const Tensor& a) const;                 // flip of delta
  Tensor delta_leg(const Tensor& t, std::size_t leg) const {
    return apply_coproduct(t, leg, coproduct);
  }
  cplx eps_of(const Tensor& a) const;  // counit of a one-leg element
  Tensor s_of(const Tensor& a) const { return apply_matrix(a, 0, S); }
  Tensor s_inv_of(const Tensor& a) const { return apply_matrix(a, 0, S_inv); }
  Tensor mul(const Tensor& a, const Tensor& b) const { return multiply(a, b); }
  // psi^{n_1...n_m} placement, one-based positions as in superscripts.
  Tensor place(const Tensor& psi, std::initializer_list<int> slots, std::size_t nlegs) const;
};

// Builds a quasi-Hopf algebra from raw data: registers the algebra and sanity
// checks arities.  phi_inv/R_inv may be empty tensors, in which case they are
// obtained by a dense product-algebra solve.
QuasiHopf make_quasi_hopf(SpaceRegistry& reg, std::string name, std::uint32_t dim,
                          std::vector<SparseVec> table, SparseVec unit, SparseMap2 coproduct,
                          std::vector<cplx> counit, Tensor phi, std::optional<Tensor> phi_inv,
                          Mat S, Tensor alpha, Tensor beta,
                          std::optional<Tensor> R = std::nullopt,
                          std::optional<Tensor> R_inv = std::nullopt);

// Full structural + axiom suite (reassociator, counits, antipode).
Report verify_quasi_hopf(const QuasiHopf& H, const Options& opt);

// R-matrix suite: intertwining, both coproduct hexagons, the quasi
// Yang-Baxter identity, counit normalization, invertibility.
Report verify_quasitriangular(const QuasiHopf& H, const Options& opt);

struct DerivedElements {
  Tensor gamma, delta_el;   // the two canonical G(x)G elements
  Tensor f, f_inv;          // the antipode-coproduct twist
  Tensor h, h_inv;          // (S^-1 (x) S^-1)(f^21) and its inverse
};
DerivedElements derived_twists(const QuasiHopf& H, const Options& opt, Report& rep);

struct PQElements {
  Tensor p_lambda, p_rho, q_lambda, q_rho;
};
PQElements pq_elements(const QuasiHopf& H, const Options& opt, Report& rep);
PQElements pq_elements_raw(const QuasiHopf& H);  // no checks

// Twist transformation by an invertible, counit-normalized F.
QuasiHopf apply_twist(const QuasiHopf& H, const Tensor& F, const Tensor& F_inv,
                      const Options& opt);

// Seeded sampling of an admissible twist (counit-normalized + invertible).
std::pair<Tensor, Tensor> random_admissible_twist(const QuasiHopf& H, std::mt19937_64& rng,
                                                  const Options& opt);

struct Variants {
  QuasiHopf op, cop, op_cop;
};
Variants variants(const QuasiHopf& H);

// Both closed-form expressions for R^-1; their agreement and two-sidedness
// are recorded in the report.  Returns the first expression's value.
Tensor r_inverse_formula(const QuasiHopf& H, const Options& opt, Report& rep);

// (S (x) S)(R) gamma = gamma^21 R  and  f^op R f^-1 = (S (x) S)(R).
Report antipode_image_check(const QuasiHopf& H, const Options& opt);

// Random one-leg / two-leg sparse elements for property checks.
Tensor random_element(const QuasiHopf& H, std::mt19937_64& rng, std::size_t nlegs = 1);

}  // namespace qhd
