// The quantum double as a diagonal crossed product: two-sided coaction,
// Omega elements, the crossed-product multiplication, the universal flip
// operator and the full quasitriangular quasi-Hopf structure it generates.

#pragma once

#include "dual.hpp"
#include "quasi_hopf.hpp"

#include <memory>

namespace qhd {

struct TwoSidedCoaction {
  std::vector<Tensor> delta_map;  // (Delta (x) id) Delta(e_i), three legs
  Tensor Phi, Phi_inv;            // five legs
};
TwoSidedCoaction two_sided_coaction(const QuasiHopf& H, const Options& opt, Report& rep);

struct OmegaElements {
  Tensor Omega;    // five legs; both defining expressions agree
  Tensor Omega_R;  // right crossed-product version
};
OmegaElements omega_elements(const QuasiHopf& H, const TwoSidedCoaction& coa,
                             const DerivedElements& dt, const Options& opt, Report& rep);

// Precomputed contraction tables shared by the crossed-product evaluators.
struct DoubleContext {
  const QuasiHopf* H = nullptr;
  const SpaceRegistry* reg = nullptr;
  std::uint32_t dual_space = 0;
  std::uint32_t n = 0;
  Mat S_inv;
  // iterated dual coproduct of e^nu: list of (rho, sigma, tau, c)
  std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, cplx>>> triples;
  // per mu: entries indexed by (first, third) -> list of (middle, c)
  std::vector<std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint32_t, cplx>>>>
      triples_ft;
  // per i: delta(e_i) entries indexed by first leg -> list of (mid, last, c)
  std::vector<std::unordered_map<std::uint32_t,
                                 std::vector<std::tuple<std::uint32_t, std::uint32_t, cplx>>>>
      delta3_first;
  std::vector<std::pair<std::vector<std::uint32_t>, cplx>> omega_entries;    // decoded
  std::vector<std::pair<std::vector<std::uint32_t>, cplx>> omega_r_entries;  // decoded
  bool omega_unit = false;    // Omega equals the unit of G^(x)5
  bool omega_r_unit = false;

  // chi |> e_i <| psi with chi = S_hat^-1(e^rho), psi = e^tau
  SparseVec flip_action(std::uint32_t rho, std::uint32_t i, std::uint32_t tau) const;
  // crossed-product structure constants on G^ (x) G, fused index mu*n+i
  SparseVec product(std::uint32_t a, std::uint32_t b) const;
  SparseVec product_generic(std::uint32_t a, std::uint32_t b) const;
  SparseVec product_unit_omega(std::uint32_t a, std::uint32_t b) const;
  // right crossed product on G (x) G^, fused index i*n+mu
  SparseVec right_product(std::uint32_t a, std::uint32_t b) const;
};

struct DoubleAlgebra {
  QuasiHopf base;
  DualStructure dual;
  DerivedElements twists;
  PQElements pq;
  TwoSidedCoaction coaction;
  OmegaElements omega;
  std::shared_ptr<DoubleContext> ctx;

  std::uint32_t dspace = 0;  // registered crossed-product algebra
  LinMap iD;                 // base embedding e_i -> eps^ (x) e_i
  Tensor D;                  // universal flip, G (x) D(G)
  Tensor D_inv;
  bool full = false;         // quasi-Hopf layer assembled
  QuasiHopf dbl;             // the double as a quasitriangular quasi-Hopf algebra
  Tensor DeltaD_of_D;        // (id (x) Delta_D)(D), three legs G,D,D
  Mat mu, mu_inv;            // the linear bijection G^ (x) G -> D(G)

  std::uint32_t fuse(std::uint32_t mu_idx, std::uint32_t i) const { return mu_idx * base.dim + i; }
  Tensor iD_of(const Tensor& a) const { return apply_linmap(a, 0, iD); }
  Tensor basis_d(std::uint32_t k) const { return basis_tensor(*base.reg, dspace, k); }
  // D(phi) = (phi (x) id)(D) for a dual element phi
  Tensor D_of(const Tensor& phi_dual) const;
  Tensor unit_d() const { return unit_tensor(*base.reg, {dspace}); }
  // mu(phi (x) a) = (i_D (x) phi_(1))(q_rho) D(phi_(2)) i_D(a)
  Tensor mu_map(const Tensor& phi_dual, const Tensor& a) const;
  Tensor mu_apply_inverse(const Tensor& x_d) const;  // D(G) -> G^ (x) G coordinates
};

// Builds the double.  With algebra_only the quasi-Hopf layer (coproduct,
// antipode, mu) is skipped; with lazy_product the crossed-product structure
// constants are evaluated on demand (used for doubles of doubles, where the
// full table is never needed).
DoubleAlgebra build_double(const QuasiHopf& H, const Options& opt, Report& rep,
                           bool algebra_only = false, bool lazy_product = false);

// Evaluates the crossed-product multiplication table and registers the
// algebra; reports associativity, the unit and the base subalgebra law.
std::uint32_t diagonal_product(const QuasiHopf& H, const DualStructure& dual,
                               const OmegaElements& om, std::shared_ptr<DoubleContext>& ctx_out,
                               const Options& opt, Report& rep, bool lazy_product = false);

// Right diagonal crossed product on G (x) G^.
struct RightDouble {
  std::uint32_t space = 0;
  std::shared_ptr<DoubleContext> ctx;
};
RightDouble right_double(const QuasiHopf& H, const DualStructure& dual, const OmegaElements& om,
                         const Options& opt, Report& rep);

// The mutually inverse algebra maps between the two crossed products.
struct CrossedIso {
  Mat to_right, to_left;  // N^2 x N^2 in the fused bases
};
CrossedIso left_right_iso(const DoubleAlgebra& da, const RightDouble& rd, const Options& opt,
                          Report& rep);

// A unital algebra map from the base into a target algebra, columnwise.
struct GammaHom {
  std::uint32_t target = 0;
  LinMap map;
};

// Coherent flip operators: the L <-> T transform with respect to gamma.
Report check_implementer_relations(const QuasiHopf& H, const TwoSidedCoaction& coa,
                                   const OmegaElements& om, const Tensor& L, const GammaHom& g,
                                   const Options& opt);
Report check_flip_operator_relations(const QuasiHopf& H, const Tensor& T, const GammaHom& g,
                                     const Options& opt);
Tensor lt_transform(const QuasiHopf& H, const PQElements& pq, const Tensor& L, const GammaHom& g);
Tensor lt_transform_back(const QuasiHopf& H, const PQElements& pq, const Tensor& T,
                         const GammaHom& g);

}  // namespace qhd
