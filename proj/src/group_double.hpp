// Finite groups, normalized 3-cocycles, the function quasi-Hopf algebra
// twisted by a cocycle, and the explicit presentation of its double on the
// basis {h (x) delta_g}.

#pragma once

#include "double_alg.hpp"

namespace qhd {

struct FiniteGroup {
  std::string name;
  std::uint32_t order = 0;
  std::vector<std::uint32_t> table;  // table[i*order+j] = i*j
  std::uint32_t identity = 0;
  std::vector<std::uint32_t> inverse;

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const { return table[i * order + j]; }
  std::uint32_t inv(std::uint32_t i) const { return inverse[i]; }
};

// Validates the table (associativity, identity, inverses); throws with the
// offending triple/element named.
FiniteGroup make_group(std::string name, std::uint32_t order, std::vector<std::uint32_t> table);
FiniteGroup cyclic_group(std::uint32_t n);
FiniteGroup symmetric_group_3();

struct ThreeCocycle {
  std::uint32_t order = 0;
  std::vector<cplx> values;  // values[(g*order+h)*order+k]
  cplx at(std::uint32_t g, std::uint32_t h, std::uint32_t k) const {
    return values[(std::size_t(g) * order + h) * order + k];
  }
};

// Dense table constructor (values supplied) and the standard family on
// cyclic groups: omega_p(a,b,c) = exp(2*pi*i * p * a * floor((b+c)/n) / n).
ThreeCocycle cocycle_from_table(const FiniteGroup& G, std::vector<cplx> values);
ThreeCocycle cyclic_standard_cocycle(const FiniteGroup& G, std::uint32_t p);
ThreeCocycle trivial_cocycle(const FiniteGroup& G);

// Enumerates all |G|^4 quadruples; reports the first violation.
Report verify_cocycle(const FiniteGroup& G, const ThreeCocycle& w, const Options& opt);

// Fun(G) with pointwise product and the cocycle reassociator.
QuasiHopf fun_qha(SpaceRegistry& reg, const FiniteGroup& G, const ThreeCocycle& w,
                  const Options& opt);
// The group algebra as an ordinary Hopf fixture with R = 1 (x) 1.
QuasiHopf group_algebra_qha(SpaceRegistry& reg, const FiniteGroup& G);

// The explicit double presentation on basis {h (x) delta_g}: commutation,
// the group-like product with its three-cocycle coefficient, and the
// coproduct.  Fused index h*|G|+g.
struct ExplicitDouble {
  std::uint32_t space = 0;  // registered algebra on the {h (x) delta_g} basis
  FiniteGroup group;
  ThreeCocycle w;
  SparseMap2 coproduct;
  // coefficient of (xy (x) delta_t) in (x (x) 1)(y (x) 1)
  cplx product_coefficient(std::uint32_t x, std::uint32_t y, std::uint32_t t) const;
};
ExplicitDouble explicit_double(SpaceRegistry& reg, const FiniteGroup& G, const ThreeCocycle& w,
                     const Options& opt, Report& rep);

// Transports the generic double through sigma(phi (x) a) = D(phi) i_D(a) and
// compares products and coproducts entrywise with the explicit presentation.
Report sigma_check(const FiniteGroup& G, const ThreeCocycle& w, const DoubleAlgebra& da,
                   const ExplicitDouble& xd, const Options& opt);

}  // namespace qhd
