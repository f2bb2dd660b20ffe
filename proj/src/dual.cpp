#include "dual.hpp"

#include <algorithm>

namespace qhd {

DualStructure dual_of(const QuasiHopf& H, const Options& opt, Report* rep) {
  SpaceRegistry& reg = *H.reg;
  DualStructure D;
  D.primal_space = H.space;
  D.dim = H.dim;

  // Transpose multiplication: <e^a e^b | x> = <e^a (x) e^b | Delta(x)>.
  AlgebraTable t;
  t.name = reg[H.space].name + "_dual";
  t.dim = H.dim;
  t.has_product = true;
  t.dual_of = static_cast<int>(H.space);
  t.table.resize(std::size_t(H.dim) * H.dim);
  for (std::uint32_t m = 0; m < H.dim; ++m)
    for (const auto& [jk, c] : H.coproduct.entries[m])
      t.table[std::uint64_t(jk.first) * H.dim + jk.second].emplace_back(m, c);
  for (auto& v : t.table) v = sparse_combine(v);
  // Unit of the dual multiplication: the primal counit as a functional.
  for (std::uint32_t i = 0; i < H.dim; ++i)
    if (H.counit[i] != cplx(0.0)) t.unit.emplace_back(i, H.counit[i]);
  D.dual_unit = t.unit;
  D.dual_space = reg.add(std::move(t));

  // Transpose coproduct: <Delta^(e^m) | e_i (x) e_j> = <e^m | e_i e_j>.
  D.dual_coproduct.to1 = D.dual_coproduct.to2 = D.dual_space;
  D.dual_coproduct.entries.resize(H.dim);
  for (std::uint32_t i = 0; i < H.dim; ++i)
    for (std::uint32_t j = 0; j < H.dim; ++j)
      for (const auto& [m, c] : reg.product(H.space, i, j))
        D.dual_coproduct.entries[m].push_back({{i, j}, c});

  D.dual_counit.resize(H.dim, cplx(0.0));
  for (const auto& [i, c] : reg[H.space].unit) D.dual_counit[i] = c;

  D.S_hat = H.S.transpose();
  D.S_hat_inv = H.S_inv.transpose();

  if (rep) {
    rep->tol = opt.tol;
    double worst = 0.0;
    // exact coassociativity of the transpose coproduct
    for (std::uint32_t m = 0; m < H.dim; ++m) {
      Tensor d = D.cop(D.basis(reg, m));
      worst = std::max(worst, residual(D.cop_leg(d, 0), D.cop_leg(d, 1)));
    }
    rep->add("dual coproduct coassociative", "dual.coassoc", worst);

    Tensor du = from_sparse(reg, D.dual_space, D.dual_unit);
    worst = 0.0;
    for (std::uint32_t m = 0; m < H.dim; ++m) {
      Tensor e = D.basis(reg, m);
      worst = std::max(worst, residual(multiply(du, e), e));
      worst = std::max(worst, residual(multiply(e, du), e));
    }
    rep->add("dual unit law", "dual.unit", worst);

    worst = 0.0;
    for (std::uint32_t a = 0; a < H.dim; ++a)
      for (std::uint32_t b = 0; b < H.dim; ++b) {
        Tensor pr = multiply(D.basis(reg, a), D.basis(reg, b));
        Tensor lhs = D.cop(pr);
        Tensor rhs = multiply(D.cop(D.basis(reg, a)), D.cop(D.basis(reg, b)));
        worst = std::max(worst, residual(lhs, rhs));
      }
    rep->add("dual coproduct multiplicative", "dual.multiplicative", worst);

    worst = 0.0;
    for (std::uint32_t m = 0; m < H.dim; ++m)
      for (std::uint32_t i = 0; i < H.dim; ++i) {
        cplx lhs = pairing(D.s_hat(D.basis(reg, m)), H.basis(i));
        cplx rhs = pairing(D.basis(reg, m), H.s_of(H.basis(i)));
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    rep->add("dual antipode pairing", "dual.antipode-pairing", worst);
  }
  return D;
}

Tensor act_left(const QuasiHopf& H, const DualStructure& D, const Tensor& a, const Tensor& phi) {
  Tensor d = D.cop(phi);
  // pair the second dual leg against a
  std::vector<cplx> cov(H.dim, cplx(0.0));
  for (const auto& [k, c] : a.ent) cov[static_cast<std::uint32_t>(k)] = c;
  return contract_leg(d, 1, cov);
}

Tensor act_right(const QuasiHopf& H, const DualStructure& D, const Tensor& phi, const Tensor& a) {
  Tensor d = D.cop(phi);
  std::vector<cplx> cov(H.dim, cplx(0.0));
  for (const auto& [k, c] : a.ent) cov[static_cast<std::uint32_t>(k)] = c;
  return contract_leg(d, 0, cov);
}

Tensor harpoon_left(const QuasiHopf& H, const Tensor& phi, const Tensor& a) {
  Tensor d = H.delta(a);
  std::vector<cplx> cov(H.dim, cplx(0.0));
  for (const auto& [k, c] : phi.ent) cov[static_cast<std::uint32_t>(k)] = c;
  return contract_leg(d, 1, cov);
}

Tensor harpoon_right(const QuasiHopf& H, const Tensor& a, const Tensor& phi) {
  Tensor d = H.delta(a);
  std::vector<cplx> cov(H.dim, cplx(0.0));
  for (const auto& [k, c] : phi.ent) cov[static_cast<std::uint32_t>(k)] = c;
  return contract_leg(d, 0, cov);
}

Tensor two_sided_action(const QuasiHopf& H, const Tensor& chi, const Tensor& a, const Tensor& psi) {
  Tensor d3 = H.delta_leg(H.delta(a), 0);  // (Delta (x) id) Delta(a)
  std::vector<cplx> cpsi(H.dim, cplx(0.0)), cchi(H.dim, cplx(0.0));
  for (const auto& [k, c] : psi.ent) cpsi[static_cast<std::uint32_t>(k)] = c;
  for (const auto& [k, c] : chi.ent) cchi[static_cast<std::uint32_t>(k)] = c;
  return contract_leg(contract_leg(d3, 2, cchi), 0, cpsi);
}

Report verify_dual(const QuasiHopf& H, const DualStructure& D, const Options& opt) {
  Report rep;
  rep.tol = opt.tol;
  SpaceRegistry& reg = *H.reg;

  double worst = 0.0;
  // 1 -> phi = phi and phi <- 1 = phi
  for (std::uint32_t m = 0; m < H.dim; ++m) {
    Tensor phi = D.basis(reg, m);
    worst = std::max(worst, residual(act_left(H, D, H.unit(), phi), phi));
    worst = std::max(worst, residual(act_right(H, D, phi, H.unit()), phi));
  }
  rep.add("unit acts trivially", "dual.arrows-unital", worst);

  // module-algebra law: a -> (phi psi) = (a_(1) -> phi)(a_(2) -> psi)
  worst = 0.0;
  double worst2 = 0.0;
  for (std::uint32_t i = 0; i < H.dim; ++i)
    for (std::uint32_t a = 0; a < H.dim; ++a)
      for (std::uint32_t b = 0; b < H.dim; ++b) {
        Tensor phi = D.basis(reg, a), psi = D.basis(reg, b), x = H.basis(i);
        Tensor lhs = act_left(H, D, x, multiply(phi, psi));
        Tensor rhs(reg, {D.dual_space});
        for (const auto& [jk, c] : H.coproduct.entries[i])
          rhs = add(rhs, scale(multiply(act_left(H, D, H.basis(jk.first), phi),
                                        act_left(H, D, H.basis(jk.second), psi)),
                               c));
        worst = std::max(worst, residual(lhs, rhs));

        Tensor lhs2 = act_right(H, D, multiply(phi, psi), x);
        Tensor rhs2(reg, {D.dual_space});
        for (const auto& [jk, c] : H.coproduct.entries[i])
          rhs2 = add(rhs2, scale(multiply(act_right(H, D, phi, H.basis(jk.first)),
                                          act_right(H, D, psi, H.basis(jk.second))),
                                 c));
        worst2 = std::max(worst2, residual(lhs2, rhs2));
      }
  rep.add("left arrow module-algebra law", "dual.arrows-module-left", worst);
  rep.add("right arrow module-algebra law", "dual.arrows-module-right", worst2);

  // the two actions commute
  worst = 0.0;
  for (std::uint32_t i = 0; i < H.dim; ++i)
    for (std::uint32_t j = 0; j < H.dim; ++j)
      for (std::uint32_t m = 0; m < H.dim; ++m) {
        Tensor phi = D.basis(reg, m);
        Tensor lhs = act_right(H, D, act_left(H, D, H.basis(i), phi), H.basis(j));
        Tensor rhs = act_left(H, D, H.basis(i), act_right(H, D, phi, H.basis(j)));
        worst = std::max(worst, residual(lhs, rhs));
      }
  rep.add("arrow actions commute", "dual.arrows-commute", worst);

  // associator of the dual multiplication = coassociativity defect of Delta
  worst = 0.0;
  for (std::uint32_t a = 0; a < H.dim; ++a)
    for (std::uint32_t b = 0; b < H.dim; ++b)
      for (std::uint32_t m = 0; m < H.dim; ++m) {
        Tensor phi = D.basis(reg, a), psi = D.basis(reg, b), chi = D.basis(reg, m);
        Tensor assoc = sub(multiply(multiply(phi, psi), chi), multiply(phi, multiply(psi, chi)));
        for (std::uint32_t i = 0; i < H.dim; ++i) {
          Tensor d = H.delta(H.basis(i));
          Tensor defect = sub(H.delta_leg(d, 0), H.delta_leg(d, 1));
          cplx lhs = pairing(assoc, H.basis(i));
          cplx rhs = pairing(tensor_product(tensor_product(phi, psi), chi), defect);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
      }
  rep.add("dual associator equals coassociativity defect", "dual.associator-defect", worst);
  return rep;
}

}  // namespace qhd
