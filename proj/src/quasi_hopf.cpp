#include "quasi_hopf.hpp"

#include <algorithm>
#include <cmath>

namespace qhd {

namespace {
inline SparseVec sv_from_col(const Mat& m, std::uint32_t j) { return sv_matcol(m, j); }
}  // namespace

Tensor QuasiHopf::delta_op(const Tensor& a) const {
  Tensor d = delta(a);
  return place(d, {2, 1}, 2);
}

cplx QuasiHopf::eps_of(const Tensor& a) const {
  cplx s = 0.0;
  for (const auto& [k, c] : a.ent) s += c * counit.at(static_cast<std::uint32_t>(k));
  return s;
}

Tensor QuasiHopf::place(const Tensor& psi, std::initializer_list<int> slots,
                        std::size_t nlegs) const {
  std::vector<int> pos;
  for (int s : slots) pos.push_back(s - 1);
  return leg_embed(psi, pos, legs(nlegs));
}

QuasiHopf make_quasi_hopf(SpaceRegistry& reg, std::string name, std::uint32_t dim,
                          std::vector<SparseVec> table, SparseVec unit, SparseMap2 coproduct,
                          std::vector<cplx> counit, Tensor phi, std::optional<Tensor> phi_inv,
                          Mat S, Tensor alpha, Tensor beta, std::optional<Tensor> R,
                          std::optional<Tensor> R_inv) {
  AlgebraTable t;
  t.name = std::move(name);
  t.dim = dim;
  t.has_product = true;
  t.unit = std::move(unit);
  t.table = std::move(table);
  std::uint32_t space = reg.add(std::move(t));

  QuasiHopf H;
  H.reg = &reg;
  H.space = space;
  H.dim = dim;
  H.coproduct = std::move(coproduct);
  H.coproduct.to1 = H.coproduct.to2 = space;
  H.counit = std::move(counit);

  auto resign = [&](Tensor& x) {
    for (auto& s : x.sig) s = space;
  };
  resign(phi);
  H.phi = std::move(phi);
  if (phi_inv) {
    resign(*phi_inv);
    H.phi_inv = std::move(*phi_inv);
  } else {
    H.phi_inv = invert_in_product_algebra(H.phi);
  }
  H.S = std::move(S);
  Eigen::FullPivLU<Mat> lu(H.S);
  lu.setThreshold(1e-10);
  if (!lu.isInvertible()) throw Error("antipode matrix is singular");
  H.S_inv = lu.inverse();
  resign(alpha);
  resign(beta);
  H.alpha = std::move(alpha);
  H.beta = std::move(beta);
  if (R) {
    resign(*R);
    H.R = std::move(*R);
    if (R_inv) {
      resign(*R_inv);
      H.R_inv = std::move(*R_inv);
    } else {
      H.R_inv = invert_in_product_algebra(*H.R);
    }
  }
  return H;
}

Report verify_quasi_hopf(const QuasiHopf& H, const Options& opt) {
  Report rep;
  rep.tol = opt.tol;
  const SpaceRegistry& reg = *H.reg;
  const std::uint32_t n = H.dim;

  // Structure constants: associativity and unit law.
  double worst = 0.0;
  std::string where;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k) {
        SparseVec ab_c = sv_mul(reg, H.space, reg.product(H.space, i, j), sv_basis(k));
        SparseVec a_bc = sv_mul(reg, H.space, sv_basis(i), reg.product(H.space, j, k));
        double r = residual(from_sparse(reg, H.space, ab_c), from_sparse(reg, H.space, a_bc));
        if (r > worst) {
          worst = r;
          where = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
        }
      }
  rep.add("multiplication associative", "algebra.assoc", worst,
          worst > opt.tol ? "worst basis triple " + where : "");

  Tensor one = H.unit();
  worst = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    Tensor e = H.basis(i);
    worst = std::max(worst, residual(H.mul(one, e), e));
    worst = std::max(worst, residual(H.mul(e, one), e));
  }
  rep.add("unit law", "algebra.unit", worst);

  // Coproduct/counit are algebra maps; the strong case requires Delta(1)=1x1.
  Tensor one2 = H.unit_n(2);
  double dunital = residual(H.delta(one), one2);
  rep.add("coproduct unital", "coproduct.unital", dunital,
          dunital > opt.tol ? "weak case Delta(1) != 1x1 is out of scope for this verifier" : "");
  worst = 0.0;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      Tensor prod = H.mul(H.basis(i), H.basis(j));
      worst = std::max(worst, residual(H.delta(prod), H.mul(H.delta(H.basis(i)), H.delta(H.basis(j)))));
    }
  rep.add("coproduct multiplicative", "coproduct.morphism", worst);

  worst = std::abs(H.eps_of(one) - cplx(1.0));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      cplx lhs = H.eps_of(H.mul(H.basis(i), H.basis(j)));
      worst = std::max(worst, std::abs(lhs - H.counit[i] * H.counit[j]));
    }
  rep.add("counit multiplicative", "counit.morphism", worst);

  // Reassociator invertibility.
  Tensor one3 = H.unit_n(3);
  double rphi = std::max(residual(H.mul(H.phi, H.phi_inv), one3), residual(H.mul(H.phi_inv, H.phi), one3));
  rep.add("reassociator invertible", "qh.phi-invertible", rphi);

  // Quasi-coassociativity.
  worst = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    Tensor d = H.delta(H.basis(i));
    Tensor lhs = H.mul(H.delta_leg(d, 1), H.phi);
    Tensor rhs = H.mul(H.phi, H.delta_leg(d, 0));
    worst = std::max(worst, residual(lhs, rhs));
  }
  rep.add("quasi-coassociativity", "qh.coassoc", worst);

  // Pentagon.  Gated above the squared dimension threshold, matching the
  // desk-scale bound for reassociators of constructed doubles.
  if (n <= opt.double_pentagon_dim_gate * opt.double_pentagon_dim_gate || opt.force_deep_checks) {
    Tensor lhs = H.mul(H.delta_leg(H.phi, 2), H.delta_leg(H.phi, 0));
    Tensor rhs = H.mul(H.mul(H.place(H.phi, {2, 3, 4}, 4), H.delta_leg(H.phi, 1)),
                       H.place(H.phi, {1, 2, 3}, 4));
    rep.add("pentagon", "qh.pentagon", residual(lhs, rhs));
  } else {
    rep.add("pentagon", "qh.pentagon", 0.0, "skipped: dimension gate (use force-deep-checks)");
  }

  // Counit laws for Delta and phi.
  worst = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    Tensor d = H.delta(H.basis(i));
    worst = std::max(worst, residual(apply_counit(d, 0, H.counit), H.basis(i)));
    worst = std::max(worst, residual(apply_counit(d, 1, H.counit), H.basis(i)));
  }
  rep.add("counit of coproduct", "qh.counit", worst);

  Tensor one2b = H.unit_n(2);
  rep.add("counit of reassociator (middle)", "qh.phi-counit-mid",
          residual(apply_counit(H.phi, 1, H.counit), one2b));
  rep.add("counit of reassociator (outer)", "qh.phi-counit-outer",
          std::max(residual(apply_counit(H.phi, 0, H.counit), one2b),
                   residual(apply_counit(H.phi, 2, H.counit), one2b)));

  // Antipode: anti-morphism, invertibility, the two cancellation laws and
  // the zig-zag normalizations.
  worst = 0.0;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      Tensor lhs = H.s_of(H.mul(H.basis(i), H.basis(j)));
      Tensor rhs = H.mul(H.s_of(H.basis(j)), H.s_of(H.basis(i)));
      worst = std::max(worst, residual(lhs, rhs));
    }
  worst = std::max(worst, residual(H.s_of(one), one));
  rep.add("antipode anti-morphism", "antipode.antihom", worst);
  rep.add("antipode invertible", "antipode.invertible",
          (H.S_inv * H.S - Mat::Identity(n, n)).cwiseAbs().maxCoeff());

  double worstL = 0.0, worstR = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    Tensor a = H.basis(i);
    Tensor d = H.delta(a);
    // sum S(a_(1)) alpha a_(2)  =  alpha eps(a)
    Tensor l = merge_legs(mul_leg_right(apply_matrix(d, 0, H.S), 0, H.alpha), 0);
    worstL = std::max(worstL, residual(l, scale(H.alpha, H.counit[i])));
    // sum a_(1) beta S(a_(2))  =  beta eps(a)
    Tensor rr = merge_legs(mul_leg_left(H.beta, apply_matrix(d, 1, H.S), 1), 0);
    worstR = std::max(worstR, residual(rr, scale(H.beta, H.counit[i])));
  }
  rep.add("antipode cancellation (left)", "antipode.left-cancel", worstL);
  rep.add("antipode cancellation (right)", "antipode.right-cancel", worstR);

  {
    // sum X beta S(Y) alpha Z = 1  over phi,  sum S(P) alpha Q beta S(R) = 1 over phi_inv
    Tensor zig(reg, {H.space}), zag(reg, {H.space});
    for (const auto& [k, c] : H.phi.ent) {
      std::uint32_t x = H.phi.leg_index(k, 0), y = H.phi.leg_index(k, 1), z = H.phi.leg_index(k, 2);
      SparseVec v = sv_mul(reg, H.space, sv_basis(x), to_sparse(H.beta));
      v = sv_mul(reg, H.space, v, sv_from_col(H.S, y));
      v = sv_mul(reg, H.space, v, to_sparse(H.alpha));
      v = sv_mul(reg, H.space, v, sv_basis(z));
      for (const auto& [m, cm] : v) zig.accumulate(m, c * cm);
    }
    for (const auto& [k, c] : H.phi_inv.ent) {
      std::uint32_t p = H.phi_inv.leg_index(k, 0), q = H.phi_inv.leg_index(k, 1),
                    r = H.phi_inv.leg_index(k, 2);
      SparseVec v = sv_mul(reg, H.space, sv_from_col(H.S, p), to_sparse(H.alpha));
      v = sv_mul(reg, H.space, v, sv_basis(q));
      v = sv_mul(reg, H.space, v, to_sparse(H.beta));
      v = sv_mul(reg, H.space, v, sv_from_col(H.S, r));
      for (const auto& [m, cm] : v) zag.accumulate(m, c * cm);
    }
    rep.add("antipode zig-zag (reassociator)", "antipode.zigzag-left", residual(zig, one));
    rep.add("antipode zig-zag (inverse reassociator)", "antipode.zigzag-right", residual(zag, one));
  }

  cplx ea = H.eps_of(H.alpha), eb = H.eps_of(H.beta);
  rep.add("counit of alpha,beta", "antipode.counit-product", std::abs(ea * eb - cplx(1.0)),
          "eps(alpha)=" + std::to_string(ea.real()) + "+" + std::to_string(ea.imag()) + "i");
  return rep;
}

Report verify_quasitriangular(const QuasiHopf& H, const Options& opt) {
  Report rep;
  rep.tol = opt.tol;
  if (!H.R) {
    rep.require("R-matrix present", "rmatrix.present", false, "no R-matrix on this structure");
    return rep;
  }
  const Tensor& R = *H.R;
  const Tensor& Ri = *H.R_inv;
  Tensor one2 = H.unit_n(2);

  rep.add("R invertible", "rmatrix.invertible",
          std::max(residual(H.mul(R, Ri), one2), residual(H.mul(Ri, R), one2)));

  double worst = 0.0;
  for (std::uint32_t i = 0; i < H.dim; ++i) {
    Tensor a = H.basis(i);
    worst = std::max(worst, residual(H.mul(H.delta_op(a), R), H.mul(R, H.delta(a))));
  }
  rep.add("R intertwines coproducts", "rmatrix.intertwines", worst);

  Tensor R13 = H.place(R, {1, 3}, 3), R23 = H.place(R, {2, 3}, 3), R12 = H.place(R, {1, 2}, 3);
  auto P = [&](std::initializer_list<int> s) { return H.place(H.phi, s, 3); };
  auto Pi = [&](std::initializer_list<int> s) { return H.place(H.phi_inv, s, 3); };

  {
    Tensor rhs = H.mul(H.mul(H.mul(H.mul(P({3, 1, 2}), R13), Pi({1, 3, 2})), R23), H.phi);
    rep.add("coproduct of R (left hexagon)", "rmatrix.hexagon-left",
            residual(H.delta_leg(R, 0), rhs));
  }
  {
    Tensor rhs = H.mul(H.mul(H.mul(H.mul(Pi({2, 3, 1}), R13), P({2, 1, 3})), R12), H.phi_inv);
    rep.add("coproduct of R (right hexagon)", "rmatrix.hexagon-right",
            residual(H.delta_leg(R, 1), rhs));
  }
  {
    Tensor lhs = H.mul(H.mul(H.mul(H.mul(H.mul(R12, P({3, 1, 2})), R13), Pi({1, 3, 2})), R23), H.phi);
    Tensor rhs = H.mul(H.mul(H.mul(H.mul(H.mul(P({3, 2, 1}), R23), Pi({2, 3, 1})), R13), P({2, 1, 3})), R12);
    rep.add("quasi Yang-Baxter", "rmatrix.quasi-ybe", residual(lhs, rhs));
  }
  {
    Tensor u = H.unit();
    rep.add("counit of R", "rmatrix.counit",
            std::max(residual(apply_counit(R, 0, H.counit), u),
                     residual(apply_counit(R, 1, H.counit), u)));
  }
  return rep;
}

DerivedElements derived_twists(const QuasiHopf& H, const Options& opt, Report& rep) {
  rep.tol = opt.tol;
  const SpaceRegistry& reg = *H.reg;
  DerivedElements d;

  // T x U x V x W  and  K x L x M x N
  Tensor TUVW = H.mul(H.place(H.phi_inv, {2, 3, 4}, 4), H.delta_leg(H.phi, 2));
  Tensor KLMN = H.mul(H.delta_leg(H.phi, 0), H.place(H.phi_inv, {1, 2, 3}, 4));

  Tensor gamma(reg, H.legs(2)), delta_el(reg, H.legs(2));
  SparseVec alpha_sv = to_sparse(H.alpha), beta_sv = to_sparse(H.beta);
  for (const auto& [k, c] : TUVW.ent) {
    std::uint32_t t = TUVW.leg_index(k, 0), u = TUVW.leg_index(k, 1), v = TUVW.leg_index(k, 2),
                  w = TUVW.leg_index(k, 3);
    SparseVec a = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_from_col(H.S, u), alpha_sv), sv_basis(v));
    SparseVec b = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_from_col(H.S, t), alpha_sv), sv_basis(w));
    for (const auto& [i, ci] : a)
      for (const auto& [j, cj] : b)
        gamma.accumulate(gamma.strides[0] * i + j, c * ci * cj);
  }
  for (const auto& [kk, c] : KLMN.ent) {
    std::uint32_t kq = KLMN.leg_index(kk, 0), l = KLMN.leg_index(kk, 1), m = KLMN.leg_index(kk, 2),
                  nn = KLMN.leg_index(kk, 3);
    SparseVec a = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_basis(kq), beta_sv), sv_from_col(H.S, nn));
    SparseVec b = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_basis(l), beta_sv), sv_from_col(H.S, m));
    for (const auto& [i, ci] : a)
      for (const auto& [j, cj] : b)
        delta_el.accumulate(delta_el.strides[0] * i + j, c * ci * cj);
  }
  gamma.prune(opt.prune);
  delta_el.prune(opt.prune);
  d.gamma = gamma;
  d.delta_el = delta_el;

  // f and f^-1 assembled from phi_inv.
  Tensor f(reg, H.legs(2)), f_inv(reg, H.legs(2));
  for (const auto& [k, c] : H.phi_inv.ent) {
    std::uint32_t p = H.phi_inv.leg_index(k, 0), q = H.phi_inv.leg_index(k, 1),
                  r = H.phi_inv.leg_index(k, 2);
    {
      Tensor dp = H.delta_op(H.basis(p));
      dp = apply_matrix(apply_matrix(dp, 0, H.S), 1, H.S);
      SparseVec x = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_basis(q), beta_sv),
                           sv_from_col(H.S, r));
      Tensor dx = H.delta(from_sparse(reg, H.space, x));
      Tensor term = H.mul(H.mul(dp, d.gamma), dx);
      for (const auto& [kt, ct] : term.ent) f.accumulate(kt, c * ct);
    }
    {
      SparseVec x = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_from_col(H.S, p), to_sparse(H.alpha)),
                           sv_basis(q));
      Tensor dx = H.delta(from_sparse(reg, H.space, x));
      Tensor dr = H.delta_op(H.basis(r));
      dr = apply_matrix(apply_matrix(dr, 0, H.S), 1, H.S);
      Tensor term = H.mul(H.mul(dx, d.delta_el), dr);
      for (const auto& [kt, ct] : term.ent) f_inv.accumulate(kt, c * ct);
    }
  }
  f.prune(opt.prune);
  f_inv.prune(opt.prune);
  d.f = f;
  d.f_inv = f_inv;

  Tensor one2 = H.unit_n(2);
  rep.add("twist f invertible", "twist.f-invertible",
          std::max(residual(H.mul(d.f, d.f_inv), one2), residual(H.mul(d.f_inv, d.f), one2)));
  rep.add("f Delta(alpha) = gamma", "twist.gamma-relation",
          residual(H.mul(d.f, H.delta(H.alpha)), d.gamma));
  rep.add("Delta(beta) f^-1 = delta", "twist.delta-relation",
          residual(H.mul(H.delta(H.beta), d.f_inv), d.delta_el));

  double worst = 0.0;
  for (std::uint32_t i = 0; i < H.dim; ++i) {
    Tensor lhs = H.mul(H.mul(d.f, H.delta(H.basis(i))), d.f_inv);
    Tensor rhs = H.delta_op(H.s_inv_of(H.basis(i)));
    rhs = apply_matrix(apply_matrix(rhs, 0, H.S), 1, H.S);
    worst = std::max(worst, residual(lhs, rhs));
  }
  rep.add("antipode-coproduct conjugation by f", "twist.antipode-conjugation", worst);

  {
    // twisted reassociator of f equals the antipode image of the reversed one
    Tensor phf = H.mul(H.mul(H.mul(H.mul(H.place(d.f, {2, 3}, 3), H.delta_leg(d.f, 1)), H.phi),
                             H.delta_leg(d.f_inv, 0)),
                       H.place(d.f_inv, {1, 2}, 3));
    Tensor img = H.place(H.phi, {3, 2, 1}, 3);
    for (int l = 0; l < 3; ++l) img = apply_matrix(img, l, H.S);
    rep.add("twisted reassociator image", "twist.reassociator-image", residual(phf, img));
  }

  d.h = apply_matrix(apply_matrix(H.place(d.f, {2, 1}, 2), 0, H.S_inv), 1, H.S_inv);
  d.h_inv = apply_matrix(apply_matrix(H.place(d.f_inv, {2, 1}, 2), 0, H.S_inv), 1, H.S_inv);
  rep.add("twist h invertible", "twist.h-invertible",
          std::max(residual(H.mul(d.h, d.h_inv), one2), residual(H.mul(d.h_inv, d.h), one2)));

  worst = 0.0;
  for (std::uint32_t i = 0; i < H.dim; ++i) {
    Tensor lhs = H.mul(H.mul(d.h, H.delta(H.basis(i))), d.h_inv);
    Tensor rhs = H.delta_op(H.s_of(H.basis(i)));
    rhs = apply_matrix(apply_matrix(rhs, 0, H.S_inv), 1, H.S_inv);
    worst = std::max(worst, residual(lhs, rhs));
  }
  rep.add("antipode-coproduct conjugation by h", "twist.h-conjugation", worst);

  {
    Tensor phh = H.mul(H.mul(H.mul(H.mul(H.place(d.h, {2, 3}, 3), H.delta_leg(d.h, 1)), H.phi),
                             H.delta_leg(d.h_inv, 0)),
                       H.place(d.h_inv, {1, 2}, 3));
    Tensor img = H.place(H.phi, {3, 2, 1}, 3);
    for (int l = 0; l < 3; ++l) img = apply_matrix(img, l, H.S_inv);
    rep.add("twisted reassociator image of h", "twist.h-reassociator", residual(phh, img));
  }
  return d;
}

PQElements pq_elements_raw(const QuasiHopf& H) {
  const SpaceRegistry& reg = *H.reg;
  PQElements pq;
  Tensor p_l(reg, H.legs(2)), p_r(reg, H.legs(2)), q_l(reg, H.legs(2)), q_r(reg, H.legs(2));
  SparseVec alpha_sv = to_sparse(H.alpha), beta_sv = to_sparse(H.beta);
  for (const auto& [k, c] : H.phi.ent) {
    std::uint32_t x = H.phi.leg_index(k, 0), y = H.phi.leg_index(k, 1), z = H.phi.leg_index(k, 2);
    {
      SparseVec xb = sv_mul(reg, H.space, sv_basis(x), beta_sv);
      SparseVec sxb;
      for (const auto& [i, ci] : xb)
        for (const auto& [m, cm] : sv_from_col(H.S_inv, i)) sxb.emplace_back(m, ci * cm);
      SparseVec a = sv_mul(reg, H.space, sv_basis(y), sparse_combine(sxb));
      for (const auto& [i, ci] : a) p_l.accumulate(p_l.strides[0] * i + z, c * ci);
    }
    {
      SparseVec az = sv_mul(reg, H.space, alpha_sv, sv_basis(z));
      SparseVec saz;
      for (const auto& [i, ci] : az)
        for (const auto& [m, cm] : sv_from_col(H.S_inv, i)) saz.emplace_back(m, ci * cm);
      SparseVec b = sv_mul(reg, H.space, sparse_combine(saz), sv_basis(y));
      for (const auto& [j, cj] : b) q_r.accumulate(q_r.strides[0] * x + j, c * cj);
    }
  }
  for (const auto& [k, c] : H.phi_inv.ent) {
    std::uint32_t p = H.phi_inv.leg_index(k, 0), q = H.phi_inv.leg_index(k, 1),
                  r = H.phi_inv.leg_index(k, 2);
    {
      SparseVec b = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_basis(q), beta_sv), sv_from_col(H.S, r));
      for (const auto& [j, cj] : b) p_r.accumulate(p_r.strides[0] * p + j, c * cj);
    }
    {
      SparseVec a = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_from_col(H.S, p), alpha_sv), sv_basis(q));
      for (const auto& [i, ci] : a) q_l.accumulate(q_l.strides[0] * i + r, c * ci);
    }
  }
  pq.p_lambda = p_l.prune(1e-15);
  pq.p_rho = p_r.prune(1e-15);
  pq.q_lambda = q_l.prune(1e-15);
  pq.q_rho = q_r.prune(1e-15);
  return pq;
}

PQElements pq_elements(const QuasiHopf& H, const Options& opt, Report& rep) {
  rep.tol = opt.tol;
  PQElements pq = pq_elements_raw(H);
  const SpaceRegistry& reg = *H.reg;
  Tensor one2 = H.unit_n(2);

  auto bracket_left = [&](const Tensor& x) {  // [x (x) 1]
    return leg_embed(x, {0}, H.legs(2));
  };
  auto bracket_right = [&](const Tensor& x) {  // [1 (x) x]
    return leg_embed(x, {1}, H.legs(2));
  };

  double w1 = 0, w2 = 0, w3 = 0, w4 = 0;
  for (std::uint32_t i = 0; i < H.dim; ++i) {
    Tensor a = H.basis(i);
    Tensor l1(reg, H.legs(2)), l2(reg, H.legs(2)), l3(reg, H.legs(2)), l4(reg, H.legs(2));
    for (const auto& [jk, c] : H.coproduct.entries[i]) {
      Tensor a1 = H.basis(jk.first), a2 = H.basis(jk.second);
      l1 = add(l1, scale(H.mul(H.mul(H.delta(a2), pq.p_lambda), bracket_left(H.s_inv_of(a1))), c));
      l2 = add(l2, scale(H.mul(H.mul(H.delta(a1), pq.p_rho), bracket_right(H.s_of(a2))), c));
      l3 = add(l3, scale(H.mul(H.mul(bracket_left(H.s_of(a1)), pq.q_lambda), H.delta(a2)), c));
      l4 = add(l4, scale(H.mul(H.mul(bracket_right(H.s_inv_of(a2)), pq.q_rho), H.delta(a1)), c));
    }
    w1 = std::max(w1, residual(l1, H.mul(pq.p_lambda, bracket_right(a))));
    w2 = std::max(w2, residual(l2, H.mul(pq.p_rho, bracket_left(a))));
    w3 = std::max(w3, residual(l3, H.mul(bracket_right(a), pq.q_lambda)));
    w4 = std::max(w4, residual(l4, H.mul(bracket_left(a), pq.q_rho)));
  }
  rep.add("p_lambda commutation", "pq.commute-p-lambda", w1);
  rep.add("p_rho commutation", "pq.commute-p-rho", w2);
  rep.add("q_lambda commutation", "pq.commute-q-lambda", w3);
  rep.add("q_rho commutation", "pq.commute-q-rho", w4);

  // The four contraction identities.
  auto contract1 = [&](const Tensor& pel, const Tensor& qel, bool left_family) {
    Tensor acc(reg, H.legs(2));
    for (const auto& [k, c] : pel.ent) {
      std::uint32_t a = pel.leg_index(k, 0), b = pel.leg_index(k, 1);
      Tensor term = left_family
                        ? H.mul(H.mul(bracket_left(H.s_of(H.basis(a))), qel), H.delta(H.basis(b)))
                        : H.mul(H.mul(bracket_right(H.s_inv_of(H.basis(b))), qel), H.delta(H.basis(a)));
      acc = add(acc, scale(term, c));
    }
    return acc;
  };
  auto contract2 = [&](const Tensor& qel, const Tensor& pel, bool left_family) {
    Tensor acc(reg, H.legs(2));
    for (const auto& [k, c] : qel.ent) {
      std::uint32_t a = qel.leg_index(k, 0), b = qel.leg_index(k, 1);
      Tensor term = left_family
                        ? H.mul(H.mul(H.delta(H.basis(b)), pel), bracket_left(H.s_inv_of(H.basis(a))))
                        : H.mul(H.mul(H.delta(H.basis(a)), pel), bracket_right(H.s_of(H.basis(b))));
      acc = add(acc, scale(term, c));
    }
    return acc;
  };
  rep.add("lambda contraction (p through q)", "pq.contract-lambda-1",
          residual(contract1(pq.p_lambda, pq.q_lambda, true), one2));
  rep.add("rho contraction (p through q)", "pq.contract-rho-1",
          residual(contract1(pq.p_rho, pq.q_rho, false), one2));
  rep.add("lambda contraction (q through p)", "pq.contract-lambda-2",
          residual(contract2(pq.q_lambda, pq.p_lambda, true), one2));
  rep.add("rho contraction (q through p)", "pq.contract-rho-2",
          residual(contract2(pq.q_rho, pq.p_rho, false), one2));
  return pq;
}

QuasiHopf apply_twist(const QuasiHopf& H, const Tensor& F, const Tensor& F_inv,
                      const Options& opt) {
  Tensor u = H.unit();
  if (residual(apply_counit(F, 0, H.counit), u) > opt.tol ||
      residual(apply_counit(F, 1, H.counit), u) > opt.tol)
    throw Error("twist is not counit-normalized");
  Tensor one2 = H.unit_n(2);
  if (residual(H.mul(F, F_inv), one2) > opt.tol || residual(H.mul(F_inv, F), one2) > opt.tol)
    throw Error("twist inverse does not invert the twist");

  QuasiHopf T = H;
  SparseMap2 cop;
  cop.to1 = cop.to2 = H.space;
  cop.entries.resize(H.dim);
  for (std::uint32_t i = 0; i < H.dim; ++i) {
    Tensor d = H.mul(H.mul(F, H.delta(H.basis(i))), F_inv);
    d.prune(opt.prune);
    for (const auto& [k, c] : d.ent)
      cop.entries[i].push_back({{d.leg_index(k, 0), d.leg_index(k, 1)}, c});
  }
  T.coproduct = std::move(cop);

  T.phi = H.mul(H.mul(H.mul(H.mul(H.place(F, {2, 3}, 3), H.delta_leg(F, 1)), H.phi),
                      H.delta_leg(F_inv, 0)),
                H.place(F_inv, {1, 2}, 3));
  T.phi_inv = H.mul(H.mul(H.mul(H.mul(H.place(F, {1, 2}, 3), H.delta_leg(F, 0)), H.phi_inv),
                          H.delta_leg(F_inv, 1)),
                    H.place(F_inv, {2, 3}, 3));

  const SpaceRegistry& reg = *H.reg;
  Tensor alpha_F(reg, {H.space}), beta_F(reg, {H.space});
  for (const auto& [k, c] : F_inv.ent) {
    std::uint32_t h = F_inv.leg_index(k, 0), kk = F_inv.leg_index(k, 1);
    SparseVec v = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_from_col(H.S, h), to_sparse(H.alpha)),
                         sv_basis(kk));
    for (const auto& [m, cm] : v) alpha_F.accumulate(m, c * cm);
  }
  for (const auto& [k, c] : F.ent) {
    std::uint32_t fidx = F.leg_index(k, 0), g = F.leg_index(k, 1);
    SparseVec v = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_basis(fidx), to_sparse(H.beta)),
                         sv_from_col(H.S, g));
    for (const auto& [m, cm] : v) beta_F.accumulate(m, c * cm);
  }
  T.alpha = alpha_F.prune(opt.prune);
  T.beta = beta_F.prune(opt.prune);

  if (H.R) {
    T.R = H.mul(H.mul(H.place(F, {2, 1}, 2), *H.R), F_inv);
    T.R_inv = H.mul(H.mul(F, *H.R_inv), H.place(F_inv, {2, 1}, 2));
  }
  return T;
}

std::pair<Tensor, Tensor> random_admissible_twist(const QuasiHopf& H, std::mt19937_64& rng,
                                                  const Options& opt) {
  const SpaceRegistry& reg = *H.reg;
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Tensor X(reg, H.legs(2));
    for (std::uint32_t i = 0; i < H.dim; ++i)
      for (std::uint32_t j = 0; j < H.dim; ++j) {
        cplx v(U(rng), U(rng));
        X.ent[X.strides[0] * i + j] = v;
      }
    // project onto the affine subspace of counit-normalized elements
    Tensor eX = apply_counit(X, 0, H.counit);   // one leg
    Tensor Xe = apply_counit(X, 1, H.counit);   // one leg
    cplx ee = H.eps_of(eX);
    Tensor corr = sub(sub(X, tensor_product(H.unit(), eX)), tensor_product(Xe, H.unit()));
    Tensor F = add(add(H.unit_n(2), corr), scale(H.unit_n(2), ee));
    F.prune(opt.prune);
    try {
      Tensor F_inv = invert_in_product_algebra(F);
      Tensor u = H.unit();
      if (residual(apply_counit(F, 0, H.counit), u) > opt.tol) continue;
      if (residual(apply_counit(F, 1, H.counit), u) > opt.tol) continue;
      return {F, F_inv};
    } catch (const Error&) {
      continue;
    }
  }
  throw Error("failed to sample an invertible admissible twist");
}

namespace {

std::uint32_t register_opposite(SpaceRegistry& reg, std::uint32_t space) {
  const AlgebraTable& t = reg[space];
  AlgebraTable o;
  o.name = t.name + "_op";
  o.dim = t.dim;
  o.has_product = true;
  o.unit = t.unit;
  o.table.resize(std::size_t(t.dim) * t.dim);
  for (std::uint32_t i = 0; i < t.dim; ++i)
    for (std::uint32_t j = 0; j < t.dim; ++j)
      o.table[std::uint64_t(i) * t.dim + j] = reg.product(space, j, i);
  return reg.add(std::move(o));
}

Tensor resign(const Tensor& t, std::uint32_t space) {
  Tensor r = t;
  for (auto& s : r.sig) s = space;
  return r;
}

}  // namespace

Variants variants(const QuasiHopf& H) {
  SpaceRegistry& reg = *H.reg;
  std::uint32_t op_space = register_opposite(reg, H.space);

  auto flip_map = [&](const SparseMap2& m, std::uint32_t target) {
    SparseMap2 f;
    f.to1 = f.to2 = target;
    f.entries.resize(m.entries.size());
    for (std::size_t i = 0; i < m.entries.size(); ++i)
      for (const auto& [jk, c] : m.entries[i]) f.entries[i].push_back({{jk.second, jk.first}, c});
    return f;
  };
  auto retarget = [&](const SparseMap2& m, std::uint32_t target) {
    SparseMap2 f = m;
    f.to1 = f.to2 = target;
    return f;
  };

  Variants v{H, H, H};

  // opposite multiplication
  v.op.space = op_space;
  v.op.coproduct = retarget(H.coproduct, op_space);
  v.op.phi = resign(H.phi_inv, op_space);
  v.op.phi_inv = resign(H.phi, op_space);
  v.op.S = H.S_inv;
  v.op.S_inv = H.S;
  v.op.alpha = resign(H.s_inv_of(H.beta), op_space);
  v.op.beta = resign(H.s_inv_of(H.alpha), op_space);
  if (H.R) {
    v.op.R = resign(*H.R_inv, op_space);
    v.op.R_inv = resign(*H.R, op_space);
  }

  // opposite comultiplication
  v.cop.coproduct = flip_map(H.coproduct, H.space);
  v.cop.phi = H.place(H.phi_inv, {3, 2, 1}, 3);
  v.cop.phi_inv = H.place(H.phi, {3, 2, 1}, 3);
  v.cop.S = H.S_inv;
  v.cop.S_inv = H.S;
  v.cop.alpha = H.s_inv_of(H.alpha);
  v.cop.beta = H.s_inv_of(H.beta);
  if (H.R) {
    v.cop.R = H.place(*H.R, {2, 1}, 2);
    v.cop.R_inv = H.place(*H.R_inv, {2, 1}, 2);
  }

  // both
  v.op_cop.space = op_space;
  v.op_cop.coproduct = flip_map(H.coproduct, op_space);
  v.op_cop.phi = resign(H.place(H.phi, {3, 2, 1}, 3), op_space);
  v.op_cop.phi_inv = resign(H.place(H.phi_inv, {3, 2, 1}, 3), op_space);
  v.op_cop.S = H.S;
  v.op_cop.S_inv = H.S_inv;
  v.op_cop.alpha = resign(H.beta, op_space);
  v.op_cop.beta = resign(H.alpha, op_space);
  if (H.R) {
    v.op_cop.R = resign(H.place(*H.R_inv, {2, 1}, 2), op_space);
    v.op_cop.R_inv = resign(H.place(*H.R, {2, 1}, 2), op_space);
  }
  return v;
}

Tensor r_inverse_formula(const QuasiHopf& H, const Options& opt, Report& rep) {
  rep.tol = opt.tol;
  if (!H.R) throw Error("r_inverse_formula requires a quasitriangular structure");
  const SpaceRegistry& reg = *H.reg;
  const Tensor& R = *H.R;
  PQElements pq = pq_elements_raw(H);

  // first expression
  Tensor M = H.mul(H.place(pq.q_rho, {2, 1}, 2), R);
  M = apply_matrix(M, 0, H.S);
  Tensor K(reg, H.legs(2));
  for (const auto& [k, c] : H.phi_inv.ent) {
    std::uint32_t p = H.phi_inv.leg_index(k, 0), q = H.phi_inv.leg_index(k, 1),
                  r = H.phi_inv.leg_index(k, 2);
    Tensor t = mul_leg_left(H.s_of(H.basis(p)), M, 0);
    t = mul_leg_right(t, 0, H.basis(r));
    t = mul_leg_right(t, 1, H.basis(q));
    K = add(K, scale(t, c));
  }
  K.prune(opt.prune);
  Tensor R1(reg, H.legs(2));
  for (const auto& [k, c] : H.phi.ent) {
    std::uint32_t x = H.phi.leg_index(k, 0), y = H.phi.leg_index(k, 1), z = H.phi.leg_index(k, 2);
    SparseVec e = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_basis(x), to_sparse(H.beta)),
                         sv_from_col(H.S, y));
    Tensor t = mul_leg_left(from_sparse(reg, H.space, e), K, 0);
    t = H.mul(t, H.delta_op(H.basis(z)));
    R1 = add(R1, scale(t, c));
  }
  R1.prune(opt.prune);

  // second expression
  Tensor M2 = H.mul(R, pq.p_rho);
  M2 = apply_matrix(M2, 1, H.S_inv);
  Tensor K2(reg, H.legs(2));
  for (const auto& [k, c] : H.phi.ent) {
    std::uint32_t x = H.phi.leg_index(k, 0), y = H.phi.leg_index(k, 1), z = H.phi.leg_index(k, 2);
    Tensor t = mul_leg_left(H.basis(y), M2, 0);
    t = mul_leg_left(H.basis(z), t, 1);
    t = mul_leg_right(t, 1, H.s_inv_of(H.basis(x)));
    K2 = add(K2, scale(t, c));
  }
  K2.prune(opt.prune);
  Tensor R2(reg, H.legs(2));
  for (const auto& [k, c] : H.phi_inv.ent) {
    std::uint32_t p = H.phi_inv.leg_index(k, 0), q = H.phi_inv.leg_index(k, 1),
                  r = H.phi_inv.leg_index(k, 2);
    Tensor t = H.mul(H.delta(H.basis(r)), K2);
    SparseVec tail = sv_mul(reg, H.space, sv_mul(reg, H.space, sv_from_col(H.S_inv, q),
                                                 to_sparse(H.s_inv_of(H.alpha))),
                            sv_basis(p));
    t = mul_leg_right(t, 1, from_sparse(reg, H.space, tail));
    R2 = add(R2, scale(t, c));
  }
  R2.prune(opt.prune);

  rep.add("inverse formulas agree", "rmatrix.inverse-formula-agreement", residual(R1, R2));
  Tensor one2 = H.unit_n(2);
  rep.add("formula is a left inverse", "rmatrix.inverse-left", residual(H.mul(R1, R), one2));
  rep.add("formula is a right inverse", "rmatrix.inverse-right", residual(H.mul(R, R1), one2));
  return R1;
}

Report antipode_image_check(const QuasiHopf& H, const Options& opt) {
  Report rep;
  rep.tol = opt.tol;
  if (!H.R) throw Error("antipode_image_check requires a quasitriangular structure");
  Report tw_rep;
  DerivedElements dt = derived_twists(H, opt, tw_rep);
  Tensor SSR = apply_matrix(apply_matrix(*H.R, 0, H.S), 1, H.S);
  rep.add("antipode square of R via gamma", "rmatrix.antipode-square-gamma",
          residual(H.mul(SSR, dt.gamma), H.mul(H.place(dt.gamma, {2, 1}, 2), *H.R)));
  Tensor lhs = H.mul(H.mul(H.place(dt.f, {2, 1}, 2), *H.R), dt.f_inv);
  rep.add("antipode square of R via f", "rmatrix.antipode-square-twist", residual(lhs, SSR));
  return rep;
}

Tensor random_element(const QuasiHopf& H, std::mt19937_64& rng, std::size_t nlegs) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> D(0, H.dim - 1);
  Tensor t(*H.reg, H.legs(nlegs));
  std::size_t terms = std::min<std::size_t>(4, H.dim);
  for (std::size_t s = 0; s < terms; ++s) {
    std::vector<std::uint32_t> idx(nlegs);
    for (auto& i : idx) i = D(rng);
    t.accumulate(t.encode(idx), cplx(U(rng), U(rng)));
  }
  return t;
}

}  // namespace qhd
