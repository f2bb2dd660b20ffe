#include "reps.hpp"

#include <algorithm>

namespace qhd {

namespace {

std::uint32_t register_end_space(SpaceRegistry& reg, const std::string& name, std::uint32_t vd) {
  AlgebraTable t;
  t.name = name;
  t.dim = vd * vd;
  t.has_product = true;
  t.lazy = true;
  t.eval = [vd](std::uint32_t a, std::uint32_t b) -> SparseVec {
    std::uint32_t k = a / vd, l = a % vd, m = b / vd, nn = b % vd;
    if (l != m) return {};
    return {{k * vd + nn, cplx(1.0)}};
  };
  for (std::uint32_t k = 0; k < vd; ++k) t.unit.emplace_back(k * vd + k, cplx(1.0));
  return reg.add(std::move(t));
}

SparseVec mat_to_vec(const Mat& m) {
  SparseVec v;
  const std::uint32_t vd = static_cast<std::uint32_t>(m.rows());
  for (std::uint32_t k = 0; k < vd; ++k)
    for (std::uint32_t l = 0; l < vd; ++l)
      if (m(k, l) != cplx(0.0)) v.emplace_back(k * vd + l, m(k, l));
  return v;
}

Mat vec_to_mat(const Tensor& one_leg, std::uint32_t vd) {
  Mat m = Mat::Zero(vd, vd);
  for (const auto& [k, c] : one_leg.ent)
    m(static_cast<long>(k) / vd, static_cast<long>(k) % vd) += c;
  return m;
}

std::vector<cplx> indicator(std::uint32_t dim, std::uint32_t i) {
  std::vector<cplx> v(dim, cplx(0.0));
  v[i] = 1.0;
  return v;
}

LinMap pi_linmap(const QuasiHopf& H, const GModule& V) {
  LinMap m;
  m.from = H.space;
  m.to = V.end_space;
  m.cols.resize(H.dim);
  for (std::uint32_t i = 0; i < H.dim; ++i) m.cols[i] = mat_to_vec(V.rep[i]);
  return m;
}

}  // namespace

Mat GModule::act(const Tensor& a) const {
  Mat m = Mat::Zero(vdim, vdim);
  for (const auto& [k, c] : a.ent) m += c * rep[static_cast<std::uint32_t>(k)];
  return m;
}

GModule make_module(const QuasiHopf& H, std::vector<Mat> rep, const Options& opt, Report* rep_out) {
  if (rep.size() != H.dim) throw Error("module needs one matrix per basis element");
  GModule V;
  V.vdim = static_cast<std::uint32_t>(rep.front().rows());
  for (const Mat& m : rep)
    if (m.rows() != V.vdim || m.cols() != V.vdim) throw Error("module matrices must be square");
  V.rep = std::move(rep);
  V.vspace = add_vector_space(*H.reg, "module_" + std::to_string(V.vdim), V.vdim);
  V.end_space = register_end_space(*H.reg, "end_" + std::to_string(V.vdim), V.vdim);

  if (rep_out) {
    rep_out->tol = opt.tol;
    double worst = (V.act(H.unit()) - Mat::Identity(V.vdim, V.vdim)).cwiseAbs().maxCoeff();
    for (std::uint32_t i = 0; i < H.dim; ++i)
      for (std::uint32_t j = 0; j < H.dim; ++j) {
        Mat lhs = V.act(H.mul(H.basis(i), H.basis(j)));
        worst = std::max(worst, (lhs - V.rep[i] * V.rep[j]).cwiseAbs().maxCoeff());
      }
    rep_out->add("module action is a unital morphism", "module.morphism", worst);
  }
  return V;
}

GModule restricted_regular_module(const DoubleAlgebra& da, const Options& opt, Report* rep_out) {
  const SpaceRegistry& reg = *da.base.reg;
  const std::uint32_t N = da.base.dim * da.base.dim;
  std::vector<Mat> rep;
  rep.reserve(da.base.dim);
  for (std::uint32_t i = 0; i < da.base.dim; ++i) {
    Mat m = Mat::Zero(N, N);
    for (const auto& [k, ck] : da.iD.cols[i])
      for (std::uint32_t j = 0; j < N; ++j)
        for (const auto& [r, cr] : reg.product(da.dspace, k, j)) m(r, j) += ck * cr;
    rep.push_back(std::move(m));
  }
  return make_module(da.base, std::move(rep), opt, rep_out);
}

GModule trivial_module(const QuasiHopf& H, const Options& opt) {
  std::vector<Mat> rep(H.dim, Mat::Zero(1, 1));
  for (std::uint32_t i = 0; i < H.dim; ++i) rep[i](0, 0) = H.counit[i];
  return make_module(H, std::move(rep), opt, nullptr);
}

DeltaFlip flip_from_double(const DoubleAlgebra& da, const GModule& V) {
  const SpaceRegistry& reg = *da.base.reg;
  const std::uint32_t N = da.base.dim * da.base.dim;
  if (V.vdim != N) throw Error("flip_from_double expects the restricted regular module");
  LinMap L;
  L.from = da.dspace;
  L.to = V.end_space;
  L.cols.resize(N);
  for (std::uint32_t k = 0; k < N; ++k) {
    SparseVec col;
    for (std::uint32_t j = 0; j < N; ++j)
      for (const auto& [r, cr] : reg.product(da.dspace, k, j)) col.emplace_back(r * N + j, cr);
    L.cols[k] = sparse_combine(col);
  }
  DeltaFlip f;
  f.D_V = apply_linmap(da.D, 1, L);
  return f;
}

DeltaFlip unit_flip(const QuasiHopf& H, const GModule& V) {
  DeltaFlip f;
  f.D_V = unit_tensor(*H.reg, {H.space, V.end_space});
  return f;
}

Report check_flip(const QuasiHopf& H, const GModule& V, const DeltaFlip& DV, const Options& opt) {
  Report rep;
  rep.tol = opt.tol;
  LinMap pi = pi_linmap(H, V);

  {
    Tensor idv = contract_leg(DV.D_V, 0, H.counit);
    rep.add("flip normality", "flip.normal",
            (vec_to_mat(idv, V.vdim) - Mat::Identity(V.vdim, V.vdim)).cwiseAbs().maxCoeff());
  }
  {
    double worst = 0.0;
    for (std::uint32_t i = 0; i < H.dim; ++i) {
      Tensor d = H.delta(H.basis(i));
      Tensor lhs = multiply(DV.D_V, apply_linmap(d, 1, pi));
      Tensor rhs = multiply(apply_linmap(H.place(d, {2, 1}, 2), 1, pi), DV.D_V);
      worst = std::max(worst, residual(lhs, rhs));
    }
    rep.add("flip relation on the module", "flip.relation", worst);
  }
  {
    std::vector<std::uint32_t> sig{H.space, H.space, V.end_space};
    auto emb = [&](const Tensor& x3) { return apply_linmap(x3, 2, pi); };
    Tensor lhs = multiply(emb(H.place(H.phi, {3, 1, 2}, 3)), leg_embed(DV.D_V, {0, 2}, sig));
    lhs = multiply(lhs, emb(H.place(H.phi_inv, {1, 3, 2}, 3)));
    lhs = multiply(lhs, leg_embed(DV.D_V, {1, 2}, sig));
    lhs = multiply(lhs, emb(H.phi));
    rep.add("flip coherence on the module", "flip.coherence",
            residual(lhs, H.delta_leg(DV.D_V, 0)));
  }
  return rep;
}

DModule extend_rep(const DoubleAlgebra& da, const GModule& V, const DeltaFlip& DV,
                   const Options& opt, Report& rep) {
  rep.tol = opt.tol;
  const QuasiHopf& H = da.base;
  const SpaceRegistry& reg = *H.reg;
  const std::uint32_t n = H.dim, N = n * n;

  auto DV_mat = [&](std::uint32_t sigma) {
    return vec_to_mat(contract_leg(DV.D_V, 0, indicator(n, sigma)), V.vdim);
  };

  DModule M;
  M.V = &V;
  M.rep_d.resize(N);
  for (std::uint32_t mu = 0; mu < n; ++mu)
    for (std::uint32_t i = 0; i < n; ++i) {
      Mat m = Mat::Zero(V.vdim, V.vdim);
      for (const auto& [rs, c] : da.dual.dual_coproduct.entries[mu]) {
        Tensor q1 = contract_leg(da.pq.q_rho, 1, indicator(n, rs.first));
        m += c * (V.act(q1) * DV_mat(rs.second) * V.rep[i]);
      }
      M.rep_d[da.fuse(mu, i)] = m;
    }

  // unital + multiplicative on the whole crossed-product basis
  Mat unit_img = Mat::Zero(V.vdim, V.vdim);
  for (const auto& [k, c] : reg[da.dspace].unit) unit_img += c * M.rep_d[k];
  double worst = (unit_img - Mat::Identity(V.vdim, V.vdim)).cwiseAbs().maxCoeff();
  rep.add("extension is unital", "extend.unital", worst);

  worst = 0.0;
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = 0; b < N; ++b) {
      Mat prod = M.rep_d[a] * M.rep_d[b];
      Mat expect = Mat::Zero(V.vdim, V.vdim);
      for (const auto& [k, c] : reg.product(da.dspace, a, b)) expect += c * M.rep_d[k];
      worst = std::max(worst, (prod - expect).cwiseAbs().maxCoeff());
    }
  rep.add("extension is multiplicative", "extend.multiplicative", worst);

  // restriction round-trip: (id (x) pi^D)(D) reproduces the flip
  {
    LinMap lm;
    lm.from = da.dspace;
    lm.to = V.end_space;
    lm.cols.resize(N);
    for (std::uint32_t k = 0; k < N; ++k) lm.cols[k] = mat_to_vec(M.rep_d[k]);
    rep.add("restriction reproduces the flip", "extend.roundtrip",
            residual(apply_linmap(da.D, 1, lm), DV.D_V));
  }
  return M;
}

Report module_conditions(const QuasiHopf& H, const GModule& V, const DeltaFlip& DV,
                        const Options& opt) {
  Report rep;
  rep.tol = opt.tol;
  const SpaceRegistry& reg = *H.reg;
  const std::uint32_t vd = V.vdim;

  // beta_V(v_j) as a two-leg tensor over (G, V)
  auto beta_of = [&](std::uint32_t j) {
    Tensor out(reg, {H.space, V.vspace});
    for (const auto& [k, c] : DV.D_V.ent) {
      std::uint32_t g = DV.D_V.leg_index(k, 0), e = DV.D_V.leg_index(k, 1);
      if (e % vd == j) out.accumulate(out.strides[0] * g + (e / vd), c);
    }
    return out;
  };
  auto beta_of_vec = [&](const Eigen::VectorXcd& v) {
    Tensor out(reg, {H.space, V.vspace});
    for (std::uint32_t j = 0; j < vd; ++j)
      if (v(j) != cplx(0.0)) out = add(out, scale(beta_of(j), v(j)));
    return out;
  };
  // expands the V leg of a (..., V) tensor through beta
  auto beta_on_leg = [&](const Tensor& t, std::size_t leg) {
    std::vector<std::uint32_t> sig;
    for (std::size_t l = 0; l < t.sig.size(); ++l) {
      sig.push_back(t.sig[l]);
      if (l == leg) {
        sig.back() = H.space;
        sig.push_back(V.vspace);
      }
    }
    Tensor out(reg, sig);
    for (const auto& [k, c] : t.ent) {
      auto idx = t.decode(k);
      Tensor b = beta_of(idx[leg]);
      for (const auto& [kb, cb] : b.ent) {
        std::vector<std::uint32_t> oidx;
        for (std::size_t l = 0; l < t.sig.size(); ++l) {
          if (l == leg) {
            oidx.push_back(b.leg_index(kb, 0));
            oidx.push_back(b.leg_index(kb, 1));
          } else {
            oidx.push_back(idx[l]);
          }
        }
        out.accumulate(out.encode(oidx), c * cb);
      }
    }
    return out;
  };
  auto apply_pi_leg = [&](const Tensor& t, std::size_t leg, const Mat& m) {
    return apply_matrix(t, leg, m);
  };

  // (i')
  {
    double worst = 0.0;
    for (std::uint32_t j = 0; j < vd; ++j) {
      Tensor b = contract_leg(beta_of(j), 0, H.counit);
      Tensor expect(reg, {V.vspace});
      expect.ent[j] = 1.0;
      worst = std::max(worst, residual(b, expect));
    }
    rep.add("normality via beta", "module-form.normal", worst);
  }

  // (ii')
  {
    double worst = 0.0;
    for (std::uint32_t i = 0; i < H.dim; ++i)
      for (std::uint32_t j = 0; j < vd; ++j) {
        Tensor lhs(reg, {H.space, V.vspace}), rhs(reg, {H.space, V.vspace});
        for (const auto& [a12, c] : H.coproduct.entries[i]) {
          Eigen::VectorXcd w = V.rep[a12.second].col(j);
          Tensor bw = beta_of_vec(w);
          lhs = add(lhs, scale(mul_leg_right(bw, 0, H.basis(a12.first)), c));
          Tensor bj = beta_of(j);
          bj = mul_leg_left(H.basis(a12.second), bj, 0);
          bj = apply_pi_leg(bj, 1, V.rep[a12.first]);
          rhs = add(rhs, scale(bj, c));
        }
        worst = std::max(worst, residual(lhs, rhs));
      }
    rep.add("flip relation via beta", "module-form.relation", worst);
  }

  // (iii')
  {
    double worst = 0.0;
    for (std::uint32_t j = 0; j < vd; ++j) {
      Tensor lhs(reg, {H.space, H.space, V.vspace}), rhs(reg, {H.space, H.space, V.vspace});
      for (const auto& [k, c] : H.phi_inv.ent) {
        std::uint32_t p = H.phi_inv.leg_index(k, 0), q = H.phi_inv.leg_index(k, 1),
                      r = H.phi_inv.leg_index(k, 2);
        {
          Tensor b = beta_of(j);
          b = apply_pi_leg(b, 1, V.rep[q]);
          Tensor bb = beta_on_leg(b, 1);             // legs (G, G, V)
          bb = mul_leg_left(H.basis(r), bb, 0);      // R^i v^(1)
          bb = mul_leg_right(bb, 1, H.basis(p));     // ... P^i
          lhs = add(lhs, scale(bb, c));
        }
        {
          Eigen::VectorXcd w = V.rep[r].col(j);
          Tensor bw = beta_of_vec(w);                 // legs (G, V)
          Tensor dd = H.delta_leg(bw, 0);             // legs (G1, G2, V)
          dd = leg_embed(dd, {1, 0, 2}, {H.space, H.space, V.vspace});  // swap Sweedler legs
          dd = mul_leg_right(dd, 0, H.basis(q));
          dd = mul_leg_right(dd, 1, H.basis(p));
          rhs = add(rhs, scale(dd, c));
        }
      }
      // multiply rhs by the reversed inverse reassociator acting through pi
      Tensor dressed(reg, {H.space, H.space, V.vspace});
      for (const auto& [k, c] : H.phi_inv.ent) {
        std::uint32_t p = H.phi_inv.leg_index(k, 0), q = H.phi_inv.leg_index(k, 1),
                      r = H.phi_inv.leg_index(k, 2);
        Tensor t = mul_leg_left(H.basis(r), rhs, 0);
        t = mul_leg_left(H.basis(q), t, 1);
        t = apply_pi_leg(t, 2, V.rep[p]);
        dressed = add(dressed, scale(t, c));
      }
      worst = std::max(worst, residual(lhs, dressed));
    }
    rep.add("flip coherence via beta", "module-form.coherence", worst);
  }
  return rep;
}

HomCheckResult hom_check(const DoubleAlgebra& da, const GModule& V, const DeltaFlip& DV,
                         const GModule& W, const DeltaFlip& DW, const Mat& t, const Options& opt) {
  if (t.rows() != W.vdim || t.cols() != V.vdim) throw Error("hom_check: shape mismatch");
  const QuasiHopf& H = da.base;
  const std::uint32_t n = H.dim;
  HomCheckResult res;

  double worst = 0.0;
  for (std::uint32_t i = 0; i < n; ++i)
    worst = std::max(worst, (t * V.rep[i] - W.rep[i] * t).cwiseAbs().maxCoeff());
  res.base_intertwiner = worst <= opt.tol;

  auto DV_mat = [&](const DeltaFlip& f, const GModule& M, std::uint32_t sigma) {
    std::vector<cplx> cov(n, cplx(0.0));
    cov[sigma] = 1.0;
    return vec_to_mat(contract_leg(f.D_V, 0, cov), M.vdim);
  };
  worst = 0.0;
  for (std::uint32_t s = 0; s < n; ++s)
    worst = std::max(worst, (t * DV_mat(DV, V, s) - DV_mat(DW, W, s) * t).cwiseAbs().maxCoeff());
  res.flip_intertwiner = worst <= opt.tol;

  Report scratch;
  scratch.tol = opt.tol;
  DModule mv = extend_rep(da, V, DV, opt, scratch);
  DModule mw = extend_rep(da, W, DW, opt, scratch);
  worst = 0.0;
  for (std::uint32_t k = 0; k < n * n; ++k)
    worst = std::max(worst, (t * mv.rep_d[k] - mw.rep_d[k] * t).cwiseAbs().maxCoeff());
  res.extended_intertwiner = worst <= opt.tol;

  res.verdict = res.base_intertwiner && res.flip_intertwiner;
  return res;
}

}  // namespace qhd
