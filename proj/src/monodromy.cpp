#include "monodromy.hpp"

namespace qhd {

MonodromyData monodromy_matrix(const DoubleAlgebra& da, const Options& opt) {
  const QuasiHopf& H = da.base;
  if (!H.R) throw Error("monodromy requires a quasitriangular base");
  MonodromyData md;
  Tensor rop = apply_linmap(H.place(*H.R, {2, 1}, 2), 1, da.iD);
  md.M = multiply(rop, da.D).prune(opt.prune);

  std::vector<std::uint32_t> sig{H.space, H.space, da.dspace};
  auto emb = [&](const Tensor& x3) { return apply_linmap(x3, 2, da.iD); };
  Tensor r12 = leg_embed(*H.R, {0, 1}, sig);
  md.R_hat = multiply(multiply(emb(H.place(H.phi, {2, 1, 3}, 3)), r12), emb(H.phi_inv));
  md.R_hat.prune(opt.prune);
  return md;
}

double exchange_residual(const DoubleAlgebra& da, const Tensor& candidate, const Tensor& R_hat) {
  const QuasiHopf& H = da.base;
  std::vector<std::uint32_t> sig{H.space, H.space, da.dspace};
  auto emb = [&](const Tensor& x3) { return apply_linmap(x3, 2, da.iD); };
  Tensor lhs = multiply(multiply(leg_embed(candidate, {0, 2}, sig), R_hat),
                        leg_embed(candidate, {1, 2}, sig));
  Tensor rhs = multiply(multiply(multiply(R_hat, emb(H.phi)), H.delta_leg(candidate, 0)),
                        emb(H.phi_inv));
  return residual(lhs, rhs);
}

Report verify_monodromy(const DoubleAlgebra& da, const MonodromyData& md, const Options& opt,
                        bool rank_check) {
  Report rep;
  rep.tol = opt.tol;
  const QuasiHopf& H = da.base;

  rep.add("monodromy counit normalization", "monodromy.counit",
          residual(apply_counit(md.M, 0, H.counit), da.unit_d()));

  double worst = 0.0;
  for (std::uint32_t i = 0; i < H.dim; ++i) {
    Tensor d = apply_linmap(H.delta(H.basis(i)), 1, da.iD);
    worst = std::max(worst, residual(multiply(d, md.M), multiply(md.M, d)));
  }
  rep.add("monodromy commutes with the embedded coproduct", "monodromy.commutes", worst);

  rep.add("monodromy exchange relation", "monodromy.exchange",
          exchange_residual(da, md.M, md.R_hat));

  if (rank_check) {
    const std::uint32_t n = H.dim, N = n * n;
    Mat nu = Mat::Zero(N, N);
    for (std::uint32_t mu = 0; mu < n; ++mu) {
      Tensor Mmu = contract_leg(md.M, 0, [&] {
        std::vector<cplx> v(n, cplx(0.0));
        v[mu] = 1.0;
        return v;
      }());
      for (std::uint32_t i = 0; i < n; ++i) {
        Tensor col = multiply(Mmu, da.iD_of(H.basis(i)));
        for (const auto& [k, c] : col.ent) nu(static_cast<long>(k), mu * n + i) = c;
      }
    }
    Eigen::FullPivLU<Mat> lu(nu);
    lu.setThreshold(1e-10);
    rep.require("monodromy generator map is bijective", "monodromy.bijective", lu.isInvertible(),
                "rank " + std::to_string(lu.rank()) + " of " + std::to_string(N));
  }
  return rep;
}

}  // namespace qhd
