#include "group_double.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace qhd {

FiniteGroup make_group(std::string name, std::uint32_t order, std::vector<std::uint32_t> table) {
  if (order == 0 || table.size() != std::size_t(order) * order)
    throw Error("group table has wrong size");
  for (std::uint32_t v : table)
    if (v >= order) throw Error("group table entry out of range");
  FiniteGroup G;
  G.name = std::move(name);
  G.order = order;
  G.table = std::move(table);

  bool found = false;
  for (std::uint32_t e = 0; e < order && !found; ++e) {
    bool ok = true;
    for (std::uint32_t g = 0; g < order; ++g)
      if (G.mul(e, g) != g || G.mul(g, e) != g) {
        ok = false;
        break;
      }
    if (ok) {
      G.identity = e;
      found = true;
    }
  }
  if (!found) throw Error("group table has no identity element");

  for (std::uint32_t i = 0; i < order; ++i)
    for (std::uint32_t j = 0; j < order; ++j)
      for (std::uint32_t k = 0; k < order; ++k)
        if (G.mul(G.mul(i, j), k) != G.mul(i, G.mul(j, k)))
          throw Error("group table is not associative at triple (" + std::to_string(i) + "," +
                      std::to_string(j) + "," + std::to_string(k) + ")");

  G.inverse.resize(order);
  for (std::uint32_t g = 0; g < order; ++g) {
    bool ok = false;
    for (std::uint32_t h = 0; h < order; ++h)
      if (G.mul(g, h) == G.identity && G.mul(h, g) == G.identity) {
        G.inverse[g] = h;
        ok = true;
        break;
      }
    if (!ok) throw Error("group element " + std::to_string(g) + " has no inverse");
  }
  return G;
}

FiniteGroup cyclic_group(std::uint32_t n) {
  std::vector<std::uint32_t> t(std::size_t(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) t[i * n + j] = (i + j) % n;
  return make_group("z" + std::to_string(n), n, std::move(t));
}

FiniteGroup symmetric_group_3() {
  // permutations of {0,1,2}: e, (01), (02), (12), (012), (021)
  const std::array<std::array<std::uint32_t, 3>, 6> perms = {{
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1},
  }};
  auto compose = [&](int a, int b) {  // (a o b)(x) = a(b(x))
    std::array<std::uint32_t, 3> c{};
    for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
    for (int p = 0; p < 6; ++p)
      if (perms[p] == c) return p;
    throw Error("permutation composition escaped the table");
  };
  std::vector<std::uint32_t> t(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t[a * 6 + b] = compose(a, b);
  return make_group("s3", 6, std::move(t));
}

ThreeCocycle cocycle_from_table(const FiniteGroup& G, std::vector<cplx> values) {
  if (values.size() != std::size_t(G.order) * G.order * G.order)
    throw Error("cocycle table has wrong size");
  ThreeCocycle w;
  w.order = G.order;
  w.values = std::move(values);
  return w;
}

ThreeCocycle cyclic_standard_cocycle(const FiniteGroup& G, std::uint32_t p) {
  const std::uint32_t n = G.order;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (G.mul(i, j) != (i + j) % n)
        throw Error("standard cocycle family requires the cyclic presentation");
  std::vector<cplx> v(std::size_t(n) * n * n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c) {
        double arg = two_pi * double(p) * double(a) * double((b + c) / n) / double(n);
        v[(std::size_t(a) * n + b) * n + c] = std::polar(1.0, arg);
      }
  ThreeCocycle w;
  w.order = n;
  w.values = std::move(v);
  return w;
}

ThreeCocycle trivial_cocycle(const FiniteGroup& G) {
  ThreeCocycle w;
  w.order = G.order;
  w.values.assign(std::size_t(G.order) * G.order * G.order, cplx(1.0));
  return w;
}

Report verify_cocycle(const FiniteGroup& G, const ThreeCocycle& w, const Options& opt) {
  Report rep;
  rep.tol = opt.tol;
  const std::uint32_t n = G.order, e = G.identity;

  double worst = 0.0;
  std::string where;
  for (std::uint32_t g = 0; g < n; ++g)
    for (std::uint32_t h = 0; h < n; ++h)
      for (std::uint32_t k = 0; k < n; ++k) {
        if (g != e && h != e && k != e) {
          double m = std::abs(std::abs(w.at(g, h, k)) - 1.0);
          if (m > worst) {
            worst = m;
            where = "unit modulus at (" + std::to_string(g) + "," + std::to_string(h) + "," +
                    std::to_string(k) + ")";
          }
          continue;
        }
        double r = std::abs(w.at(g, h, k) - cplx(1.0));
        if (r > worst) {
          worst = r;
          where = "normalization at (" + std::to_string(g) + "," + std::to_string(h) + "," +
                  std::to_string(k) + ")";
        }
      }
  rep.add("cocycle normalized and unimodular", "cocycle.normalized", worst, worst > opt.tol ? where : "");

  worst = 0.0;
  where.clear();
  for (std::uint32_t g = 0; g < n; ++g)
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        for (std::uint32_t z = 0; z < n; ++z) {
          cplx lhs = w.at(g, x, y) * w.at(g, G.mul(x, y), z) * w.at(x, y, z);
          cplx rhs = w.at(G.mul(g, x), y, z) * w.at(g, x, G.mul(y, z));
          double r = std::abs(lhs - rhs);
          if (r > worst) {
            worst = r;
            where = "quadruple (" + std::to_string(g) + "," + std::to_string(x) + "," +
                    std::to_string(y) + "," + std::to_string(z) + ")";
          }
        }
  rep.add("degree-three cocycle identity", "cocycle.identity", worst, worst > opt.tol ? where : "");
  return rep;
}

QuasiHopf fun_qha(SpaceRegistry& reg, const FiniteGroup& G, const ThreeCocycle& w,
                  const Options& opt) {
  Report crep = verify_cocycle(G, w, opt);
  if (!crep.all_pass()) {
    for (const auto& c : crep.checks)
      if (!c.pass) throw Error("cocycle invalid: " + c.name + " (" + c.detail + ")");
  }
  const std::uint32_t n = G.order;

  std::vector<SparseVec> table(std::size_t(n) * n);
  for (std::uint32_t i = 0; i < n; ++i) table[std::size_t(i) * n + i] = {{i, cplx(1.0)}};
  SparseVec unit;
  for (std::uint32_t i = 0; i < n; ++i) unit.emplace_back(i, cplx(1.0));

  SparseMap2 cop;
  cop.entries.resize(n);
  for (std::uint32_t g = 0; g < n; ++g)
    for (std::uint32_t k = 0; k < n; ++k)
      for (std::uint32_t m = 0; m < n; ++m)
        if (G.mul(k, m) == g) cop.entries[g].push_back({{k, m}, cplx(1.0)});

  std::vector<cplx> counit(n, cplx(0.0));
  counit[G.identity] = 1.0;

  Mat S = Mat::Zero(n, n);
  for (std::uint32_t g = 0; g < n; ++g) S(G.inv(g), g) = 1.0;

  // Tensors are built on a scratch one-space registry footprint: the maker
  // re-signs them onto the registered space.
  std::uint32_t scratch = add_vector_space(reg, G.name + "_fun_scratch", n);
  Tensor phi_t(reg, {scratch, scratch, scratch});
  Tensor phi_inv_t(reg, {scratch, scratch, scratch});
  for (std::uint32_t g = 0; g < n; ++g)
    for (std::uint32_t h = 0; h < n; ++h)
      for (std::uint32_t k = 0; k < n; ++k) {
        cplx v = w.at(g, h, k);
        std::uint64_t key = (std::uint64_t(g) * n + h) * n + k;
        phi_t.ent[key] = v;
        phi_inv_t.ent[key] = cplx(1.0) / v;
      }
  Tensor alpha(reg, {scratch}), beta(reg, {scratch});
  for (std::uint32_t g = 0; g < n; ++g) {
    alpha.ent[g] = 1.0;
    beta.ent[g] = w.at(G.inv(g), g, G.inv(g));
  }

  bool abelian = true;
  for (std::uint32_t i = 0; i < n && abelian; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (G.mul(i, j) != G.mul(j, i)) {
        abelian = false;
        break;
      }
  bool trivial = true;
  for (const auto& v : w.values)
    if (std::abs(v - cplx(1.0)) > opt.prune) {
      trivial = false;
      break;
    }
  std::optional<Tensor> R, R_inv;
  if (abelian && trivial) {
    Tensor r(reg, {scratch, scratch});
    for (std::uint32_t g = 0; g < n; ++g)
      for (std::uint32_t h = 0; h < n; ++h) r.ent[std::uint64_t(g) * n + h] = 1.0;
    R = r;
    R_inv = r;
  }

  return make_quasi_hopf(reg, "fun_" + G.name + (trivial ? "" : "_tw"), n, std::move(table),
                         std::move(unit), std::move(cop), std::move(counit), phi_t, phi_inv_t, S,
                         alpha, beta, R, R_inv);
}

QuasiHopf group_algebra_qha(SpaceRegistry& reg, const FiniteGroup& G) {
  const std::uint32_t n = G.order;
  std::vector<SparseVec> table(std::size_t(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) table[std::size_t(i) * n + j] = {{G.mul(i, j), cplx(1.0)}};
  SparseVec unit{{G.identity, cplx(1.0)}};

  SparseMap2 cop;
  cop.entries.resize(n);
  for (std::uint32_t g = 0; g < n; ++g) cop.entries[g].push_back({{g, g}, cplx(1.0)});
  std::vector<cplx> counit(n, cplx(1.0));

  std::uint32_t scratch = add_vector_space(reg, "c" + G.name + "_scratch", n);
  Tensor phi(reg, {scratch, scratch, scratch});
  phi.ent[(std::uint64_t(G.identity) * n + G.identity) * n + G.identity] = 1.0;
  Mat S = Mat::Zero(n, n);
  for (std::uint32_t g = 0; g < n; ++g) S(G.inv(g), g) = 1.0;
  Tensor alpha(reg, {scratch}), beta(reg, {scratch});
  alpha.ent[G.identity] = 1.0;
  beta.ent[G.identity] = 1.0;
  Tensor R(reg, {scratch, scratch});
  R.ent[std::uint64_t(G.identity) * n + G.identity] = 1.0;

  return make_quasi_hopf(reg, "c" + G.name, n, std::move(table), std::move(unit), std::move(cop),
                         std::move(counit), phi, phi, S, alpha, beta, R, R);
}

cplx ExplicitDouble::product_coefficient(std::uint32_t x, std::uint32_t y, std::uint32_t t) const {
  const FiniteGroup& G = group;
  std::uint32_t yty = G.mul(G.mul(y, t), G.inv(y));
  std::uint32_t xy = G.mul(x, y);
  std::uint32_t xyt = G.mul(G.mul(xy, t), G.inv(xy));
  return w.at(x, yty, y) / (w.at(xyt, x, y) * w.at(x, y, t));
}

ExplicitDouble explicit_double(SpaceRegistry& reg, const FiniteGroup& G, const ThreeCocycle& w,
                     const Options& opt, Report& rep) {
  rep.tol = opt.tol;
  const std::uint32_t n = G.order;
  const std::uint32_t N = n * n;
  ExplicitDouble dd;
  dd.group = G;
  dd.w = w;

  auto conj_by = [&](std::uint32_t h, std::uint32_t g) {  // h^-1 g h
    return G.mul(G.mul(G.inv(h), g), h);
  };
  auto coeff = [&](std::uint32_t x, std::uint32_t y, std::uint32_t t) {
    std::uint32_t yty = G.mul(G.mul(y, t), G.inv(y));
    std::uint32_t xy = G.mul(x, y);
    std::uint32_t xyt = G.mul(G.mul(xy, t), G.inv(xy));
    return w.at(x, yty, y) / (w.at(xyt, x, y) * w.at(x, y, t));
  };

  AlgebraTable t;
  t.name = "explicit_double_" + G.name;
  t.dim = N;
  t.has_product = true;
  for (std::uint32_t g = 0; g < n; ++g) t.unit.emplace_back(G.identity * n + g, cplx(1.0));
  t.table.resize(std::size_t(N) * N);
  for (std::uint32_t h = 0; h < n; ++h)
    for (std::uint32_t g = 0; g < n; ++g)
      for (std::uint32_t h2 = 0; h2 < n; ++h2)
        for (std::uint32_t g2 = 0; g2 < n; ++g2) {
          // (h (x) delta_g)(h2 (x) delta_g2): the commutation rule moves
          // delta_g across h2, the delta factors then multiply pointwise and
          // the group-like product contributes its cocycle coefficient.
          if (conj_by(h2, g) != g2) continue;
          cplx c = coeff(h, h2, g2);
          t.table[std::uint64_t(h * n + g) * N + (h2 * n + g2)] = {{G.mul(h, h2) * n + g2, c}};
        }
  dd.space = reg.add(std::move(t));

  // coproduct
  dd.coproduct.to1 = dd.coproduct.to2 = dd.space;
  dd.coproduct.entries.resize(N);
  auto kappa = [&](std::uint32_t h, std::uint32_t r, std::uint32_t s) {
    std::uint32_t hrh = G.mul(G.mul(h, r), G.inv(h));
    std::uint32_t hsh = G.mul(G.mul(h, s), G.inv(h));
    return w.at(hrh, h, s) / (w.at(h, r, s) * w.at(hrh, hsh, h));
  };
  for (std::uint32_t h = 0; h < n; ++h)
    for (std::uint32_t g = 0; g < n; ++g)
      for (std::uint32_t k = 0; k < n; ++k) {
        std::uint32_t m = G.mul(G.inv(k), g);
        dd.coproduct.entries[h * n + g].push_back({{h * n + k, h * n + m}, kappa(h, k, m)});
      }

  // associativity and unit of the explicit presentation
  double worst = 0.0;
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = 0; b < N; ++b) {
      const SparseVec& ab = reg.product(dd.space, a, b);
      for (std::uint32_t c = 0; c < N; ++c) {
        SparseVec l = sv_mul(reg, dd.space, ab, sv_basis(c));
        SparseVec r = sv_mul(reg, dd.space, sv_basis(a), reg.product(dd.space, b, c));
        worst = std::max(worst, residual(from_sparse(reg, dd.space, l), from_sparse(reg, dd.space, r)));
      }
    }
  rep.add("explicit double associative", "explicit-double.assoc", worst);

  Tensor one = unit_tensor(reg, {dd.space});
  worst = 0.0;
  for (std::uint32_t a = 0; a < N; ++a) {
    Tensor e = basis_tensor(reg, dd.space, a);
    worst = std::max(worst, residual(multiply(one, e), e));
    worst = std::max(worst, residual(multiply(e, one), e));
  }
  rep.add("explicit double unit", "explicit-double.unit", worst);

  // record the squared-generator coefficients of the first non-identity x
  if (n > 1) {
    std::uint32_t x = (G.identity == 0) ? 1 : 0;
    std::string detail = "(x (x) 1)^2 coefficients for x=" + std::to_string(x) + ":";
    for (std::uint32_t tt = 0; tt < n; ++tt) {
      cplx c = coeff(x, x, tt);
      detail += " delta_" + std::to_string(tt) + "=" + std::to_string(c.real()) +
                (c.imag() >= 0 ? "+" : "") + std::to_string(c.imag()) + "i";
    }
    rep.add("generator square coefficients", "explicit-double.generator-product", 0.0, detail);
  }
  return dd;
}

Report sigma_check(const FiniteGroup& G, const ThreeCocycle&, const DoubleAlgebra& da,
                   const ExplicitDouble& xd, const Options& opt) {
  Report rep;
  rep.tol = opt.tol;
  const SpaceRegistry& reg = *da.base.reg;
  const std::uint32_t n = G.order, N = n * n;

  // sigma(h (x) delta_g) = D(e^h) i_D(delta_g)
  Mat sigma = Mat::Zero(N, N);
  for (std::uint32_t h = 0; h < n; ++h)
    for (std::uint32_t g = 0; g < n; ++g) {
      Tensor v = multiply(da.D_of(da.dual.basis(reg, h)), da.iD_of(da.base.basis(g)));
      for (const auto& [k, c] : v.ent) sigma(static_cast<long>(k), h * n + g) = c;
    }
  Eigen::FullPivLU<Mat> lu(sigma);
  lu.setThreshold(1e-10);
  rep.require("sigma is a linear bijection", "explicit-double.sigma-bijective", lu.isInvertible(),
              "rank " + std::to_string(lu.rank()) + " of " + std::to_string(N));
  if (!lu.isInvertible()) return rep;
  Mat sigma_inv = lu.inverse();

  auto push = [&](const Mat& m, const SparseVec& v) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(N);
    for (const auto& [i, c] : v) x(i) += c;
    Eigen::VectorXcd y = m * x;
    SparseVec out;
    for (std::uint32_t i = 0; i < N; ++i)
      if (std::abs(y(i)) > 1e-14) out.emplace_back(i, y(i));
    return out;
  };

  double worst = 0.0;
  std::string where;
  for (std::uint32_t a = 0; a < N; ++a)
    for (std::uint32_t b = 0; b < N; ++b) {
      SparseVec generic = sv_mul(reg, da.dspace, push(sigma, sv_basis(a)), push(sigma, sv_basis(b)));
      SparseVec transported = push(sigma_inv, generic);
      double r = residual(from_sparse(reg, xd.space, transported),
                          from_sparse(reg, xd.space, reg.product(xd.space, a, b)));
      if (r > worst) {
        worst = r;
        where = "basis pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
    }
  rep.add("product transport matches", "explicit-double.product-transport", worst, worst > opt.tol ? where : "");

  worst = 0.0;
  where.clear();
  for (std::uint32_t a = 0; a < N; ++a) {
    // (sigma^-1 (x) sigma^-1) Delta_D(sigma(e_a)) vs the explicit coproduct
    Tensor img(reg, {da.dspace, da.dspace});
    for (const auto& [i, ci] : push(sigma, sv_basis(a)))
      for (const auto& [jk, c] : da.dbl.coproduct.entries[i])
        img.accumulate(img.strides[0] * jk.first + jk.second, ci * c);
    // transport both legs back
    Tensor back(reg, {xd.space, xd.space});
    for (const auto& [k, c] : img.ent) {
      std::uint32_t i = img.leg_index(k, 0), j = img.leg_index(k, 1);
      for (const auto& [ii, ci] : push(sigma_inv, sv_basis(i)))
        for (const auto& [jj, cj] : push(sigma_inv, sv_basis(j)))
          back.accumulate(back.strides[0] * ii + jj, c * ci * cj);
    }
    back.prune(opt.prune);
    Tensor expect(reg, {xd.space, xd.space});
    for (const auto& [jk, c] : xd.coproduct.entries[a])
      expect.accumulate(expect.strides[0] * jk.first + jk.second, c);
    double r = residual(back, expect);
    if (r > worst) {
      worst = r;
      where = "basis element " + std::to_string(a);
    }
  }
  rep.add("coproduct transport matches", "explicit-double.coproduct-transport", worst,
          worst > opt.tol ? where : "");
  return rep;
}

}  // namespace qhd
