#include "tensor.hpp"

#include <algorithm>
#include <cmath>

namespace qhd {

SparseVec sparse_combine(const SparseVec& v, double prune) {
  std::unordered_map<std::uint32_t, cplx> acc;
  for (const auto& [i, c] : v) acc[i] += c;
  SparseVec out;
  out.reserve(acc.size());
  for (const auto& [i, c] : acc)
    if (std::abs(c) > prune) out.emplace_back(i, c);
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

SparseVec sv_basis(std::uint32_t i) { return {{i, cplx(1.0)}}; }

SparseVec sv_matcol(const Mat& m, std::uint32_t j) {
  SparseVec v;
  for (long i = 0; i < m.rows(); ++i)
    if (m(i, j) != cplx(0.0)) v.emplace_back(static_cast<std::uint32_t>(i), m(i, j));
  return v;
}

SparseVec sv_apply(const Mat& m, const SparseVec& v) {
  SparseVec out;
  for (const auto& [j, c] : v)
    for (const auto& [i, ci] : sv_matcol(m, j)) out.emplace_back(i, c * ci);
  return sparse_combine(out, 1e-15);
}

SparseVec sv_mul(const SpaceRegistry& reg, std::uint32_t space, const SparseVec& a,
                 const SparseVec& b) {
  SparseVec out;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b)
      for (const auto& [k, ck] : reg.product(space, i, j)) out.emplace_back(k, ci * cj * ck);
  return sparse_combine(out, 1e-15);
}

SparseVec sv_scale(const SparseVec& v, cplx c) {
  SparseVec out = v;
  for (auto& [i, ci] : out) ci *= c;
  return out;
}

std::uint32_t SpaceRegistry::add(AlgebraTable t) {
  if (t.has_product && !t.lazy) {
    if (t.table.size() != static_cast<std::size_t>(t.dim) * t.dim)
      throw Error("algebra table size mismatch for space " + t.name);
    // Detect function-algebra style support so multiply() can hash-join.
    t.diagonal = true;
    for (std::uint32_t i = 0; i < t.dim && t.diagonal; ++i)
      for (std::uint32_t j = 0; j < t.dim; ++j)
        if (i != j && !t.table[std::uint64_t(i) * t.dim + j].empty()) {
          t.diagonal = false;
          break;
        }
  }
  spaces_.push_back(std::move(t));
  return static_cast<std::uint32_t>(spaces_.size() - 1);
}

const SparseVec& SpaceRegistry::product(std::uint32_t space, std::uint32_t i, std::uint32_t j) const {
  const AlgebraTable& t = spaces_.at(space);
  if (!t.has_product) throw Error("space " + t.name + " carries no multiplication");
  if (!t.lazy) return t.table[std::uint64_t(i) * t.dim + j];
  std::uint64_t key = std::uint64_t(i) * t.dim + j;
  auto it = t.memo.find(key);
  if (it != t.memo.end()) return it->second;
  return t.memo.emplace(key, t.eval(i, j)).first->second;
}

std::uint32_t add_vector_space(SpaceRegistry& reg, std::string name, std::uint32_t dim) {
  AlgebraTable t;
  t.name = std::move(name);
  t.dim = dim;
  t.has_product = false;
  return reg.add(std::move(t));
}

Tensor::Tensor(const SpaceRegistry& r, std::vector<std::uint32_t> signature)
    : reg(&r), sig(std::move(signature)) {
  strides.assign(sig.size(), 1);
  // mixed-radix strides, last leg fastest
  std::uint64_t s = 1;
  for (std::size_t l = sig.size(); l-- > 0;) {
    strides[l] = s;
    std::uint64_t d = reg->dim(sig[l]);
    if (s > (~0ULL) / (d ? d : 1)) throw Error("tensor index space overflows 64 bits");
    s *= d;
  }
}

std::uint64_t Tensor::encode(const std::vector<std::uint32_t>& idx) const {
  if (idx.size() != sig.size()) throw Error("multi-index arity mismatch");
  std::uint64_t k = 0;
  for (std::size_t l = 0; l < idx.size(); ++l) {
    if (idx[l] >= dim(l)) throw Error("multi-index out of bounds");
    k += strides[l] * idx[l];
  }
  return k;
}

std::vector<std::uint32_t> Tensor::decode(std::uint64_t key) const {
  std::vector<std::uint32_t> idx(sig.size());
  for (std::size_t l = 0; l < sig.size(); ++l) idx[l] = leg_index(key, l);
  return idx;
}

cplx Tensor::at(const std::vector<std::uint32_t>& idx) const {
  auto it = ent.find(encode(idx));
  return it == ent.end() ? cplx(0.0) : it->second;
}

Tensor& Tensor::prune(double threshold) {
  for (auto it = ent.begin(); it != ent.end();)
    it = std::abs(it->second) <= threshold ? ent.erase(it) : std::next(it);
  return *this;
}

Tensor scalar_tensor(const SpaceRegistry& reg, cplx value) {
  Tensor t(reg, {});
  if (value != cplx(0.0)) t.ent[0] = value;
  return t;
}

Tensor basis_tensor(const SpaceRegistry& reg, std::uint32_t space, std::uint32_t index) {
  Tensor t(reg, {space});
  t.ent[index] = 1.0;
  return t;
}

Tensor from_sparse(const SpaceRegistry& reg, std::uint32_t space, const SparseVec& v) {
  Tensor t(reg, {space});
  for (const auto& [i, c] : v) t.accumulate(i, c);
  return t;
}

Tensor unit_tensor(const SpaceRegistry& reg, const std::vector<std::uint32_t>& sig) {
  Tensor t(reg, sig);
  std::vector<std::pair<std::uint64_t, cplx>> partial{{0, 1.0}};
  for (std::size_t l = 0; l < sig.size(); ++l) {
    const auto& u = reg[sig[l]].unit;
    if (u.empty()) throw Error("space " + reg[sig[l]].name + " has no unit");
    std::vector<std::pair<std::uint64_t, cplx>> next;
    next.reserve(partial.size() * u.size());
    for (const auto& [k, c] : partial)
      for (const auto& [i, ci] : u) next.emplace_back(k + t.strides[l] * i, c * ci);
    partial = std::move(next);
  }
  for (const auto& [k, c] : partial) t.accumulate(k, c);
  return t;
}

SparseVec to_sparse(const Tensor& one_leg) {
  if (one_leg.legs() != 1) throw Error("to_sparse expects a one-leg tensor");
  SparseVec v;
  v.reserve(one_leg.ent.size());
  for (const auto& [k, c] : one_leg.ent) v.emplace_back(static_cast<std::uint32_t>(k), c);
  return v;
}

Tensor add(const Tensor& a, const Tensor& b) {
  if (!a.same_signature(b)) throw Error("add: signature mismatch");
  Tensor r = a;
  for (const auto& [k, c] : b.ent) r.accumulate(k, c);
  return r;
}

Tensor sub(const Tensor& a, const Tensor& b) {
  if (!a.same_signature(b)) throw Error("sub: signature mismatch");
  Tensor r = a;
  for (const auto& [k, c] : b.ent) r.accumulate(k, -c);
  return r;
}

Tensor scale(const Tensor& a, cplx c) {
  Tensor r = a;
  for (auto& [k, v] : r.ent) v *= c;
  return r;
}

double max_abs(const Tensor& a) {
  double m = 0.0;
  for (const auto& [k, c] : a.ent) m = std::max(m, std::abs(c));
  return m;
}

double residual(const Tensor& a, const Tensor& b) { return max_abs(sub(a, b)); }

Tensor tensor_product(const Tensor& a, const Tensor& b) {
  std::vector<std::uint32_t> sig = a.sig;
  sig.insert(sig.end(), b.sig.begin(), b.sig.end());
  Tensor r(*a.reg, sig);
  std::uint64_t shift = 1;
  for (std::size_t l = 0; l < b.sig.size(); ++l) shift *= b.dim(l);
  for (const auto& [ka, ca] : a.ent)
    for (const auto& [kb, cb] : b.ent) r.accumulate(ka * shift + kb, ca * cb);
  return r;
}

Tensor multiply(const Tensor& a, const Tensor& b, double prune) {
  if (!a.same_signature(b)) throw Error("multiply: signature mismatch");
  const SpaceRegistry& reg = *a.reg;
  Tensor r(reg, a.sig);
  if (a.ent.empty() || b.ent.empty()) return r;

  // Hash-join on the legs with diagonal support: those force equal indices.
  std::vector<std::size_t> diag_legs;
  for (std::size_t l = 0; l < a.sig.size(); ++l)
    if (reg[a.sig[l]].diagonal) diag_legs.push_back(l);

  auto project = [&](std::uint64_t key) {
    std::uint64_t p = 0, s = 1;
    for (std::size_t l : diag_legs) {
      p += s * a.leg_index(key, l);
      s *= a.dim(l);
    }
    return p;
  };

  std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, cplx>>> buckets;
  for (const auto& [kb, cb] : b.ent) buckets[project(kb)].emplace_back(kb, cb);

  std::vector<std::pair<std::uint64_t, cplx>> partial, next;
  for (const auto& [ka, ca] : a.ent) {
    auto bit = buckets.find(project(ka));
    if (bit == buckets.end()) continue;
    for (const auto& [kb, cb] : bit->second) {
      partial.clear();
      partial.emplace_back(0, ca * cb);
      bool dead = false;
      for (std::size_t l = 0; l < a.sig.size() && !dead; ++l) {
        const SparseVec& pv = reg.product(a.sig[l], a.leg_index(ka, l), b.leg_index(kb, l));
        if (pv.empty()) {
          dead = true;
          break;
        }
        next.clear();
        next.reserve(partial.size() * pv.size());
        for (const auto& [k, c] : partial)
          for (const auto& [i, ci] : pv) next.emplace_back(k + r.strides[l] * i, c * ci);
        partial.swap(next);
      }
      if (dead) continue;
      for (const auto& [k, c] : partial) r.accumulate(k, c);
    }
  }
  return r.prune(prune), r;
}

Tensor leg_embed(const Tensor& psi, const std::vector<int>& positions,
                 const std::vector<std::uint32_t>& target_sig) {
  if (positions.size() != psi.sig.size()) throw Error("leg_embed: positions arity mismatch");
  const SpaceRegistry& reg = *psi.reg;
  Tensor r(reg, target_sig);
  std::vector<bool> used(target_sig.size(), false);
  for (std::size_t l = 0; l < positions.size(); ++l) {
    int p = positions[l];
    if (p < 0 || p >= static_cast<int>(target_sig.size())) throw Error("leg_embed: position out of range");
    if (used[p]) throw Error("leg_embed: duplicate position");
    used[p] = true;
    if (target_sig[p] != psi.sig[l]) throw Error("leg_embed: leg space mismatch");
  }
  std::vector<std::size_t> fill;
  for (std::size_t p = 0; p < target_sig.size(); ++p)
    if (!used[p]) fill.push_back(p);

  std::vector<std::pair<std::uint64_t, cplx>> units{{0, 1.0}}, next;
  for (std::size_t p : fill) {
    const auto& u = reg[target_sig[p]].unit;
    if (u.empty()) throw Error("leg_embed: fill space has no unit");
    next.clear();
    for (const auto& [k, c] : units)
      for (const auto& [i, ci] : u) next.emplace_back(k + r.strides[p] * i, c * ci);
    units.swap(next);
  }
  for (const auto& [kp, cp] : psi.ent) {
    std::uint64_t base = 0;
    for (std::size_t l = 0; l < positions.size(); ++l)
      base += r.strides[positions[l]] * psi.leg_index(kp, l);
    for (const auto& [ku, cu] : units) r.accumulate(base + ku, cp * cu);
  }
  return r;
}

Tensor apply_matrix(const Tensor& t, std::size_t leg, const Mat& m) {
  if (m.rows() != m.cols() || static_cast<std::uint32_t>(m.rows()) != t.dim(leg))
    throw Error("apply_matrix: dimension mismatch");
  Tensor r(*t.reg, t.sig);
  for (const auto& [k, c] : t.ent) {
    std::uint32_t j = t.leg_index(k, leg);
    std::uint64_t base = k - t.strides[leg] * j;
    for (std::uint32_t i = 0; i < t.dim(leg); ++i) {
      cplx mij = m(i, j);
      if (mij != cplx(0.0)) r.accumulate(base + t.strides[leg] * i, c * mij);
    }
  }
  return r;
}

Tensor apply_linmap(const Tensor& t, std::size_t leg, const LinMap& m) {
  if (t.sig[leg] != m.from) throw Error("apply_linmap: leg space mismatch");
  std::vector<std::uint32_t> sig = t.sig;
  sig[leg] = m.to;
  Tensor r(*t.reg, sig);
  for (const auto& [k, c] : t.ent) {
    std::uint32_t j = t.leg_index(k, leg);
    std::vector<std::uint32_t> idx = t.decode(k);
    for (const auto& [i, ci] : m.cols.at(j)) {
      idx[leg] = i;
      r.accumulate(r.encode(idx), c * ci);
    }
  }
  return r;
}

Tensor apply_coproduct(const Tensor& t, std::size_t leg, const SparseMap2& d) {
  std::vector<std::uint32_t> sig;
  sig.reserve(t.sig.size() + 1);
  for (std::size_t l = 0; l < t.sig.size(); ++l) {
    if (l == leg) {
      sig.push_back(d.to1);
      sig.push_back(d.to2);
    } else {
      sig.push_back(t.sig[l]);
    }
  }
  Tensor r(*t.reg, sig);
  for (const auto& [k, c] : t.ent) {
    std::uint32_t i = t.leg_index(k, leg);
    std::vector<std::uint32_t> idx = t.decode(k);
    std::vector<std::uint32_t> out(sig.size());
    for (const auto& [jk, cjk] : d.entries.at(i)) {
      std::size_t q = 0;
      for (std::size_t l = 0; l < t.sig.size(); ++l) {
        if (l == leg) {
          out[q++] = jk.first;
          out[q++] = jk.second;
        } else {
          out[q++] = idx[l];
        }
      }
      r.accumulate(r.encode(out), c * cjk);
    }
  }
  return r;
}

Tensor apply_counit(const Tensor& t, std::size_t leg, const std::vector<cplx>& eps) {
  std::vector<std::uint32_t> sig;
  for (std::size_t l = 0; l < t.sig.size(); ++l)
    if (l != leg) sig.push_back(t.sig[l]);
  Tensor r(*t.reg, sig);
  for (const auto& [k, c] : t.ent) {
    cplx e = eps.at(t.leg_index(k, leg));
    if (e == cplx(0.0)) continue;
    std::vector<std::uint32_t> idx = t.decode(k), out;
    for (std::size_t l = 0; l < t.sig.size(); ++l)
      if (l != leg) out.push_back(idx[l]);
    r.accumulate(r.encode(out), c * e);
  }
  return r;
}

Tensor contract_leg(const Tensor& t, std::size_t leg, const std::vector<cplx>& covec) {
  return apply_counit(t, leg, covec);
}

Tensor mul_leg_left(const Tensor& x, const Tensor& t, std::size_t leg) {
  if (x.legs() != 1 || x.sig[0] != t.sig[leg]) throw Error("mul_leg_left: space mismatch");
  const SpaceRegistry& reg = *t.reg;
  Tensor r(reg, t.sig);
  for (const auto& [k, c] : t.ent) {
    std::uint32_t j = t.leg_index(k, leg);
    std::uint64_t base = k - t.strides[leg] * j;
    for (const auto& [xi, cx] : x.ent)
      for (const auto& [m, cm] : reg.product(t.sig[leg], static_cast<std::uint32_t>(xi), j))
        r.accumulate(base + t.strides[leg] * m, c * cx * cm);
  }
  return r;
}

Tensor mul_leg_right(const Tensor& t, std::size_t leg, const Tensor& x) {
  if (x.legs() != 1 || x.sig[0] != t.sig[leg]) throw Error("mul_leg_right: space mismatch");
  const SpaceRegistry& reg = *t.reg;
  Tensor r(reg, t.sig);
  for (const auto& [k, c] : t.ent) {
    std::uint32_t i = t.leg_index(k, leg);
    std::uint64_t base = k - t.strides[leg] * i;
    for (const auto& [xj, cx] : x.ent)
      for (const auto& [m, cm] : reg.product(t.sig[leg], i, static_cast<std::uint32_t>(xj)))
        r.accumulate(base + t.strides[leg] * m, c * cx * cm);
  }
  return r;
}

Tensor merge_legs(const Tensor& t, std::size_t leg) {
  if (leg + 1 >= t.legs() || t.sig[leg] != t.sig[leg + 1])
    throw Error("merge_legs: adjacent legs must share a space");
  const SpaceRegistry& reg = *t.reg;
  std::vector<std::uint32_t> sig;
  for (std::size_t l = 0; l < t.sig.size(); ++l)
    if (l != leg + 1) sig.push_back(t.sig[l]);
  Tensor r(reg, sig);
  for (const auto& [k, c] : t.ent) {
    std::uint32_t i = t.leg_index(k, leg), j = t.leg_index(k, leg + 1);
    std::vector<std::uint32_t> idx = t.decode(k), out;
    for (std::size_t l = 0; l < t.sig.size(); ++l)
      if (l != leg + 1) out.push_back(idx[l]);
    for (const auto& [m, cm] : reg.product(t.sig[leg], i, j)) {
      out[leg] = m;
      r.accumulate(r.encode(out), c * cm);
    }
  }
  return r;
}

cplx pairing(const Tensor& phi, const Tensor& a) {
  if (phi.legs() != a.legs()) throw Error("pairing: leg count mismatch");
  const SpaceRegistry& reg = *phi.reg;
  for (std::size_t l = 0; l < phi.legs(); ++l) {
    const AlgebraTable& d = reg[phi.sig[l]];
    if (d.dual_of < 0 || static_cast<std::uint32_t>(d.dual_of) != a.sig[l])
      if (phi.sig[l] != a.sig[l] && (a.reg->operator[](a.sig[l]).dual_of < 0 ||
                                     static_cast<std::uint32_t>((*a.reg)[a.sig[l]].dual_of) != phi.sig[l]))
        throw Error("pairing: legs are not dual to each other");
    if (phi.dim(l) != a.dim(l)) throw Error("pairing: dimension mismatch");
  }
  cplx s = 0.0;
  const auto& small = phi.ent.size() <= a.ent.size() ? phi.ent : a.ent;
  const auto& big = phi.ent.size() <= a.ent.size() ? a.ent : phi.ent;
  for (const auto& [k, c] : small) {
    auto it = big.find(k);
    if (it != big.end()) s += c * it->second;
  }
  return s;
}

LegMap LegMap::matrix(Mat m) {
  LegMap lm;
  lm.kind = Kind::Matrix;
  lm.m = std::move(m);
  return lm;
}
LegMap LegMap::coproduct(SparseMap2 d) {
  LegMap lm;
  lm.kind = Kind::Coproduct;
  lm.delta = std::move(d);
  return lm;
}
LegMap LegMap::counit(std::vector<cplx> e) {
  LegMap lm;
  lm.kind = Kind::Counit;
  lm.eps = std::move(e);
  return lm;
}

Tensor apply_to_leg(const LegMap& m, const Tensor& t, std::size_t leg) {
  switch (m.kind) {
    case LegMap::Kind::Matrix: return apply_matrix(t, leg, m.m);
    case LegMap::Kind::Coproduct: return apply_coproduct(t, leg, m.delta);
    case LegMap::Kind::Counit: return apply_counit(t, leg, m.eps);
  }
  throw Error("apply_to_leg: bad kind");
}

Tensor invert_in_product_algebra(const Tensor& a, double tol) {
  std::uint64_t n = 1;
  for (std::size_t l = 0; l < a.legs(); ++l) n *= a.dim(l);
  if (n > 60000) throw Error("invert_in_product_algebra: space too large for a dense solve");
  Mat L = Mat::Zero(static_cast<long>(n), static_cast<long>(n));
  Tensor col(*a.reg, a.sig);
  for (std::uint64_t j = 0; j < n; ++j) {
    col.ent.clear();
    col.ent[j] = 1.0;
    Tensor aj = multiply(a, col, 0.0);
    for (const auto& [k, c] : aj.ent) L(static_cast<long>(k), static_cast<long>(j)) = c;
  }
  Eigen::FullPivLU<Mat> lu(L);
  lu.setThreshold(tol);
  if (!lu.isInvertible()) throw Error("invert_in_product_algebra: element is not invertible");
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<long>(n));
  Tensor u = unit_tensor(*a.reg, a.sig);
  for (const auto& [k, c] : u.ent) rhs(static_cast<long>(k)) = c;
  Eigen::VectorXcd x = lu.solve(rhs);
  Tensor r(*a.reg, a.sig);
  for (std::uint64_t k = 0; k < n; ++k)
    if (std::abs(x(static_cast<long>(k))) > 1e-14) r.ent[k] = x(static_cast<long>(k));
  return r;
}

}  // namespace qhd
