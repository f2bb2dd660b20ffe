// Sparse multilinear arithmetic over products of finite-dimensional algebras.
//
// Every element handled by this library -- reassociators, R-matrices, twists,
// coaction coherence elements, flip operators -- is a sparse tensor over a
// signature of "legs", each leg tied to a registered space.  Spaces carry an
// optional multiplication table so that componentwise products in
// G_1 (x) ... (x) G_k can be evaluated leg by leg.

#pragma once

#include <complex>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace qhd {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Verification options.  `tol` decides check verdicts, `prune` drops entries
// from sparse results; prune << tol so pruning can never flip a verdict.
struct Options {
  double tol = 1e-9;
  double prune = 1e-14;
  std::uint64_t seed = 20226;
  bool force_deep_checks = false;
  // Dimension gates for the expensive coherence checks (liftable via
  // force_deep_checks): the 7-leg coaction coherence and the pentagon of the
  // double's reassociator.
  std::uint32_t coherence_dim_gate = 8;
  std::uint32_t double_pentagon_dim_gate = 6;
};

// One basis coefficient of a sparse vector in a single space.
using SparseVec = std::vector<std::pair<std::uint32_t, cplx>>;

SparseVec sparse_combine(const SparseVec& v, double prune = 0.0);

class SpaceRegistry;
SparseVec sv_basis(std::uint32_t i);
SparseVec sv_matcol(const Mat& m, std::uint32_t j);                // column j as sparse
SparseVec sv_apply(const Mat& m, const SparseVec& v);              // m v
SparseVec sv_mul(const SpaceRegistry& reg, std::uint32_t space, const SparseVec& a,
                 const SparseVec& b);                              // product in one space
SparseVec sv_scale(const SparseVec& v, cplx c);

// Sparse linear map between spaces; cols[i] is the image of basis vector i.
struct LinMap {
  std::uint32_t from = 0, to = 0;  // space ids
  std::vector<SparseVec> cols;
};

// Sparse coproduct-like map: image of basis i in a two-leg space.
struct SparseMap2 {
  std::uint32_t to1 = 0, to2 = 0;  // target space ids
  // entries[i] = list of ((j,k), c) with map(e_i) = sum c e_j (x) e_k
  std::vector<std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, cplx>>> entries;
};

struct AlgebraTable {
  std::string name;
  std::uint32_t dim = 0;
  int dual_of = -1;      // primal space id if this is a dual space
  bool has_product = false;
  bool diagonal = false; // e_i e_j = 0 whenever i != j (function-algebra style)
  SparseVec unit;

  // Eager table (filled at registration) or lazy evaluator + memo.
  std::vector<SparseVec> table;  // index i*dim+j when eager
  bool lazy = false;
  std::function<SparseVec(std::uint32_t, std::uint32_t)> eval;
  mutable std::unordered_map<std::uint64_t, SparseVec> memo;
};

class SpaceRegistry {
 public:
  std::uint32_t add(AlgebraTable t);
  const AlgebraTable& operator[](std::uint32_t id) const { return spaces_.at(id); }
  AlgebraTable& at(std::uint32_t id) { return spaces_.at(id); }
  std::uint32_t dim(std::uint32_t id) const { return spaces_.at(id).dim; }
  const SparseVec& product(std::uint32_t space, std::uint32_t i, std::uint32_t j) const;
  std::size_t size() const { return spaces_.size(); }

 private:
  std::deque<AlgebraTable> spaces_;  // deque: stable references across add()
};

// Registers a plain vector space (no multiplication), e.g. a module carrier.
std::uint32_t add_vector_space(SpaceRegistry& reg, std::string name, std::uint32_t dim);

struct Tensor {
  const SpaceRegistry* reg = nullptr;
  std::vector<std::uint32_t> sig;      // space ids per leg
  std::vector<std::uint64_t> strides;  // mixed-radix encoding of multi-indices
  std::unordered_map<std::uint64_t, cplx> ent;

  Tensor() = default;
  Tensor(const SpaceRegistry& r, std::vector<std::uint32_t> signature);

  std::size_t legs() const { return sig.size(); }
  std::uint32_t dim(std::size_t leg) const { return reg->dim(sig[leg]); }
  std::uint64_t encode(const std::vector<std::uint32_t>& idx) const;
  std::vector<std::uint32_t> decode(std::uint64_t key) const;
  std::uint32_t leg_index(std::uint64_t key, std::size_t leg) const {
    return static_cast<std::uint32_t>((key / strides[leg]) % dim(leg));
  }
  void accumulate(std::uint64_t key, cplx v) {
    auto& slot = ent[key];
    slot += v;
  }
  void set(const std::vector<std::uint32_t>& idx, cplx v) { ent[encode(idx)] = v; }
  cplx at(const std::vector<std::uint32_t>& idx) const;
  Tensor& prune(double threshold);
  bool same_signature(const Tensor& o) const { return sig == o.sig; }
};

// -- construction helpers --------------------------------------------------

Tensor scalar_tensor(const SpaceRegistry& reg, cplx value);        // empty signature
Tensor basis_tensor(const SpaceRegistry& reg, std::uint32_t space, std::uint32_t index);
Tensor from_sparse(const SpaceRegistry& reg, std::uint32_t space, const SparseVec& v);
Tensor unit_tensor(const SpaceRegistry& reg, const std::vector<std::uint32_t>& sig);
SparseVec to_sparse(const Tensor& one_leg);

// -- arithmetic ------------------------------------------------------------

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, cplx c);
double max_abs(const Tensor& a);
double residual(const Tensor& a, const Tensor& b);  // max-abs entrywise difference

// Tensor product: signature concatenation.
Tensor tensor_product(const Tensor& a, const Tensor& b);

// Componentwise algebra product, leg by leg.  Signatures must match and every
// leg must carry a multiplication.
Tensor multiply(const Tensor& a, const Tensor& b, double prune = 1e-14);

// Places psi's legs at `positions` (0-based, distinct, possibly permuting)
// inside a larger signature; remaining legs are filled with units.  This is
// the psi^{n_1...n_m} superscript convention.
Tensor leg_embed(const Tensor& psi, const std::vector<int>& positions,
                 const std::vector<std::uint32_t>& target_sig);

// Per-leg structure maps.
Tensor apply_matrix(const Tensor& t, std::size_t leg, const Mat& m);
Tensor apply_linmap(const Tensor& t, std::size_t leg, const LinMap& m);
Tensor apply_coproduct(const Tensor& t, std::size_t leg, const SparseMap2& d);
Tensor apply_counit(const Tensor& t, std::size_t leg, const std::vector<cplx>& eps);

// Multiply one leg (from the left/right) by a fixed one-leg element.
Tensor mul_leg_left(const Tensor& x_one_leg, const Tensor& t, std::size_t leg);
Tensor mul_leg_right(const Tensor& t, std::size_t leg, const Tensor& x_one_leg);

// Fuses legs (leg, leg+1) -- both over the same space -- via multiplication.
Tensor merge_legs(const Tensor& t, std::size_t leg);

// Contracts one leg against a covector (coefficients per basis index).
Tensor contract_leg(const Tensor& t, std::size_t leg, const std::vector<cplx>& covec);

// Full dual pairing <phi|a>: legs must pair one-to-one (dual vs primal of the
// same dimension); equals the sum over shared multi-indices.
cplx pairing(const Tensor& phi, const Tensor& a);

// Single dispatcher over the three per-leg structure-map kinds.
struct LegMap {
  enum class Kind { Matrix, Coproduct, Counit } kind = Kind::Matrix;
  Mat m;
  SparseMap2 delta;
  std::vector<cplx> eps;
  static LegMap matrix(Mat m);
  static LegMap coproduct(SparseMap2 d);
  static LegMap counit(std::vector<cplx> e);
};
Tensor apply_to_leg(const LegMap& m, const Tensor& t, std::size_t leg);

// Inverse of `a` in the product algebra of its signature, via a dense linear
// solve of (left-multiplication by a) x = unit.  Throws if singular.
Tensor invert_in_product_algebra(const Tensor& a, double tol = 1e-10);

}  // namespace qhd
