// Modules over the base algebra, coherent flips on them, and the extension
// of a module to a module over the double.

#pragma once

#include "double_alg.hpp"

namespace qhd {

struct GModule {
  std::uint32_t vspace = 0;  // registered vector space for the carrier
  std::uint32_t vdim = 0;
  std::uint32_t end_space = 0;  // registered matrix algebra End(V)
  std::vector<Mat> rep;         // pi(e_i), vdim x vdim

  Mat act(const Tensor& a) const;  // pi extended linearly
};

// Registers End(V) (matrix-unit basis E_{kl}, row-major k*vdim+l) and the
// carrier space; verifies pi is a unital algebra morphism.
GModule make_module(const QuasiHopf& H, std::vector<Mat> rep, const Options& opt, Report* rep_out);

// The double as a module over its base via the embedding and left
// multiplication; this is the regular-module fixture of the suite.
GModule restricted_regular_module(const DoubleAlgebra& da, const Options& opt, Report* rep_out);

// The one-dimensional module given by the counit.
GModule trivial_module(const QuasiHopf& H, const Options& opt);

struct DeltaFlip {
  Tensor D_V;  // G (x) End(V)
};

// D_V := (id (x) left-multiplication)(D) on the restricted regular module.
DeltaFlip flip_from_double(const DoubleAlgebra& da, const GModule& V);
DeltaFlip unit_flip(const QuasiHopf& H, const GModule& V);

// Normality, the flip relation and the coherence identity.
Report check_flip(const QuasiHopf& H, const GModule& V, const DeltaFlip& DV, const Options& opt);

struct DModule {
  const GModule* V = nullptr;
  std::vector<Mat> rep_d;  // images of the crossed-product basis
};

// Extends (V, D_V) along the generators and verifies the extension is a
// unital algebra morphism on every basis pair of the double.
DModule extend_rep(const DoubleAlgebra& da, const GModule& V, const DeltaFlip& DV,
                   const Options& opt, Report& rep);

// The three equivalent module-theoretic conditions expressed through
// beta_V : v -> D_V (1 (x) v).
Report module_conditions(const QuasiHopf& H, const GModule& V, const DeltaFlip& DV,
                        const Options& opt);

// t intertwines the flips iff it intertwines the extended actions.
struct HomCheckResult {
  bool base_intertwiner = false;
  bool flip_intertwiner = false;
  bool extended_intertwiner = false;
  bool verdict = false;  // base && flip
};
HomCheckResult hom_check(const DoubleAlgebra& da, const GModule& V, const DeltaFlip& DV,
                         const GModule& W, const DeltaFlip& DW, const Mat& t, const Options& opt);

}  // namespace qhd
