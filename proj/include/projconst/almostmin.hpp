#pragma once

// Construction of orthogonal projections with nearly equal absolute row sums
// whose norm is within a certified margin of the relative projection constant
// of their range.

#include "projconst/blowup.hpp"
#include "projconst/matcore.hpp"
#include "projconst/rationalize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace projconst::almostmin {

/// Row-sum and trace-duality data of an orthogonal projection P.
struct Certificate {
  std::optional<double> rho;  // rho(|P|); absent unless |P| is strictly positive
  double r = 0.0;             // min absolute row sum
  double R = 0.0;             // max absolute row sum
  double op_norm_l1 = 0.0;    // max absolute column sum
  std::optional<double> lower_bound;  // best admissible trace-duality value
  double gap_rows = 0.0;              // R - r
  std::optional<double> gap_minimality;  // op_norm_l1 - lower_bound
  /// "perron" for A = diag(v^2) Sgn(P); "sign" for A = Sgn(P) / nu1(Sgn(P)).
  std::string witness;
  double abs_sum = 0.0;  // j'|P|j
};

/// Dense route. Witnesses are validated by relproj::trace_certificate.
Certificate certify(const OrthoProjection& p);

/// Projection onto block-constant vectors: P_ab = C_ij / sqrt(p_i p_j) for
/// row a in block i and column b in block j, C an m x m orthogonal projection.
struct LiftedProjection {
  blowup::BlowupSpec spec;
  Matrix C;
  int rank = 0;

  Eigen::Index dim() const { return spec.dim(); }
  /// The d x d matrix; only sensible for moderate d.
  OrthoProjection materialize() const;
  /// Sgn(P), or its completion by +1 on zero entries.
  SignPattern base_pattern() const { return sign_pattern(C); }
  /// |SP - PS|_max for S = Sgn(P), evaluated on blocks.
  double sign_commutator() const;
};

/// Same certificate as certify(lifted.materialize()), on m x m data.
Certificate certify(const LiftedProjection& lifted);

/// (1 / sqrt(n)) min{1, (eps / 32)^2}.
double eta_of_eps(int n, double eps);

struct PipelineOptions {
  int max_refine = 100;
  Eigen::Index dense_limit = 512;  // materialize P and S up to this d
};

struct PipelineResult {
  int n = 0;
  Eigen::Index d = 0;
  double eta = 0.0;
  double eps = 0.0;
  rationalize::RationalWeights weights;
  LiftedProjection lifted;
  Certificate cert;
  bool converged = false;
  int refinements = 0;
  double d_rho = 0.0;      // d * rho(|P|)
  bool display_holds = false;  // j'|P|j <= d rho(|P|) <= j'|P|j + eta
  std::optional<OrthoProjection> P;
  std::optional<SignMatrix> S;
};

struct Refinement {
  LiftedProjection lifted;
  bool converged = false;
  int refinements = 0;
};

/// Ky Fan maximizer of the blow-up of `base` at rank n, obtained from the
/// top eigenvectors of sqrt(p) S sqrt(p), followed by S <- Sgn(P) until the
/// pattern is stable and |P| positive (converged) or max_refine rounds pass.
/// With repeated blocks the n-th base eigenvalue must be positive.
Refinement refine_blowup(int n, SignMatrix base, std::vector<int> multiplicities,
                         int max_refine = 100);

/// Perron weights of |P0| -> rational multiplicities -> blow-up of Sgn(P0)
/// -> Ky Fan maximizer through lifted eigenvectors -> sign fixed point ->
/// certificate.
PipelineResult almost_minimal(int n, double eps, const OrthoProjection& p0,
                              const PipelineOptions& opts = {});

}  // namespace projconst::almostmin
