#pragma once

// Graph blow-ups of sign matrices: vertex i of the base graph is replaced by
// p_i pairwise non-adjacent copies.

#include "projconst/matcore.hpp"

#include <vector>

namespace projconst::blowup {

class BlowupSpec {
 public:
  BlowupSpec() = default;
  BlowupSpec(SignMatrix base, std::vector<int> multiplicities);

  const SignMatrix& base() const { return base_; }
  const std::vector<int>& multiplicities() const { return mult_; }
  Eigen::Index base_dim() const { return base_.dim(); }
  /// Sum of the multiplicities.
  Eigen::Index dim() const { return dim_; }

  /// Block index of every row of the blown-up matrix.
  std::vector<int> block_of() const;

 private:
  SignMatrix base_;
  std::vector<int> mult_;
  Eigen::Index dim_ = 0;
};

SignMatrix blow_up(const BlowupSpec& spec);

/// sqrt(L) S sqrt(L) with L = diag(p_i / d). Its pi_n times d equals pi_n of
/// the blow-up whenever its n-th eigenvalue is >= 0 (or no block repeats);
/// otherwise the blow-up's extra zero eigenvalues take the negative slots.
SymMatrix weighted_equivalent(const BlowupSpec& spec);

/// Maps an orthonormal set u_1..u_k of eigenvectors of sqrt(P) S sqrt(P),
/// P = diag(p), to block-constant eigenvectors of the blow-up: the entry of
/// row a in block i is u(i) / sqrt(p_i). Orthonormality is preserved.
Matrix lift_eigenvectors(const BlowupSpec& spec, const Matrix& base_vectors);

}  // namespace projconst::blowup
