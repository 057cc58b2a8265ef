#pragma once

// Partial eigenvalue sums pi_n, Ky Fan maximizers and the diagnostics built
// on them.

#include "projconst/matcore.hpp"

#include <complex>
#include <vector>

namespace projconst::eigsum {

struct KyFanResult {
  double value = 0.0;
  OrthoProjection P;
};

/// Sum of the n largest eigenvalues of `a` and the projection onto the
/// span of the corresponding eigenvectors. Ties at lambda_n go to the
/// eigenvector order fixed by eig_sym.
KyFanResult kyfan_sum(const SymMatrix& a, int n);

/// Eigenvalue indices chosen by pi_n_general together with the value.
/// `value` is -infinity (and `indices` empty) when no subset of size n is
/// closed under complex conjugation.
struct CuccSelection {
  std::vector<int> indices;
  double value = 0.0;

  bool feasible() const;
};

/// Largest sum of real parts over size-n eigenvalue subsets closed under
/// conjugation. Symmetric input goes through eig_sym and agrees bitwise with
/// kyfan_sum.
CuccSelection pi_n_general(const Matrix& m, int n);

/// The eigenvalues pi_n_general worked with, indexed as in CuccSelection.
std::vector<std::complex<double>> general_eigenvalues(const Matrix& m);

/// Tolerances for splitting a general spectrum into reals and conjugate pairs.
inline constexpr double kRealAxisTol = 1e-8;
inline constexpr double kPairingTol = 1e-8;

struct EqualityCase {
  bool commutes = false;
  bool is_maximizer = false;
};

EqualityCase equality_case(const SymMatrix& a, const OrthoProjection& p, double tol);

struct SpectralGap {
  bool applicable = false;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double bound = 0.0;  // sqrt(n)/lambda1 - lambda1/(2 sqrt(n))
  double c = 0.0;      // lambda2 / lambda1
  double threshold = 0.0;  // (sqrt(3) - 1) sqrt(n)
};

/// Spectral gap of |P|. Requires |P| strictly positive and rank >= 2.
SpectralGap spectral_gap_bound(const OrthoProjection& p);

}  // namespace projconst::eigsum
