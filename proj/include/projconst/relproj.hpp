#pragma once

// Relative projection constants of subspaces of l1^d and linf^d: exact values
// by linear programming, trace-duality lower bounds, attainment checks.

#include "projconst/matcore.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace projconst::relproj {

enum class Space { kL1, kLinf };

const char* to_string(Space s);
Space parse_space(const std::string& s);

/// n linearly independent columns in R^d.
class SubspaceBasis {
 public:
  explicit SubspaceBasis(Matrix columns);

  Eigen::Index ambient_dim() const { return v_.rows(); }
  Eigen::Index dim() const { return v_.cols(); }
  const Matrix& columns() const { return v_; }

  /// Orthogonal projection onto the span.
  OrthoProjection orthogonal_projection() const;

  static constexpr double kMinSingularValue = 1e-10;

 private:
  Matrix v_;
};

/// 1-nuclear norm, the trace dual of the operator norm: sum of column max-abs
/// entries for linf, of row max-abs entries for l1.
double nu1(const Matrix& a, Space space);

/// Max column abs-sum for l1, max row abs-sum for linf.
double operator_norm(const Matrix& q, Space space);

struct MinProjection {
  double value = 0.0;  // operator norm of Q
  Matrix Q;            // projection onto E of minimal norm
  long pivots = 0;
};

/// Solves min ||Q|| over Q = V M with M V = I by the simplex method.
MinProjection min_projection_norm(const SubspaceBasis& e, Space space);

class WitnessError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
/// nu1(A) != 1.
class NormalizationError : public WitnessError {
 public:
  using WitnessError::WitnessError;
};
/// AP != PAP.
class ConstraintViolation : public WitnessError {
 public:
  using WitnessError::WitnessError;
};

struct DualityWitness {
  Matrix A;
  Space space = Space::kL1;
  double value = 0.0;  // Tr(AP), a lower bound for Pi(E, space)
};

inline constexpr double kNormTol = 1e-9;
inline constexpr double kInvarianceTol = 1e-8;

/// Checks nu1(A) = 1 and AP = PAP for the orthogonal projection P onto E.
DualityWitness trace_certificate(const Matrix& a, const SubspaceBasis& e, Space space);
/// Same check against an already computed orthogonal projection.
DualityWitness trace_certificate(const Matrix& a, const OrthoProjection& p, Space space);

struct Attainment {
  bool equalities_hold = false;  // ||P||_1 = LP value = rho(|P|) = sum|p_ij| / d
  bool attained = false;         // ... and pi_n(S)/d reaches the reference value
  std::optional<SubspaceBasis> E;
  double value = 0.0;            // pi_n(S) / d
  double op_norm_l1 = 0.0;
  double lp_value = 0.0;
  std::optional<double> rho;     // absent when |P| has a zero entry
  double mean_row_sum = 0.0;
  std::optional<double> reference;
  OrthoProjection P;
};

inline constexpr double kAttainTol = 1e-7;

/// Takes the Ky Fan maximizer P of S at rank n with E = range(P) inside l1^d
/// and checks the equality chain. Without an explicit reference value the
/// exhaustive search supplies Pi(n, d) when d is small enough to enumerate.
Attainment attainment_check(const SignMatrix& s, int n,
                            std::optional<double> reference = std::nullopt);

}  // namespace projconst::relproj
