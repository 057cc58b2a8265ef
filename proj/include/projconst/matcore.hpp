#pragma once

// Dense symmetric linear algebra, the Perron pair of positive matrices and
// the validated matrix classes shared by every other module.

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace projconst {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Global numeric knobs. `zero_threshold` decides when an entry counts as zero
/// for sign patterns and positivity tests.
struct Config {
  double zero_threshold = 1e-9;
};

Config& config();

/// Raised when an input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative method exhausts its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exactly symmetric real matrix.
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Accepts `a` when |a_ij - a_ji| <= tol * max(1, |a|_max) and stores the
  /// symmetrized matrix, so that entries(i,j) == entries(j,i) bitwise.
  explicit SymMatrix(const Matrix& a, double tol = 1e-12);

  Eigen::Index dim() const { return a_.rows(); }
  const Matrix& matrix() const { return a_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return a_(i, j); }

 private:
  Matrix a_;
};

/// Symmetric matrix with entries in {-1, +1} and ones on the diagonal.
class SignMatrix {
 public:
  SignMatrix() = default;
  explicit SignMatrix(const Matrix& s);

  static SignMatrix all_plus(Eigen::Index d);

  /// Builds the matrix from its strict upper triangle, read row by row; bit
  /// value 1 means -1. Bit 0 is entry (0,1).
  static SignMatrix from_upper_bits(Eigen::Index d, std::uint64_t bits);
  std::uint64_t upper_bits() const;

  Eigen::Index dim() const { return s_.rows(); }
  const Matrix& matrix() const { return s_; }
  int operator()(Eigen::Index i, Eigen::Index j) const {
    return s_(i, j) > 0 ? 1 : -1;
  }

  /// Lexicographic order on the upper-triangle sign vector, with -1 < +1.
  bool lex_less(const SignMatrix& other) const;

  friend bool operator==(const SignMatrix& a, const SignMatrix& b) {
    return a.s_ == b.s_;
  }

 private:
  Matrix s_;
};

/// Nonnegative weights summing to one.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(const Vector& w, double tol = 1e-12);

  static WeightVector uniform(Eigen::Index d);

  Eigen::Index dim() const { return w_.size(); }
  const Vector& values() const { return w_; }
  double operator[](Eigen::Index i) const { return w_(i); }
  double min() const { return w_.minCoeff(); }

  /// sqrt(D) S sqrt(D) for D = diag(w).
  Matrix scale(const Matrix& s) const;

 private:
  Vector w_;
};

/// Symmetric idempotent matrix of rank n. Only validate_projection creates one
/// from arbitrary input.
class OrthoProjection {
 public:
  OrthoProjection() = default;

  Eigen::Index dim() const { return p_.rows(); }
  int rank() const { return n_; }
  const Matrix& matrix() const { return p_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return p_(i, j); }

  /// Projection onto the span of the orthonormal columns of `basis`.
  static OrthoProjection from_orthonormal(const Matrix& basis);

 private:
  friend OrthoProjection validate_projection(const Matrix&, int, double);
  OrthoProjection(Matrix p, int n) : p_(std::move(p)), n_(n) {}

  Matrix p_;
  int n_ = 0;
};

/// Eigen-decomposition of a symmetric matrix: eigenvalues descending, the
/// eigenvector in column k belongs to eigenvalue k.
struct Spectrum {
  Vector values;
  Matrix vectors;
};

/// Entries in {-1, 0, +1}.
using SignPattern = Eigen::MatrixXi;

/// Which invariant made validate_projection reject its input.
enum class ProjectionInvariant { kSquare, kSymmetry, kIdempotence, kTrace, kSpectrum };

const char* to_string(ProjectionInvariant inv);

class ProjectionError : public std::invalid_argument {
 public:
  ProjectionError(ProjectionInvariant inv, double violation);

  ProjectionInvariant invariant() const { return invariant_; }
  double violation() const { return violation_; }

 private:
  ProjectionInvariant invariant_;
  double violation_;
};

/// Full spectral decomposition. Cyclic Jacobi for d <= 64, Eigen's
/// tridiagonal QR solver above. Each eigenvector is scaled so
/// that its first entry with |x| > 1e-12 is positive.
Spectrum eig_sym(const SymMatrix& a);

/// The Jacobi route on its own, for any d.
Spectrum eig_sym_jacobi(const SymMatrix& a);

struct PerronPair {
  double rho = 0.0;
  Vector v;
};

/// Spectral radius and positive unit Perron vector of an entrywise positive
/// matrix. Throws PreconditionError when some entry is <= 0.
PerronPair perron(const Matrix& m);

/// -1 below -tau, +1 above tau, 0 in between.
SignPattern sign_pattern(const Matrix& a, double tau);
inline SignPattern sign_pattern(const Matrix& a) {
  return sign_pattern(a, config().zero_threshold);
}

/// Replaces zero entries of a pattern by +1. The input must be symmetric with
/// nonnegative diagonal, which holds for the pattern of every projection.
SignMatrix complete_sign_pattern(const SignPattern& pattern);

/// Checks symmetry, idempotence, trace and spectrum at tolerance `tol`
/// (the spectrum check uses max(tol, 1e-8)). Throws ProjectionError naming the
/// first failed invariant together with its worst violation.
OrthoProjection validate_projection(const Matrix& p, int n, double tol = 1e-9);

struct RowSumStats {
  double r = 0.0;    // min absolute row sum
  double R = 0.0;    // max absolute row sum
  double gap = 0.0;  // R - r
};

RowSumStats row_sum_stats(const Matrix& p);
inline RowSumStats row_sum_stats(const OrthoProjection& p) {
  return row_sum_stats(p.matrix());
}

/// True when every entry is > config().zero_threshold.
bool is_strictly_positive(const Matrix& m);

double max_abs(const Matrix& m);

}  // namespace projconst
