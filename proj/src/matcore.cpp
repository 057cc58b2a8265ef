#include "projconst/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace projconst {

Config& config() {
  static Config cfg;
  return cfg;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_strictly_positive(const Matrix& m) {
  return m.size() > 0 && m.minCoeff() > config().zero_threshold;
}

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) {
    throw PreconditionError("SymMatrix: matrix is not square");
  }
  const double asym = max_abs(a - a.transpose());
  if (asym > tol * std::max(1.0, max_abs(a))) {
    std::ostringstream os;
    os << "SymMatrix: asymmetry " << asym << " exceeds tolerance";
    throw PreconditionError(os.str());
  }
  a_ = 0.5 * (a + a.transpose());
}

// ---------------------------------------------------------------------------
// SignMatrix

SignMatrix::SignMatrix(const Matrix& s) {
  if (s.rows() != s.cols()) {
    throw PreconditionError("SignMatrix: matrix is not square");
  }
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    if (s(i, i) != 1.0) {
      throw PreconditionError("SignMatrix: diagonal entry is not +1");
    }
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      if (s(i, j) != 1.0 && s(i, j) != -1.0) {
        throw PreconditionError("SignMatrix: entry outside {-1, +1}");
      }
      if (s(i, j) != s(j, i)) {
        throw PreconditionError("SignMatrix: matrix is not symmetric");
      }
    }
  }
  s_ = s;
}

SignMatrix SignMatrix::all_plus(Eigen::Index d) {
  SignMatrix out;
  out.s_ = Matrix::Ones(d, d);
  return out;
}

SignMatrix SignMatrix::from_upper_bits(Eigen::Index d, std::uint64_t bits) {
  SignMatrix out = all_plus(d);
  int k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j, ++k) {
      if ((bits >> k) & 1u) {
        out.s_(i, j) = out.s_(j, i) = -1.0;
      }
    }
  }
  return out;
}

std::uint64_t SignMatrix::upper_bits() const {
  std::uint64_t bits = 0;
  int k = 0;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    for (Eigen::Index j = i + 1; j < dim(); ++j, ++k) {
      if (s_(i, j) < 0) bits |= std::uint64_t{1} << k;
    }
  }
  return bits;
}

bool SignMatrix::lex_less(const SignMatrix& other) const {
  if (dim() != other.dim()) return dim() < other.dim();
  for (Eigen::Index i = 0; i < dim(); ++i) {
    for (Eigen::Index j = i + 1; j < dim(); ++j) {
      if (s_(i, j) != other.s_(i, j)) return s_(i, j) < other.s_(i, j);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// WeightVector

WeightVector::WeightVector(const Vector& w, double tol) {
  if (w.size() == 0) throw PreconditionError("WeightVector: empty");
  if (w.minCoeff() < 0.0) {
    throw PreconditionError("WeightVector: negative weight");
  }
  if (std::abs(w.sum() - 1.0) > tol) {
    throw PreconditionError("WeightVector: weights do not sum to 1");
  }
  w_ = w;
}

WeightVector WeightVector::uniform(Eigen::Index d) {
  return WeightVector(Vector::Constant(d, 1.0 / static_cast<double>(d)));
}

Matrix WeightVector::scale(const Matrix& s) const {
  const Vector root = w_.cwiseSqrt();
  return root.asDiagonal() * s * root.asDiagonal();
}

// ---------------------------------------------------------------------------
// OrthoProjection

OrthoProjection OrthoProjection::from_orthonormal(const Matrix& basis) {
  Matrix p = basis * basis.transpose();
  p = 0.5 * (p + p.transpose());
  return OrthoProjection(std::move(p), static_cast<int>(basis.cols()));
}

const char* to_string(ProjectionInvariant inv) {
  switch (inv) {
    case ProjectionInvariant::kSquare: return "square";
    case ProjectionInvariant::kSymmetry: return "symmetry";
    case ProjectionInvariant::kIdempotence: return "idempotence";
    case ProjectionInvariant::kTrace: return "trace";
    case ProjectionInvariant::kSpectrum: return "spectrum";
  }
  return "unknown";
}

namespace {

std::string projection_message(ProjectionInvariant inv, double violation) {
  std::ostringstream os;
  os << "not an orthogonal projection: " << to_string(inv)
     << " violated by " << violation;
  return os.str();
}

}  // namespace

ProjectionError::ProjectionError(ProjectionInvariant inv, double violation)
    : std::invalid_argument(projection_message(inv, violation)),
      invariant_(inv),
      violation_(violation) {}

// ---------------------------------------------------------------------------
// Eigen-decomposition

namespace {

void normalize_spectrum(Vector values, Matrix vectors, Spectrum& out) {
  const Eigen::Index d = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return values(a) > values(b);
  });
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    out.values(k) = values(order[static_cast<std::size_t>(k)]);
    Vector v = vectors.col(order[static_cast<std::size_t>(k)]);
    v.normalize();
    for (Eigen::Index i = 0; i < d; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    out.vectors.col(k) = v;
  }
}

}  // namespace

Spectrum eig_sym_jacobi(const SymMatrix& sym) {
  constexpr int kMaxSweeps = 100;
  const Eigen::Index d = sym.dim();
  Matrix a = sym.matrix();
  Matrix v = Matrix::Identity(d, d);

  const double scale = std::max(a.norm(), 1e-300);
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < d; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (Eigen::Index p = 0; p < d; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < d; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < d; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < d; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == kMaxSweeps) {
    throw ConvergenceError("eig_sym: Jacobi iteration did not converge");
  }
  Spectrum out;
  normalize_spectrum(a.diagonal(), v, out);
  return out;
}

Spectrum eig_sym(const SymMatrix& a) {
  if (a.dim() <= 64) return eig_sym_jacobi(a);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eig_sym: tridiagonal QL iteration did not converge");
  }
  Spectrum out;
  normalize_spectrum(solver.eigenvalues(), solver.eigenvectors(), out);
  return out;
}

// ---------------------------------------------------------------------------
// Perron pair

PerronPair perron(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw PreconditionError("perron: matrix must be square and nonempty");
  }
  if (m.minCoeff() <= 0.0) {
    throw PreconditionError("perron: matrix has a nonpositive entry");
  }
  const Eigen::Index d = m.rows();
  const bool symmetric = max_abs(m - m.transpose()) <= 1e-14 * max_abs(m);

  PerronPair out;
  if (symmetric && d <= 512) {
    const Spectrum spec = eig_sym(SymMatrix(m, 1e-13));
    out.rho = spec.values(0);
    out.v = spec.vectors.col(0).cwiseAbs();
    out.v.normalize();
  } else {
    constexpr int kMaxIter = 100000;
    Vector v = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
    double rho = 0.0;
    int it = 0;
    for (; it < kMaxIter; ++it) {
      const Vector mv = m * v;
      rho = v.dot(mv);
      if ((mv - rho * v).norm() <= 1e-12 * std::max(1.0, rho)) break;
      v = mv.normalized();
    }
    if (it == kMaxIter) {
      throw ConvergenceError("perron: power iteration did not converge");
    }
    out.rho = rho;
    out.v = v;
  }
  const double residual = (m * out.v - out.rho * out.v).norm();
  if (residual > 1e-10 * std::max(1.0, out.rho) || out.v.minCoeff() <= 0.0) {
    throw ConvergenceError("perron: eigen-equation residual too large");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sign patterns

SignPattern sign_pattern(const Matrix& a, double tau) {
  SignPattern out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j) > tau ? 1 : (a(i, j) < -tau ? -1 : 0);
    }
  }
  return out;
}

SignMatrix complete_sign_pattern(const SignPattern& pattern) {
  Matrix s = pattern.cast<double>();
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      if (s(i, j) == 0.0) s(i, j) = 1.0;
    }
  }
  return SignMatrix(s);
}

// ---------------------------------------------------------------------------
// Projections

OrthoProjection validate_projection(const Matrix& p, int n, double tol) {
  if (p.rows() != p.cols() || p.rows() == 0) {
    throw ProjectionError(ProjectionInvariant::kSquare,
                          static_cast<double>(std::abs(p.rows() - p.cols())));
  }
  const double asym = max_abs(p - p.transpose());
  if (asym > tol) throw ProjectionError(ProjectionInvariant::kSymmetry, asym);
  const Matrix sym = 0.5 * (p + p.transpose());
  const double idem = max_abs(sym * sym - sym);
  if (idem > tol) throw ProjectionError(ProjectionInvariant::kIdempotence, idem);
  const double trace_err = std::abs(sym.trace() - n);
  if (trace_err > tol) throw ProjectionError(ProjectionInvariant::kTrace, trace_err);

  const Spectrum spec = eig_sym(SymMatrix(sym));
  double worst = 0.0;
  for (Eigen::Index k = 0; k < spec.values.size(); ++k) {
    const double lam = spec.values(k);
    worst = std::max(worst, std::min(std::abs(lam), std::abs(lam - 1.0)));
  }
  if (worst > std::max(tol, 1e-8)) {
    throw ProjectionError(ProjectionInvariant::kSpectrum, worst);
  }
  return OrthoProjection(sym, n);
}

RowSumStats row_sum_stats(const Matrix& p) {
  const Vector sums = p.cwiseAbs().rowwise().sum();
  RowSumStats out;
  out.r = sums.minCoeff();
  out.R = sums.maxCoeff();
  out.gap = out.R - out.r;
  return out;
}

}  // namespace projconst
