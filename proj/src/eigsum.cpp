#include "projconst/eigsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace projconst::eigsum {

namespace {

void check_rank(int n, Eigen::Index d, const char* op) {
  if (n < 1 || n > d) {
    std::ostringstream os;
    os << op << ": rank " << n << " outside [1, " << d << "]";
    throw PreconditionError(os.str());
  }
}

double top_sum(const Vector& descending, int n) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += descending(k);
  return s;
}

}  // namespace

KyFanResult kyfan_sum(const SymMatrix& a, int n) {
  check_rank(n, a.dim(), "kyfan_sum");
  const Spectrum spec = eig_sym(a);
  return {top_sum(spec.values, n),
          OrthoProjection::from_orthonormal(spec.vectors.leftCols(n))};
}

bool CuccSelection::feasible() const {
  return value != -std::numeric_limits<double>::infinity();
}

std::vector<std::complex<double>> general_eigenvalues(const Matrix& m) {
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("pi_n_general: nonsymmetric eigensolver failed");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

CuccSelection pi_n_general(const Matrix& m, int n) {
  if (m.rows() != m.cols()) throw PreconditionError("pi_n_general: not square");
  check_rank(n, m.rows(), "pi_n_general");

  if (max_abs(m - m.transpose()) == 0.0) {
    const Spectrum spec = eig_sym(SymMatrix(m));
    CuccSelection out;
    out.value = top_sum(spec.values, n);
    for (int k = 0; k < n; ++k) out.indices.push_back(k);
    return out;
  }

  const auto ev = general_eigenvalues(m);
  const int d = static_cast<int>(ev.size());

  // Items of size 1 (real eigenvalues) and size 2 (conjugate pairs).
  struct Item {
    int size;
    double value;
    int first;
    int second;
  };
  std::vector<Item> items;
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  for (int i = 0; i < d; ++i) {
    if (std::abs(ev[i].imag()) <= kRealAxisTol) {
      items.push_back({1, ev[i].real(), i, -1});
      used[i] = true;
    }
  }
  for (int i = 0; i < d; ++i) {
    if (used[i] || ev[i].imag() < 0) continue;
    int best = -1;
    double best_dist = kPairingTol;
    for (int j = 0; j < d; ++j) {
      if (used[j] || j == i || ev[j].imag() > 0) continue;
      const double dist = std::abs(ev[i] - std::conj(ev[j]));
      if (dist <= best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (best >= 0) {
      used[i] = used[best] = true;
      items.push_back({2, ev[i].real() + ev[best].real(), i, best});
    }
  }

  // best[t][k]: largest value using items [0, t) with exactly k slots.
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  const std::size_t count = items.size();
  std::vector<std::vector<double>> best(count + 1,
                                        std::vector<double>(n + 1, kNone));
  best[0][0] = 0.0;
  for (std::size_t t = 0; t < count; ++t) {
    for (int k = 0; k <= n; ++k) {
      best[t + 1][k] = best[t][k];
      const int prev = k - items[t].size;
      if (prev >= 0 && best[t][prev] != kNone) {
        best[t + 1][k] = std::max(best[t + 1][k], best[t][prev] + items[t].value);
      }
    }
  }

  CuccSelection out;
  out.value = best[count][n];
  if (!out.feasible()) return out;
  int k = n;
  for (std::size_t t = count; t > 0; --t) {
    if (best[t][k] == best[t - 1][k]) continue;
    const Item& item = items[t - 1];
    out.indices.push_back(item.first);
    if (item.size == 2) out.indices.push_back(item.second);
    k -= item.size;
  }
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

EqualityCase equality_case(const SymMatrix& a, const OrthoProjection& p, double tol) {
  if (a.dim() != p.dim()) throw PreconditionError("equality_case: dimension mismatch");
  const Matrix& am = a.matrix();
  const Matrix& pm = p.matrix();
  EqualityCase out;
  out.commutes = max_abs(am * pm - pm * am) <= tol;
  const double pi_n = kyfan_sum(a, p.rank()).value;
  out.is_maximizer = std::abs((am * pm).trace() - pi_n) <= tol;
  return out;
}

SpectralGap spectral_gap_bound(const OrthoProjection& p) {
  const Matrix abs_p = p.matrix().cwiseAbs();
  if (!is_strictly_positive(abs_p)) {
    throw PreconditionError("spectral_gap_bound: |P| has a zero entry");
  }
  if (p.rank() < 2) {
    throw PreconditionError("spectral_gap_bound: rank must be at least 2");
  }
  const double root_n = std::sqrt(static_cast<double>(p.rank()));
  const Spectrum spec = eig_sym(SymMatrix(abs_p));

  SpectralGap out;
  out.lambda1 = spec.values(0);
  out.lambda2 = spec.values.size() > 1 ? spec.values(1) : 0.0;
  out.threshold = (std::sqrt(3.0) - 1.0) * root_n;
  out.applicable = out.lambda1 > out.threshold;
  out.bound = root_n / out.lambda1 - out.lambda1 / (2.0 * root_n);
  out.c = out.lambda2 / out.lambda1;
  return out;
}

}  // namespace projconst::eigsum
