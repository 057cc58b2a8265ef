#include "projconst/rationalize.hpp"

#include <cfenv>
#include <cmath>
#include <limits>
#include <sstream>

namespace projconst::rationalize {

std::int64_t choose_k(int n, int m, double eps, double eps0) {
  if (!(eps > 0.0) || !(eps0 > 0.0)) {
    throw PreconditionError("choose_k: eps and eps0 must be positive");
  }
  if (n < 1 || m < 1) throw PreconditionError("choose_k: n and m must be >= 1");
  const double bound =
      4.0 * (m - 1) * std::sqrt(static_cast<double>(n)) / (eps * eps0);
  if (bound >= 9.0e18) {
    throw PreconditionError("choose_k: required k does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(std::floor(bound)) + 1;
}

std::int64_t default_q_cap(std::int64_t k, int m) {
  std::int64_t cap = 1;
  for (int i = 1; i < m; ++i) {
    if (cap > kDefaultQCap / std::max<std::int64_t>(k, 1)) return kDefaultQCap;
    cap *= k;
  }
  return std::min(cap, kDefaultQCap);
}

namespace {

// Round half to even, independent of the caller's rounding mode.
double round_even(double x) {
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double r = std::nearbyint(x);
  std::fesetround(saved);
  return r;
}

}  // namespace

RationalWeights dirichlet_approx(const Vector& weights, std::int64_t k, std::int64_t q_cap) {
  const Eigen::Index m = weights.size();
  if (m == 0) throw PreconditionError("dirichlet_approx: empty weight vector");
  if (k < 1) throw PreconditionError("dirichlet_approx: k must be >= 1");
  if (weights.minCoeff() <= 0.0) {
    throw PreconditionError("dirichlet_approx: weights must be strictly positive");
  }
  if (std::abs(weights.sum() - 1.0) > 1e-12) {
    throw PreconditionError("dirichlet_approx: weights must sum to 1");
  }

  const double accept = 1.0 / static_cast<double>(k);
  std::int64_t best_q = 0;
  double best_err = std::numeric_limits<double>::infinity();
  for (std::int64_t q = 1; q <= q_cap; ++q) {
    const double qd = static_cast<double>(q);
    double err = 0.0;
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
      const double x = qd * weights(i);
      err = std::max(err, std::abs(x - round_even(x)));
    }
    if (err < best_err) {
      best_err = err;
      best_q = q;
    }
    if (err > accept) continue;

    RationalWeights out;
    out.q = q;
    out.k = k;
    std::int64_t rest = q;
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
      out.p.push_back(static_cast<std::int64_t>(round_even(qd * weights(i))));
      rest -= out.p.back();
    }
    out.p.push_back(rest);
    for (std::size_t i = 0; i < out.p.size(); ++i) {
      if (out.p[i] <= 0) {
        std::ostringstream os;
        os << "dirichlet_approx: numerator " << i << " is " << out.p[i]
           << " at q = " << q << "; k = " << k << " is too small for these weights";
        throw PreconditionError(os.str());
      }
    }
    return out;
  }
  std::ostringstream os;
  os << "dirichlet_approx: no denominator q <= " << q_cap << " reaches 1/k = " << accept
     << " (best q = " << best_q << ", error " << best_err << ")";
  throw ResourceError(os.str(), best_q, best_err);
}

double scaled_max_error(const Vector& weights, const RationalWeights& rw) {
  const double q = static_cast<double>(rw.q);
  double err = 0.0;
  for (Eigen::Index i = 0; i + 1 < weights.size(); ++i) {
    err = std::max(err, std::abs(q * weights(i) - static_cast<double>(rw.p[i])));
  }
  return err;
}

double scaled_total_error(const Vector& weights, const RationalWeights& rw) {
  const double q = static_cast<double>(rw.q);
  double err = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    err += std::abs(q * weights(i) - static_cast<double>(rw.p[i]));
  }
  return err;
}

}  // namespace projconst::rationalize
