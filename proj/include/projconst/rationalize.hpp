#pragma once

// Simultaneous rational approximation of weight vectors. The numerators become
// blow-up multiplicities.

#include "projconst/matcore.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace projconst::rationalize {

struct RationalWeights {
  std::vector<std::int64_t> p;  // numerators, each >= 1, summing to q
  std::int64_t q = 1;           // common denominator
  std::int64_t k = 1;           // approximation quality: |q d_i - p_i| <= 1/k for i < m
};

/// Thrown when no denominator up to the cap passes the acceptance test.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::int64_t best_q, double best_error)
      : std::runtime_error(what), best_q_(best_q), best_error_(best_error) {}

  std::int64_t best_q() const { return best_q_; }
  double best_error() const { return best_error_; }

 private:
  std::int64_t best_q_;
  double best_error_;
};

/// Smallest integer k > 4 (m - 1) sqrt(n) / (eps * eps0). sqrt(n) stands in
/// for the unknown maximal projection constant, which never exceeds it.
std::int64_t choose_k(int n, int m, double eps, double eps0);

inline constexpr std::int64_t kDefaultQCap = 1'000'000;

/// min(k^(m-1), 10^6), saturating.
std::int64_t default_q_cap(std::int64_t k, int m);

/// Smallest q in [1, q_cap] with |q d_i - round(q d_i)| <= 1/k for every
/// i < m; p_i = round(q d_i) (ties to even) and p_m = q - sum of the others.
/// Throws ResourceError when the scan runs out and PreconditionError when a
/// numerator comes out <= 0.
RationalWeights dirichlet_approx(const Vector& weights, std::int64_t k, std::int64_t q_cap);
inline RationalWeights dirichlet_approx(const Vector& weights, std::int64_t k) {
  return dirichlet_approx(weights, k,
                          default_q_cap(k, static_cast<int>(weights.size())));
}

/// q * max_{i<m} |d_i - p_i / q|.
double scaled_max_error(const Vector& weights, const RationalWeights& rw);
/// q * sum_i |d_i - p_i / q|.
double scaled_total_error(const Vector& weights, const RationalWeights& rw);

}  // namespace projconst::rationalize
