#pragma once

// Lower bounds for, and at small d exact values of, the maximal relative
// projection constant Pi(n, d) = max pi_n(sqrt(D) S sqrt(D)) over sign
// matrices S and weights D.

#include "projconst/matcore.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace projconst::search {

struct SearchResult {
  SignMatrix S;
  WeightVector D;
  double value = 0.0;
  OrthoProjection P;  // Ky Fan maximizer of sqrt(D) S sqrt(D)
  int iterations = 0;
  bool converged = false;
  /// Objective after each update step (Ky Fan, sign, weight, Ky Fan, ...).
  std::vector<double> history;
};

/// pi_n(sqrt(D) S sqrt(D)).
double objective(const SignMatrix& s, const WeightVector& d, int n);

/// Alternates (i) P <- Ky Fan maximizer of sqrt(D) S sqrt(D),
/// (ii) S <- Sgn(P) with zeros read as +1, (iii) D <- squared Perron vector
/// of |P| when |P| is strictly positive. Stops once one round gains <= tol
/// and moves no weight by more than 1e-9.
SearchResult alternate_maximize(int n, const SignMatrix& s0, const WeightVector& d0,
                                int max_iter = 200, double tol = 1e-12);

/// Uniform weights followed by count - 1 strictly positive points of a
/// Halton sequence pushed onto the simplex. Deterministic.
std::vector<WeightVector> restart_weights(Eigen::Index d, int count);

inline constexpr int kDefaultRestarts = 5;
inline constexpr int kMaxExhaustiveDim = 7;

class GuardError : public std::runtime_error {
 public:
  GuardError(const std::string& what, std::uint64_t candidates)
      : std::runtime_error(what), candidates_(candidates) {}
  std::uint64_t candidates() const { return candidates_; }

 private:
  std::uint64_t candidates_;
};

struct ExhaustiveStats {
  std::uint64_t labelled = 0;  // 2^(d(d-1)/2)
  std::uint64_t evaluated = 0;  // candidates left after pruning
};

/// Maximizes over every sign matrix of order d <= 7, optimizing the weights
/// of each candidate by alternate_maximize from restart_weights(d, restarts).
/// Candidates are reduced modulo switching (first row all +1) and modulo
/// relabelling of the remaining vertices; pi_n is invariant under both.
/// Equal values (within 1e-12) go to the lexicographically smallest S.
SearchResult exhaustive_pi(int n, int d, int restarts = kDefaultRestarts,
                           ExhaustiveStats* stats = nullptr);

/// Canonical upper-triangle bits of the graph with the given bits under
/// vertex relabelling. Permutations are restricted to those that keep the
/// vertices sorted by degree, which is enough for a canonical form.
std::uint64_t canonical_bits(int d, std::uint64_t bits);

/// sqrt(2/pi) sqrt(n), the strict lower bound on Pi_n from the projection
/// constant of Euclidean space.
double gruenbaum_floor(int n);

}  // namespace projconst::search
