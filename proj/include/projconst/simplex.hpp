#pragma once

// Dense two-phase primal simplex with Bland's anti-cycling rule on degenerate
// steps and periodic refactorization of the basis.

#include <cstddef>
#include <utility>
#include <vector>

namespace projconst::lp {

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

enum class Status { kOptimal, kInfeasible, kUnbounded, kPivotLimit };

const char* to_string(Status s);

struct Constraint {
  std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

/// minimize c'x subject to the constraints; variables are nonnegative unless
/// marked free.
class LinearProgram {
 public:
  explicit LinearProgram(int num_vars);

  int num_vars() const { return static_cast<int>(cost_.size()); }
  void set_cost(int var, double c) { cost_.at(static_cast<std::size_t>(var)) = c; }
  void set_free(int var) { free_.at(static_cast<std::size_t>(var)) = true; }
  void add(Constraint c) { rows_.push_back(std::move(c)); }

  const std::vector<double>& cost() const { return cost_; }
  const std::vector<bool>& free_vars() const { return free_; }
  const std::vector<Constraint>& constraints() const { return rows_; }

 private:
  std::vector<double> cost_;
  std::vector<bool> free_;
  std::vector<Constraint> rows_;
};

struct Options {
  double tol = 1e-9;        // feasibility and optimality
  double pivot_tol = 1e-7;  // smallest admissible pivot element
  long max_pivots = 5'000'000;
};

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  long pivots = 0;
};

Solution solve(const LinearProgram& lp, const Options& opts = {});

}  // namespace projconst::lp
