#include "projconst/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace projconst::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kPivotLimit: return "pivot limit";
  }
  return "unknown";
}

LinearProgram::LinearProgram(int num_vars)
    : cost_(static_cast<std::size_t>(num_vars), 0.0),
      free_(static_cast<std::size_t>(num_vars), false) {}

namespace {

using Dense = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

// Tableau B^-1 [A | b] over the standard-form data [A | b], kept alongside
// the original so that it can be rebuilt from the basis when rounding drifts.
class Tableau {
 public:
  Tableau(Dense a, Eigen::VectorXd b, std::vector<Index> basis)
      : a0_(std::move(a)), b0_(std::move(b)), basis_(std::move(basis)),
        basic_(static_cast<std::size_t>(a0_.cols()), false) {
    for (Index c : basis_) basic_[static_cast<std::size_t>(c)] = true;
    refactor();
  }

  Index rows() const { return a0_.rows(); }
  Index cols() const { return a0_.cols(); }
  const std::vector<Index>& basis() const { return basis_; }
  double rhs(Index r) const { return t_(r, cols()); }
  double at(Index r, Index c) const { return t_(r, c); }
  double reduced_cost(Index c) const { return z_(c); }
  bool is_basic(Index c) const { return basic_[static_cast<std::size_t>(c)]; }

  void set_cost(const Eigen::VectorXd& c) {
    c_ = c;
    price();
  }

  // Objective c_B' x_B of the current basic solution.
  double objective() const {
    double s = 0.0;
    for (Index r = 0; r < rows(); ++r) s += c_(basis_[static_cast<std::size_t>(r)]) * rhs(r);
    return s;
  }

  void pivot(Index pr, Index pc) {
    t_.row(pr) /= t_(pr, pc);
    t_(pr, pc) = 1.0;
    for (Index r = 0; r < t_.rows(); ++r) {
      if (r == pr) continue;
      const double f = t_(r, pc);
      if (f == 0.0) continue;
      t_.row(r) -= f * t_.row(pr);
      t_(r, pc) = 0.0;
    }
    const double f = z_(pc);
    if (f != 0.0) {
      z_ -= f * t_.row(pr).head(cols()).transpose();
      z_(pc) = 0.0;
    }
    basic_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(pr)])] = false;
    basic_[static_cast<std::size_t>(pc)] = true;
    basis_[static_cast<std::size_t>(pr)] = pc;
  }

  // Rebuilds B^-1 [A | b] from the original data and reprices.
  void refactor() {
    const Index m = rows();
    Eigen::MatrixXd basis_cols(m, m);
    for (Index r = 0; r < m; ++r) basis_cols.col(r) = a0_.col(basis_[static_cast<std::size_t>(r)]);
    Eigen::MatrixXd full(m, cols() + 1);
    full.leftCols(cols()) = a0_;
    full.col(cols()) = b0_;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_cols);
    t_ = lu.solve(full);
    for (Index r = 0; r < m; ++r) {
      t_(r, basis_[static_cast<std::size_t>(r)]) = 1.0;
    }
    if (c_.size() == cols()) price();
  }

  // Removes row r, a redundant equality whose basic variable is artificial.
  void drop_row(Index r) {
    auto drop = [r](auto& mat) {
      const Index tail = mat.rows() - r - 1;
      mat.middleRows(r, tail) = mat.bottomRows(tail).eval();
      mat.conservativeResize(mat.rows() - 1, Eigen::NoChange);
    };
    drop(a0_);
    drop(t_);
    const Index tail = b0_.size() - r - 1;
    b0_.segment(r, tail) = b0_.tail(tail).eval();
    b0_.conservativeResize(b0_.size() - 1);
    basic_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
    basis_.erase(basis_.begin() + r);
  }

 private:
  void price() {
    z_ = c_;
    for (Index r = 0; r < rows(); ++r) {
      const double cb = c_(basis_[static_cast<std::size_t>(r)]);
      if (cb != 0.0) z_ -= cb * t_.row(r).head(cols()).transpose();
    }
    for (Index r = 0; r < rows(); ++r) z_(basis_[static_cast<std::size_t>(r)]) = 0.0;
  }

  Dense a0_;
  Eigen::VectorXd b0_;
  std::vector<Index> basis_;
  std::vector<bool> basic_;
  Dense t_;
  Eigen::VectorXd c_;
  Eigen::VectorXd z_;
};

constexpr long kRefactorEvery = 50;

// Leaving row for column `enter` among entries above `pivot_tol`, or t.rows()
// when there is none. Degenerate steps (minimum ratio zero) follow Bland's
// rule: the zero-ratio row whose basic variable has the lowest index, skipping
// entries far below the largest one. Nondegenerate steps strictly decrease
// the objective and cannot cycle, so they take the largest pivot within the
// Harris window of ratios <= min_r (rhs_r + tol) / a_r.
Index ratio_test(const Tableau& t, Index enter, double pivot_tol, double tol) {
  const Index none = t.rows();
  double window = std::numeric_limits<double>::infinity();
  double best_ratio = std::numeric_limits<double>::infinity();
  for (Index r = 0; r < t.rows(); ++r) {
    const double a = t.at(r, enter);
    if (a <= pivot_tol) continue;
    const double rhs = std::max(t.rhs(r), 0.0);
    window = std::min(window, (rhs + tol) / a);
    best_ratio = std::min(best_ratio, rhs / a);
  }
  if (best_ratio == std::numeric_limits<double>::infinity()) return none;

  if (best_ratio <= tol) {
    double biggest = 0.0;
    for (Index r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a > pivot_tol && std::max(t.rhs(r), 0.0) / a <= tol) biggest = std::max(biggest, a);
    }
    Index leave = none;
    for (Index r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= pivot_tol || a < 1e-3 * biggest || std::max(t.rhs(r), 0.0) / a > tol) continue;
      if (leave == none || t.basis()[static_cast<std::size_t>(r)] <
                               t.basis()[static_cast<std::size_t>(leave)]) {
        leave = r;
      }
    }
    return leave;
  }

  Index leave = none;
  for (Index r = 0; r < t.rows(); ++r) {
    const double a = t.at(r, enter);
    if (a <= pivot_tol || std::max(t.rhs(r), 0.0) / a > window) continue;
    if (leave == none || a > t.at(leave, enter)) leave = r;
  }
  return leave;
}

// Primal simplex. The entering column is the lowest-index nonbasic column
// with negative reduced cost (Bland); the leaving row comes from ratio_test.
// Columns with allowed[j] == false never enter.
Status run(Tableau& t, const std::vector<bool>& allowed, const Options& opts, long& pivots) {
  long since_refactor = 0;
  while (true) {
    Index enter = t.cols();
    for (Index j = 0; j < t.cols(); ++j) {
      if (allowed[static_cast<std::size_t>(j)] && !t.is_basic(j) &&
          t.reduced_cost(j) < -opts.tol) {
        enter = j;
        break;
      }
    }
    if (enter == t.cols()) {
      // Confirm optimality on freshly factored data before stopping.
      if (since_refactor == 0) return Status::kOptimal;
      t.refactor();
      since_refactor = 0;
      continue;
    }

    Index leave = ratio_test(t, enter, opts.pivot_tol, opts.tol);
    bool small_pivot = false;
    if (leave == t.rows()) {
      if (since_refactor > 0) {
        t.refactor();
        since_refactor = 0;
        continue;
      }
      // Only small entries remain; accept one rather than misreport
      // unboundedness, and refactor right after.
      leave = ratio_test(t, enter, opts.tol, opts.tol);
      small_pivot = true;
    }
    if (leave == t.rows()) return Status::kUnbounded;
    if (++pivots > opts.max_pivots) return Status::kPivotLimit;
    small_pivot = small_pivot || t.at(leave, enter) < 1e-5;
    t.pivot(leave, enter);
    if (++since_refactor >= kRefactorEvery || small_pivot) {
      t.refactor();
      since_refactor = 0;
    }
  }
}

}  // namespace

Solution solve(const LinearProgram& lp, const Options& opts) {
  const auto& rows = lp.constraints();
  const Index m = static_cast<Index>(rows.size());
  const std::size_t nv = static_cast<std::size_t>(lp.num_vars());

  // Column layout: structural (free variables split in two), slacks, artificials.
  std::vector<Index> pos(nv), neg(nv, -1);
  Index ncols = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    pos[j] = ncols++;
    if (lp.free_vars()[j]) neg[j] = ncols++;
  }
  std::vector<Index> slack(static_cast<std::size_t>(m), -1);
  for (Index r = 0; r < m; ++r) {
    if (rows[static_cast<std::size_t>(r)].sense != Sense::kEqual) {
      slack[static_cast<std::size_t>(r)] = ncols++;
    }
  }
  const Index slack_end = ncols;

  // Rows are negated where needed so that every rhs is nonnegative; rows whose
  // slack then has coefficient +1 start with the slack basic, the rest get an
  // artificial.
  std::vector<double> flip(static_cast<std::size_t>(m), 1.0);
  std::vector<Index> artificial(static_cast<std::size_t>(m), -1);
  for (Index r = 0; r < m; ++r) {
    const Constraint& row = rows[static_cast<std::size_t>(r)];
    if (row.rhs < 0) flip[static_cast<std::size_t>(r)] = -1.0;
    const double f = flip[static_cast<std::size_t>(r)];
    const double slack_coef =
        row.sense == Sense::kLessEqual ? f : (row.sense == Sense::kGreaterEqual ? -f : 0.0);
    if (slack_coef != 1.0) artificial[static_cast<std::size_t>(r)] = ncols++;
  }

  Dense a = Dense::Zero(m, ncols);
  Eigen::VectorXd b(m);
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index r = 0; r < m; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    const Constraint& row = rows[ur];
    for (auto [var, coef] : row.coeffs) {
      const auto j = static_cast<std::size_t>(var);
      if (j >= nv) throw std::out_of_range("lp::solve: variable index out of range");
      a(r, pos[j]) += flip[ur] * coef;
      if (neg[j] >= 0) a(r, neg[j]) -= flip[ur] * coef;
    }
    if (slack[ur] >= 0) {
      a(r, slack[ur]) = flip[ur] * (row.sense == Sense::kLessEqual ? 1.0 : -1.0);
    }
    b(r) = flip[ur] * row.rhs;
    if (artificial[ur] >= 0) {
      a(r, artificial[ur]) = 1.0;
      basis[ur] = artificial[ur];
    } else {
      basis[ur] = slack[ur];
    }
  }

  Tableau t(std::move(a), std::move(b), std::move(basis));
  Solution sol;
  std::vector<bool> allowed(static_cast<std::size_t>(ncols), true);

  const bool any_artificial =
      std::any_of(artificial.begin(), artificial.end(), [](Index c) { return c >= 0; });
  if (any_artificial) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(ncols);
    for (Index c : artificial) {
      if (c >= 0) phase1(c) = 1.0;
    }
    t.set_cost(phase1);
    const Status s1 = run(t, allowed, opts, sol.pivots);
    if (s1 == Status::kPivotLimit) {
      sol.status = s1;
      return sol;
    }
    double scale = 1.0;
    for (const Constraint& row : rows) scale = std::max(scale, std::abs(row.rhs));
    if (t.objective() > 1e3 * opts.tol * scale) {
      sol.status = Status::kInfeasible;
      return sol;
    }
    // Pivot zero-valued artificials out of the basis; rows where that is
    // impossible are linear combinations of the others and are dropped.
    for (Index r = 0; r < t.rows();) {
      if (t.basis()[static_cast<std::size_t>(r)] < slack_end) {
        ++r;
        continue;
      }
      Index col = slack_end;
      double big = opts.pivot_tol;
      for (Index j = 0; j < slack_end; ++j) {
        if (std::abs(t.at(r, j)) > big) {
          big = std::abs(t.at(r, j));
          col = j;
        }
      }
      if (col == slack_end) {
        t.drop_row(r);
      } else {
        t.pivot(r, col);
        ++sol.pivots;
        ++r;
      }
    }
    for (Index j = slack_end; j < ncols; ++j) allowed[static_cast<std::size_t>(j)] = false;
    t.refactor();
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(ncols);
  for (std::size_t j = 0; j < nv; ++j) {
    phase2(pos[j]) = lp.cost()[j];
    if (neg[j] >= 0) phase2(neg[j]) = -lp.cost()[j];
  }
  t.set_cost(phase2);
  sol.status = run(t, allowed, opts, sol.pivots);
  if (sol.status != Status::kOptimal) return sol;

  std::vector<double> col_value(static_cast<std::size_t>(ncols), 0.0);
  for (Index r = 0; r < t.rows(); ++r) {
    col_value[static_cast<std::size_t>(t.basis()[static_cast<std::size_t>(r)])] = t.rhs(r);
  }
  sol.x.assign(nv, 0.0);
  sol.objective = 0.0;
  for (std::size_t j = 0; j < nv; ++j) {
    sol.x[j] = col_value[static_cast<std::size_t>(pos[j])] -
               (neg[j] >= 0 ? col_value[static_cast<std::size_t>(neg[j])] : 0.0);
    sol.objective += lp.cost()[j] * sol.x[j];
  }
  return sol;
}

}  // namespace projconst::lp
