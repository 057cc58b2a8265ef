#include "projconst/relproj.hpp"

#include "projconst/eigsum.hpp"
#include "projconst/search.hpp"
#include "projconst/simplex.hpp"

#include <cmath>
#include <sstream>

namespace projconst::relproj {

const char* to_string(Space s) { return s == Space::kL1 ? "l1" : "linf"; }

Space parse_space(const std::string& s) {
  if (s == "l1") return Space::kL1;
  if (s == "linf") return Space::kLinf;
  throw PreconditionError("unknown space '" + s + "' (expected l1 or linf)");
}

SubspaceBasis::SubspaceBasis(Matrix columns) : v_(std::move(columns)) {
  if (v_.cols() < 1 || v_.cols() > v_.rows()) {
    throw PreconditionError("SubspaceBasis: need 1 <= n <= d columns");
  }
  Eigen::JacobiSVD<Matrix> svd(v_);
  const double smallest = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(smallest > kMinSingularValue)) {
    std::ostringstream os;
    os << "SubspaceBasis: columns are linearly dependent (smallest singular value "
       << smallest << ")";
    throw PreconditionError(os.str());
  }
}

OrthoProjection SubspaceBasis::orthogonal_projection() const {
  Eigen::HouseholderQR<Matrix> qr(v_);
  const Matrix q = qr.householderQ() * Matrix::Identity(v_.rows(), v_.cols());
  return OrthoProjection::from_orthonormal(q);
}

double nu1(const Matrix& a, Space space) {
  if (a.size() == 0) return 0.0;
  const Matrix abs_a = a.cwiseAbs();
  return space == Space::kLinf ? abs_a.colwise().maxCoeff().sum()
                               : abs_a.rowwise().maxCoeff().sum();
}

double operator_norm(const Matrix& q, Space space) {
  const Matrix abs_q = q.cwiseAbs();
  return space == Space::kL1 ? abs_q.colwise().sum().maxCoeff()
                             : abs_q.rowwise().sum().maxCoeff();
}

MinProjection min_projection_norm(const SubspaceBasis& e, Space space) {
  const int d = static_cast<int>(e.ambient_dim());
  const int n = static_cast<int>(e.dim());
  // Any basis of E gives the same program; an orthonormal one keeps the
  // equality block well conditioned.
  Eigen::HouseholderQR<Matrix> qr(e.columns());
  const Matrix v = qr.householderQ() * Matrix::Identity(d, n);

  // Variables: M (n x d, free) | U (d x d) >= |VM| | t >= every abs-sum.
  auto m_var = [&](int k, int j) { return k * d + j; };
  auto u_var = [&](int i, int j) { return n * d + i * d + j; };
  const int t_var = n * d + d * d;
  lp::LinearProgram prog(t_var + 1);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < d; ++j) prog.set_free(m_var(k, j));
  }
  prog.set_cost(t_var, 1.0);

  // M V = I_n.
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      lp::Constraint c;
      c.sense = lp::Sense::kEqual;
      c.rhs = k == l ? 1.0 : 0.0;
      for (int j = 0; j < d; ++j) {
        if (v(j, l) != 0.0) c.coeffs.emplace_back(m_var(k, j), v(j, l));
      }
      prog.add(std::move(c));
    }
  }
  // +-(VM)_ij - U_ij <= 0.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (double sign : {1.0, -1.0}) {
        lp::Constraint c;
        c.sense = lp::Sense::kLessEqual;
        for (int k = 0; k < n; ++k) {
          if (v(i, k) != 0.0) c.coeffs.emplace_back(m_var(k, j), sign * v(i, k));
        }
        c.coeffs.emplace_back(u_var(i, j), -1.0);
        prog.add(std::move(c));
      }
    }
  }
  // Column (l1) or row (linf) sums of U bounded by t.
  for (int a = 0; a < d; ++a) {
    lp::Constraint c;
    c.sense = lp::Sense::kLessEqual;
    for (int b = 0; b < d; ++b) {
      c.coeffs.emplace_back(space == Space::kL1 ? u_var(b, a) : u_var(a, b), 1.0);
    }
    c.coeffs.emplace_back(t_var, -1.0);
    prog.add(std::move(c));
  }

  const lp::Solution sol = lp::solve(prog);
  if (sol.status != lp::Status::kOptimal) {
    throw std::logic_error(std::string("min_projection_norm: simplex returned ") +
                           lp::to_string(sol.status) + " on a feasible bounded program");
  }
  Matrix m(n, d);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < d; ++j) m(k, j) = sol.x[static_cast<std::size_t>(m_var(k, j))];
  }
  MinProjection out;
  out.Q = v * m;
  out.value = operator_norm(out.Q, space);
  out.pivots = sol.pivots;
  return out;
}

DualityWitness trace_certificate(const Matrix& a, const SubspaceBasis& e, Space space) {
  return trace_certificate(a, e.orthogonal_projection(), space);
}

DualityWitness trace_certificate(const Matrix& a, const OrthoProjection& proj, Space space) {
  if (a.rows() != proj.dim() || a.cols() != proj.dim()) {
    throw PreconditionError("trace_certificate: dimension mismatch");
  }
  const double norm = nu1(a, space);
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream os;
    os << "trace_certificate: nu1(A) = " << norm << " in " << to_string(space)
       << ", expected 1";
    throw NormalizationError(os.str());
  }
  const Matrix& p = proj.matrix();
  const Matrix ap = a * p;
  const double violation = max_abs(ap - p * ap);
  if (violation > kInvarianceTol) {
    std::ostringstream os;
    os << "trace_certificate: |AP - PAP|_max = " << violation;
    throw ConstraintViolation(os.str());
  }
  return {a, space, ap.trace()};
}

Attainment attainment_check(const SignMatrix& s, int n, std::optional<double> reference) {
  const Eigen::Index d = s.dim();
  const Spectrum spec = eig_sym(SymMatrix(s.matrix()));
  if (n < 1 || n > d) throw PreconditionError("attainment_check: n outside [1, d]");

  Attainment out;
  out.P = OrthoProjection::from_orthonormal(spec.vectors.leftCols(n));
  out.E.emplace(spec.vectors.leftCols(n));
  for (int k = 0; k < n; ++k) out.value += spec.values(k);
  out.value /= static_cast<double>(d);

  const Matrix& p = out.P.matrix();
  const Matrix abs_p = p.cwiseAbs();
  out.op_norm_l1 = operator_norm(p, Space::kL1);
  out.lp_value = min_projection_norm(*out.E, Space::kL1).value;
  out.mean_row_sum = abs_p.sum() / static_cast<double>(d);
  if (is_strictly_positive(abs_p)) out.rho = perron(abs_p).rho;

  out.equalities_hold = out.rho.has_value() &&
                        std::abs(out.op_norm_l1 - out.lp_value) <= kAttainTol &&
                        std::abs(out.op_norm_l1 - *out.rho) <= kAttainTol &&
                        std::abs(out.op_norm_l1 - out.mean_row_sum) <= kAttainTol;

  if (!reference && d <= search::kMaxExhaustiveDim) {
    reference = search::exhaustive_pi(n, static_cast<int>(d)).value;
  }
  out.reference = reference;
  out.attained = out.equalities_hold &&
                 std::abs(out.value - out.mean_row_sum) <= kAttainTol &&
                 (!reference || out.value >= *reference - kAttainTol);
  return out;
}

}  // namespace projconst::relproj
