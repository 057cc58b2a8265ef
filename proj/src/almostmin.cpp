#include "projconst/almostmin.hpp"

#include "projconst/relproj.hpp"

#include <cmath>
#include <sstream>

namespace projconst::almostmin {

namespace {

using relproj::Space;

void finish(Certificate& c) {
  c.gap_rows = c.R - c.r;
  if (c.lower_bound) c.gap_minimality = c.op_norm_l1 - *c.lower_bound;
}

// Witnesses are tried in a fixed order; a later one replaces an earlier one
// only when it is better by more than rounding noise.
void consider(Certificate& c, const char* name, double value) {
  if (!c.lower_bound || value > *c.lower_bound + 1e-12) {
    c.lower_bound = value;
    c.witness = name;
  }
}

}  // namespace

Certificate certify(const OrthoProjection& proj) {
  const Matrix& p = proj.matrix();
  const Matrix abs_p = p.cwiseAbs();
  Certificate c;
  const RowSumStats rows = row_sum_stats(p);
  c.r = rows.r;
  c.R = rows.R;
  c.op_norm_l1 = relproj::operator_norm(p, Space::kL1);
  c.abs_sum = abs_p.sum();

  const Matrix sgn = sign_pattern(p).cast<double>();
  std::optional<Vector> perron_v;
  if (is_strictly_positive(abs_p)) {
    const PerronPair pp = perron(abs_p);
    c.rho = pp.rho;
    perron_v = pp.v;
  }

  if (perron_v) {
    const Matrix a = perron_v->cwiseAbs2().asDiagonal() * sgn;
    try {
      consider(c, "perron", relproj::trace_certificate(a, proj, Space::kL1).value);
    } catch (const relproj::WitnessError&) {
    }
  }
  const double norm = relproj::nu1(sgn, Space::kL1);
  if (norm > 0.0) {
    try {
      consider(c, "sign", relproj::trace_certificate(sgn / norm, proj, Space::kL1).value);
    } catch (const relproj::WitnessError&) {
    }
  }
  finish(c);
  return c;
}

// ---------------------------------------------------------------------------
// Lifted projections

OrthoProjection LiftedProjection::materialize() const {
  const auto block = spec.block_of();
  const auto& mult = spec.multiplicities();
  const Eigen::Index d = spec.dim();
  Matrix p(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const int i = block[a];
      const int j = block[b];
      p(a, b) = C(i, j) / std::sqrt(static_cast<double>(mult[i]) * mult[j]);
    }
  }
  return validate_projection(p, rank, 1e-8);
}

namespace {

struct BlockData {
  Vector mult;       // p_i
  Vector root;       // sqrt(p_i)
  Matrix entries;    // P_ab for a in block i, b in block j
  Matrix pattern;    // Sgn of entries, as doubles
};

BlockData block_data(const LiftedProjection& lp) {
  BlockData b;
  const Eigen::Index m = lp.C.rows();
  b.mult.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    b.mult(i) = static_cast<double>(lp.spec.multiplicities()[i]);
  }
  b.root = b.mult.cwiseSqrt();
  b.entries = b.root.cwiseInverse().asDiagonal() * lp.C * b.root.cwiseInverse().asDiagonal();
  b.pattern = sign_pattern(b.entries).cast<double>();
  return b;
}

// |A P - P A P|_max for A = diag(delta) Sgn(P) with delta block-constant.
double witness_violation(const LiftedProjection& lp, const BlockData& b, const Vector& delta) {
  const Matrix& c = lp.C;
  const auto rs = b.root.asDiagonal();
  const auto irs = b.root.cwiseInverse().asDiagonal();
  const Matrix x = delta.asDiagonal() * b.pattern * rs * c * irs;
  const Matrix y = irs * c * rs * delta.asDiagonal() * b.pattern * rs * c * irs;
  return max_abs(x - y);
}

// Tr(A P) for A = diag(delta) Sgn(P).
double witness_value(const BlockData& b, const Vector& delta) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < b.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.entries.cols(); ++j) {
      sum += b.mult(i) * b.mult(j) * delta(i) * b.pattern(i, j) * b.entries(i, j);
    }
  }
  return sum;
}

}  // namespace

double LiftedProjection::sign_commutator() const {
  const BlockData b = block_data(*this);
  const Matrix s = complete_sign_pattern(sign_pattern(b.entries)).matrix();
  const auto rs = b.root.asDiagonal();
  const auto irs = b.root.cwiseInverse().asDiagonal();
  return max_abs(s * rs * C * irs - irs * C * rs * s);
}

Certificate certify(const LiftedProjection& lp) {
  const BlockData b = block_data(lp);
  const Matrix abs_c = lp.C.cwiseAbs();
  const Eigen::Index m = lp.C.rows();

  Certificate c;
  const Vector row_sums = b.entries.cwiseAbs() * b.mult;
  c.r = row_sums.minCoeff();
  c.R = row_sums.maxCoeff();
  c.op_norm_l1 = c.R;
  c.abs_sum = b.root.dot(abs_c * b.root);

  // Rows of P that are identically zero contribute nothing to nu1.
  Vector nonzero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    nonzero(i) = b.pattern.row(i).cwiseAbs().maxCoeff() > 0.0 ? 1.0 : 0.0;
  }

  if (is_strictly_positive(b.entries.cwiseAbs())) {
    // The nonzero spectrum of |P| is that of |C|; Perron vectors lift as
    // x_a = u_i / sqrt(p_i).
    const PerronPair pp = perron(abs_c);
    c.rho = pp.rho;
    const Vector delta = pp.v.cwiseAbs2().cwiseQuotient(b.mult);
    const double norm = b.mult.cwiseProduct(delta).dot(nonzero);
    if (std::abs(norm - 1.0) <= relproj::kNormTol &&
        witness_violation(lp, b, delta) <= relproj::kInvarianceTol) {
      consider(c, "perron", witness_value(b, delta));
    }
  }
  const double norm = b.mult.dot(nonzero);
  if (norm > 0.0) {
    const Vector delta = Vector::Constant(m, 1.0 / norm);
    if (witness_violation(lp, b, delta) <= relproj::kInvarianceTol) {
      consider(c, "sign", witness_value(b, delta));
    }
  }
  finish(c);
  return c;
}

double eta_of_eps(int n, double eps) {
  if (!(eps > 0.0)) throw PreconditionError("eta_of_eps: eps must be positive");
  if (n < 1) throw PreconditionError("eta_of_eps: n must be >= 1");
  const double ratio = eps / 32.0;
  return std::min(1.0, ratio * ratio) / std::sqrt(static_cast<double>(n));
}

Refinement refine_blowup(int n, SignMatrix base, std::vector<int> mult, int max_refine) {
  const Eigen::Index m = base.dim();
  if (static_cast<Eigen::Index>(mult.size()) != m) {
    throw PreconditionError("refine_blowup: one multiplicity per base vertex expected");
  }
  if (n < 1 || n > m) throw PreconditionError("refine_blowup: n outside [1, m]");
  Vector root(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    root(i) = std::sqrt(static_cast<double>(mult[static_cast<std::size_t>(i)]));
  }

  Refinement out;
  for (int it = 1; it <= max_refine; ++it) {
    blowup::BlowupSpec spec(base, mult);
    // Nonzero spectrum of the blow-up: sqrt(p) S sqrt(p).
    const SymMatrix weighted(root.asDiagonal() * base.matrix() * root.asDiagonal());
    const Spectrum spec_w = eig_sym(weighted);
    if (spec.dim() > m && !(spec_w.values(n - 1) > 1e-12)) {
      throw PreconditionError(
          "refine_blowup: the n-th base eigenvalue is not positive, so the Ky Fan "
          "maximizer of the blow-up is not block-constant");
    }
    const Matrix u = spec_w.vectors.leftCols(n);
    Matrix c = u * u.transpose();
    c = 0.5 * (c + c.transpose());
    out.lifted = LiftedProjection{std::move(spec), std::move(c), n};
    out.refinements = it;

    const BlockData b = block_data(out.lifted);
    SignMatrix next = complete_sign_pattern(sign_pattern(b.entries));
    if (next == base && is_strictly_positive(b.entries.cwiseAbs())) {
      out.converged = true;
      break;
    }
    base = std::move(next);
  }
  return out;
}

PipelineResult almost_minimal(int n, double eps, const OrthoProjection& p0,
                              const PipelineOptions& opts) {
  if (p0.rank() != n) {
    std::ostringstream os;
    os << "almost_minimal: seed has rank " << p0.rank() << ", expected " << n;
    throw PreconditionError(os.str());
  }
  const Matrix abs_p0 = p0.matrix().cwiseAbs();
  if (!is_strictly_positive(abs_p0)) {
    throw PreconditionError("almost_minimal: |P0| must be strictly positive");
  }

  PipelineResult out;
  out.n = n;
  out.eps = eps;
  out.eta = eta_of_eps(n, eps);

  const Eigen::Index m = p0.dim();
  Vector w = perron(abs_p0).v.cwiseAbs2();
  w /= w.sum();
  const std::int64_t k = rationalize::choose_k(n, static_cast<int>(m), out.eta, w.minCoeff());
  out.weights = rationalize::dirichlet_approx(w, k);

  std::vector<int> mult;
  for (std::int64_t p : out.weights.p) mult.push_back(static_cast<int>(p));
  Refinement ref = refine_blowup(n, complete_sign_pattern(sign_pattern(p0.matrix())),
                                 std::move(mult), opts.max_refine);
  out.lifted = std::move(ref.lifted);
  out.converged = ref.converged;
  out.refinements = ref.refinements;

  out.d = out.lifted.dim();
  out.cert = certify(out.lifted);
  if (out.cert.rho) {
    out.d_rho = static_cast<double>(out.d) * *out.cert.rho;
    const double slack = 1e-9 * std::max(1.0, out.d_rho);
    out.display_holds = out.cert.abs_sum <= out.d_rho + slack &&
                        out.d_rho <= out.cert.abs_sum + out.eta;
  }
  if (out.d <= opts.dense_limit) {
    out.P = out.lifted.materialize();
    out.S = blowup::blow_up(out.lifted.spec);
  }
  return out;
}

}  // namespace projconst::almostmin
