#include "projconst/blowup.hpp"

#include <cmath>
#include <numeric>

namespace projconst::blowup {

BlowupSpec::BlowupSpec(SignMatrix base, std::vector<int> multiplicities)
    : base_(std::move(base)), mult_(std::move(multiplicities)) {
  if (static_cast<Eigen::Index>(mult_.size()) != base_.dim()) {
    throw PreconditionError("BlowupSpec: one multiplicity per base vertex required");
  }
  for (int p : mult_) {
    if (p < 1) throw PreconditionError("BlowupSpec: multiplicities must be >= 1");
    dim_ += p;
  }
}

std::vector<int> BlowupSpec::block_of() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(dim_));
  for (std::size_t i = 0; i < mult_.size(); ++i) {
    out.insert(out.end(), static_cast<std::size_t>(mult_[i]), static_cast<int>(i));
  }
  return out;
}

SignMatrix blow_up(const BlowupSpec& spec) {
  const auto block = spec.block_of();
  const Eigen::Index d = spec.dim();
  Matrix s(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const int i = block[a];
      const int j = block[b];
      s(a, b) = i == j ? 1.0 : static_cast<double>(spec.base()(i, j));
    }
  }
  return SignMatrix(s);
}

SymMatrix weighted_equivalent(const BlowupSpec& spec) {
  Vector w(spec.base_dim());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w(i) = static_cast<double>(spec.multiplicities()[i]) / static_cast<double>(spec.dim());
  }
  const Vector root = w.cwiseSqrt();
  return SymMatrix(root.asDiagonal() * spec.base().matrix() * root.asDiagonal());
}

Matrix lift_eigenvectors(const BlowupSpec& spec, const Matrix& base_vectors) {
  if (base_vectors.rows() != spec.base_dim()) {
    throw PreconditionError("lift_eigenvectors: row count must equal the base dimension");
  }
  const auto block = spec.block_of();
  Matrix out(spec.dim(), base_vectors.cols());
  for (Eigen::Index a = 0; a < spec.dim(); ++a) {
    const int i = block[a];
    out.row(a) = base_vectors.row(i) / std::sqrt(static_cast<double>(spec.multiplicities()[i]));
  }
  return out;
}

}  // namespace projconst::blowup
