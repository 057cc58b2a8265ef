#include "projconst/search.hpp"

#include "projconst/eigsum.hpp"
#include "projconst/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace projconst::search {

double objective(const SignMatrix& s, const WeightVector& d, int n) {
  return eigsum::kyfan_sum(SymMatrix(d.scale(s.matrix())), n).value;
}

SearchResult alternate_maximize(int n, const SignMatrix& s0, const WeightVector& d0,
                                int max_iter, double tol) {
  constexpr double kWeightTol = 1e-9;
  if (s0.dim() != d0.dim()) {
    throw PreconditionError("alternate_maximize: dimension mismatch");
  }
  if (d0.min() <= 0.0) {
    throw PreconditionError("alternate_maximize: initial weights must be positive");
  }
  if (max_iter < 1) throw PreconditionError("alternate_maximize: max_iter < 1");

  SearchResult out;
  SignMatrix s = s0;
  WeightVector d = d0;
  for (int it = 1; it <= max_iter; ++it) {
    auto kf = eigsum::kyfan_sum(SymMatrix(d.scale(s.matrix())), n);
    out.history.push_back(kf.value);

    const Matrix& p = kf.P.matrix();
    const Matrix abs_p = p.cwiseAbs();
    SignMatrix s_next = complete_sign_pattern(sign_pattern(p));
    const Vector root = d.values().cwiseSqrt();
    double gained = root.dot(abs_p * root);
    out.history.push_back(gained);

    WeightVector d_next = d;
    if (is_strictly_positive(abs_p)) {
      const PerronPair pp = perron(abs_p);
      const Vector w = pp.v.cwiseAbs2();
      d_next = WeightVector(w / w.sum());
      gained = pp.rho;
    }
    out.history.push_back(gained);

    out.S = s;
    out.D = d;
    out.value = kf.value;
    out.P = std::move(kf.P);
    out.iterations = it;
    const double moved = (d_next.values() - d.values()).cwiseAbs().maxCoeff();
    if (gained - out.value <= tol && moved <= kWeightTol) {
      out.converged = true;
      return out;
    }
    s = std::move(s_next);
    d = std::move(d_next);
  }
  return out;
}

namespace {

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                     43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

}  // namespace

std::vector<WeightVector> restart_weights(Eigen::Index d, int count) {
  std::vector<WeightVector> out;
  out.push_back(WeightVector::uniform(d));
  for (int r = 1; r < count; ++r) {
    Vector w(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const std::uint64_t base = kPrimes[static_cast<std::size_t>(i) % std::size(kPrimes)];
      // Offset index so no coordinate is 0; -log maps uniforms to the simplex.
      const double u = radical_inverse(static_cast<std::uint64_t>(r) + 7, base);
      w(i) = -std::log(std::max(u, 1e-3));
    }
    w /= w.sum();
    // Keep every weight away from zero.
    w = 0.8 * w + Vector::Constant(d, 0.2 / static_cast<double>(d));
    w /= w.sum();
    out.emplace_back(w);
  }
  return out;
}

std::uint64_t canonical_bits(int d, std::uint64_t bits) {
  if (d <= 1) return 0;
  // Adjacency and degrees.
  std::vector<std::vector<bool>> adj(d, std::vector<bool>(d, false));
  std::vector<int> degree(d, 0);
  int k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j, ++k) {
      if ((bits >> k) & 1u) {
        adj[i][j] = adj[j][i] = true;
        ++degree[i];
        ++degree[j];
      }
    }
  }
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return degree[a] < degree[b]; });

  // Permute within runs of equal degree; order[pos] is the old label at pos.
  std::vector<std::pair<int, int>> runs;
  for (int start = 0; start < d;) {
    int end = start;
    while (end < d && degree[order[end]] == degree[order[start]]) ++end;
    runs.emplace_back(start, end);
    start = end;
  }
  for (auto [a, b] : runs) std::sort(order.begin() + a, order.begin() + b);

  auto encode = [&] {
    std::uint64_t code = 0;
    int kk = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j, ++kk) {
        if (adj[order[i]][order[j]]) code |= std::uint64_t{1} << kk;
      }
    }
    return code;
  };

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  // Odometer over the permutations of every run.
  while (true) {
    best = std::min(best, encode());
    std::size_t r = 0;
    for (; r < runs.size(); ++r) {
      auto [a, b] = runs[r];
      if (std::next_permutation(order.begin() + a, order.begin() + b)) break;
    }
    if (r == runs.size()) break;
  }
  return best;
}

namespace {

// Places a graph on vertices 1..d-1 into a sign matrix whose first row is +1.
SignMatrix embed_switched(int d, std::uint64_t sub_bits) {
  Matrix s = Matrix::Ones(d, d);
  int k = 0;
  for (int i = 1; i < d; ++i) {
    for (int j = i + 1; j < d; ++j, ++k) {
      if ((sub_bits >> k) & 1u) s(i, j) = s(j, i) = -1.0;
    }
  }
  return SignMatrix(s);
}

bool better(const SearchResult& a, const SearchResult& b) {
  if (a.value > b.value + 1e-12) return true;
  if (b.value > a.value + 1e-12) return false;
  return a.S.lex_less(b.S);
}

}  // namespace

SearchResult exhaustive_pi(int n, int d, int restarts, ExhaustiveStats* stats) {
  if (d < 1) throw PreconditionError("exhaustive_pi: d must be >= 1");
  if (n < 1 || n > d) throw PreconditionError("exhaustive_pi: n outside [1, d]");
  if (restarts < 1) throw PreconditionError("exhaustive_pi: restarts must be >= 1");
  const int edges = d * (d - 1) / 2;
  if (d > kMaxExhaustiveDim) {
    const std::uint64_t count =
        edges < 64 ? (std::uint64_t{1} << edges) : std::numeric_limits<std::uint64_t>::max();
    std::ostringstream os;
    os << "exhaustive_pi: d = " << d << " exceeds " << kMaxExhaustiveDim << "; 2^" << edges;
    if (edges < 64) os << " = " << count;
    os << " candidate sign matrices";
    throw GuardError(os.str(), count);
  }

  // Switching class representatives have an isolated vertex 0; reduce the
  // graph on the remaining d - 1 vertices modulo relabelling.
  const int sub = std::max(d - 1, 0);
  const int sub_edges = sub * (sub - 1) / 2;
  std::vector<std::uint64_t> candidates;
  {
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << sub_edges); ++bits) {
      const std::uint64_t canon = canonical_bits(sub, bits);
      if (seen.insert(canon).second) candidates.push_back(canon);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  if (stats) {
    stats->labelled = std::uint64_t{1} << edges;
    stats->evaluated = candidates.size();
  }

  const auto weights = restart_weights(d, restarts);
  std::vector<SearchResult> best(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t c) {
    const SignMatrix s0 = embed_switched(d, candidates[c]);
    bool have = false;
    for (const auto& w : weights) {
      SearchResult r = alternate_maximize(n, s0, w);
      if (!have || better(r, best[c])) {
        best[c] = std::move(r);
        have = true;
      }
    }
  });

  std::size_t winner = 0;
  for (std::size_t c = 1; c < best.size(); ++c) {
    if (better(best[c], best[winner])) winner = c;
  }
  return best[winner];
}

double gruenbaum_floor(int n) {
  if (n < 1) throw PreconditionError("gruenbaum_floor: n must be >= 1");
  return std::sqrt(2.0 / std::numbers::pi) * std::sqrt(static_cast<double>(n));
}

}  // namespace projconst::search
