#include "cli.hpp"

#include "projconst/almostmin.hpp"
#include "projconst/blowup.hpp"
#include "projconst/eigsum.hpp"
#include "projconst/json_io.hpp"
#include "projconst/parallel.hpp"
#include "projconst/rationalize.hpp"
#include "projconst/relproj.hpp"
#include "projconst/search.hpp"
#include "projconst/seeds.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>

namespace projconst::cli {

namespace {

using io::json;

struct Globals {
  double tol = 1e-9;
  unsigned threads = 0;
  std::string out_path;
};

// Writes the JSON document either to the --out file or to `out`.
int emit(const json& doc, const Globals& g, std::ostream& out, std::ostream& err) {
  const std::string text = doc.dump(2) + "\n";
  if (g.out_path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(g.out_path);
  if (!f) {
    err << "error: cannot write '" << g.out_path << "'\n";
    return kUsage;
  }
  f << text;
  return kOk;
}

// sqrt(D) S sqrt(D) searches started from the all-plus matrix and from
// deterministic random sign matrices.
search::SearchResult alternating_search(int n, int d, int restarts, int max_iter, double tol) {
  std::mt19937_64 rng(0x5eed);
  std::vector<SignMatrix> starts{SignMatrix::all_plus(d)};
  for (int r = 1; r < restarts; ++r) {
    Matrix s = Matrix::Ones(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        if (rng() & 1u) s(i, j) = s(j, i) = -1.0;
      }
    }
    starts.emplace_back(s);
  }
  const auto weights = search::restart_weights(d, restarts);
  std::vector<search::SearchResult> results(starts.size() * weights.size());
  parallel_for(results.size(), [&](std::size_t idx) {
    results[idx] = search::alternate_maximize(n, starts[idx / weights.size()],
                                              weights[idx % weights.size()], max_iter, tol);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    const auto& a = results[i];
    const auto& b = results[best];
    if (a.value > b.value + 1e-12 || (a.value >= b.value - 1e-12 && a.S.lex_less(b.S))) {
      best = i;
    }
  }
  return results[best];
}

OrthoProjection resolve_seed(const std::string& name, int n, double tol) {
  const auto known = seeds::names();
  if (std::find(known.begin(), known.end(), name) != known.end()) {
    return seeds::by_name(name);
  }
  if (std::filesystem::exists(name)) {
    return validate_projection(io::matrix_from_json(io::read_json_file(name)), n,
                               std::max(tol, 1e-9));
  }
  throw PreconditionError("unknown seed '" + name + "' (expected hex3, icosa6, trivial1 or a file)");
}

int infer_rank(const Matrix& p) { return static_cast<int>(std::lround(p.trace())); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projection constants, Ky Fan sums and almost minimal projections", "projconst"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Zero threshold and validation tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--out", g.out_path, "Write JSON here instead of standard output");

  // search
  auto* search_cmd = app.add_subcommand("search", "Lower bounds for Pi(n, d)");
  int s_n = 0, s_d = 0, s_restarts = search::kDefaultRestarts, s_max_iter = 200;
  search_cmd->add_option("--n", s_n, "Subspace dimension")->required()->check(CLI::PositiveNumber);
  search_cmd->add_option("--d", s_d, "Ambient dimension")->required()->check(CLI::PositiveNumber);
  auto* exhaustive_flag = search_cmd->add_flag("--exhaustive", "Enumerate every sign matrix");
  auto* alternating_flag =
      search_cmd->add_flag("--alternating", "Alternating ascent from restarts only");
  exhaustive_flag->excludes(alternating_flag);
  search_cmd->add_option("--restarts", s_restarts, "Restarts per candidate")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-iter", s_max_iter, "Iteration cap per ascent")
      ->check(CLI::PositiveNumber);

  // almost-min
  auto* am_cmd = app.add_subcommand("almost-min", "Almost minimal orthogonal projection");
  int a_n = 0;
  double a_eps = 0.0;
  std::string a_seed;
  bool a_dump = false;
  am_cmd->add_option("--n", a_n, "Rank")->required()->check(CLI::PositiveNumber);
  am_cmd->add_option("--eps", a_eps, "Certificate budget")->required()->check(CLI::PositiveNumber);
  am_cmd->add_option("--seed", a_seed, "hex3, icosa6, trivial1 or a matrix JSON file")->required();
  am_cmd->add_flag("--dump", a_dump, "Include P and S in the output");

  // relproj
  auto* rp_cmd = app.add_subcommand("relproj", "Relative projection constant of a subspace");
  std::string r_space = "l1", r_basis, r_witness;
  rp_cmd->add_option("--space", r_space, "l1 or linf")->check(CLI::IsMember({"l1", "linf"}));
  rp_cmd->add_option("--basis", r_basis, "Basis JSON file")->required();
  rp_cmd->add_option("--certify", r_witness, "Witness matrix JSON file");

  // certify
  auto* cert_cmd = app.add_subcommand("certify", "Row-sum and trace-duality certificate");
  std::string c_matrix;
  int c_n = 0;
  cert_cmd->add_option("--matrix", c_matrix, "Projection matrix JSON file")->required();
  cert_cmd->add_option("--n", c_n, "Rank (default: rounded trace)");

  // eigsum
  auto* es_cmd = app.add_subcommand("eigsum", "Partial eigenvalue sum pi_n");
  std::string e_matrix;
  int e_n = 0;
  es_cmd->add_option("--matrix", e_matrix, "Matrix JSON file")->required();
  es_cmd->add_option("--n", e_n, "Number of eigenvalues")->required()->check(CLI::PositiveNumber);

  // blowup
  auto* bu_cmd = app.add_subcommand("blowup", "Blow-up of a sign matrix");
  std::string b_base;
  std::vector<int> b_mult;
  bu_cmd->add_option("--base", b_base, "Sign matrix JSON file")->required();
  bu_cmd->add_option("--mult", b_mult, "Multiplicities")->required();

  // dirichlet
  auto* di_cmd = app.add_subcommand("dirichlet", "Simultaneous rational approximation");
  std::vector<double> w_weights;
  std::int64_t w_k = 0, w_cap = 0;
  di_cmd->add_option("--weights", w_weights, "Positive weights summing to 1")->required();
  di_cmd->add_option("--k", w_k, "Quality parameter")->required()->check(CLI::PositiveNumber);
  di_cmd->add_option("--q-cap", w_cap, "Largest denominator tried (default min(k^(m-1), 1e6))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  config().zero_threshold = g.tol;
  worker_threads() = g.threads;
  err << std::setprecision(12);

  try {
    if (search_cmd->parsed()) {
      const bool exhaustive =
          exhaustive_flag->count() > 0 ||
          (alternating_flag->count() == 0 && s_d <= search::kMaxExhaustiveDim);
      if (s_n > s_d) throw PreconditionError("search: need n <= d");
      search::SearchResult r;
      if (exhaustive) {
        search::ExhaustiveStats stats;
        r = search::exhaustive_pi(s_n, s_d, s_restarts, &stats);
        err << "exhaustive search over " << stats.labelled << " sign matrices ("
            << stats.evaluated << " after pruning)\n";
      } else {
        r = alternating_search(s_n, s_d, s_restarts, s_max_iter, 1e-12);
        err << "alternating search, " << s_restarts << " restarts\n";
      }
      err << "Pi(" << s_n << ", " << s_d << ") >= " << r.value << "\n";
      return emit(io::search_result_to_json(r), g, out, err);
    }

    if (am_cmd->parsed()) {
      const OrthoProjection seed = resolve_seed(a_seed, a_n, g.tol);
      const auto r = almostmin::almost_minimal(a_n, a_eps, seed);
      err << "d = " << r.d << ", converged = " << std::boolalpha << r.converged
          << ", gap_rows = " << r.cert.gap_rows << "\n";
      return emit(io::pipeline_to_json(r, a_dump), g, out, err);
    }

    if (rp_cmd->parsed()) {
      const auto space = relproj::parse_space(r_space);
      const auto basis = io::basis_from_json(io::read_json_file(r_basis));
      const auto mp = relproj::min_projection_norm(basis, space);
      json doc = {{"space", r_space},
                  {"value", mp.value},
                  {"Q", io::matrix_to_json(mp.Q)},
                  {"pivots", mp.pivots}};
      err << "Pi(E, " << r_space << ") = " << mp.value << "\n";
      if (!r_witness.empty()) {
        const Matrix a = io::matrix_from_json(io::read_json_file(r_witness));
        try {
          const auto w = relproj::trace_certificate(a, basis, space);
          doc["witness"] = {{"valid", true}, {"value", w.value}};
        } catch (const relproj::WitnessError& e) {
          doc["witness"] = {{"valid", false}, {"error", e.what()}};
        }
      }
      return emit(doc, g, out, err);
    }

    if (cert_cmd->parsed()) {
      const Matrix p = io::matrix_from_json(io::read_json_file(c_matrix));
      const int n = c_n > 0 ? c_n : infer_rank(p);
      const auto c = almostmin::certify(validate_projection(p, n, std::max(g.tol, 1e-9)));
      err << "r = " << c.r << ", R = " << c.R << ", |P| = " << c.op_norm_l1 << "\n";
      return emit({{"n", n}, {"certificate", io::certificate_to_json(c)}}, g, out, err);
    }

    if (es_cmd->parsed()) {
      const Matrix m = io::matrix_from_json(io::read_json_file(e_matrix));
      json doc;
      if (max_abs(m - m.transpose()) <= 1e-12 * std::max(1.0, max_abs(m))) {
        const auto kf = eigsum::kyfan_sum(SymMatrix(m), e_n);
        doc = {{"symmetric", true}, {"value", kf.value}, {"P", io::matrix_to_json(kf.P.matrix())}};
      } else {
        const auto sel = eigsum::pi_n_general(m, e_n);
        doc = {{"symmetric", false},
               {"feasible", sel.feasible()},
               {"value", sel.feasible() ? json(sel.value) : json(nullptr)},
               {"indices", sel.indices}};
      }
      err << "pi_" << e_n << " = " << doc["value"].dump() << "\n";
      return emit(doc, g, out, err);
    }

    if (bu_cmd->parsed()) {
      const SignMatrix base(io::matrix_from_json(io::read_json_file(b_base)));
      const blowup::BlowupSpec spec(base, b_mult);
      const json doc = {{"d", spec.dim()},
                        {"S", io::matrix_to_json(blowup::blow_up(spec).matrix())},
                        {"weighted", io::matrix_to_json(blowup::weighted_equivalent(spec).matrix())}};
      err << "blow-up of order " << spec.dim() << "\n";
      return emit(doc, g, out, err);
    }

    if (di_cmd->parsed()) {
      const Vector w = Eigen::Map<const Vector>(w_weights.data(),
                                                static_cast<Eigen::Index>(w_weights.size()));
      const auto rw = w_cap > 0 ? rationalize::dirichlet_approx(w, w_k, w_cap)
                                : rationalize::dirichlet_approx(w, w_k);
      err << "q = " << rw.q << "\n";
      return emit({{"q", rw.q},
                   {"p", rw.p},
                   {"k", rw.k},
                   {"scaled_max_error", rationalize::scaled_max_error(w, rw)},
                   {"scaled_total_error", rationalize::scaled_total_error(w, rw)}},
                  g, out, err);
    }
  } catch (const search::GuardError& e) {
    err << "refused: " << e.what() << "\n";
    return kGuard;
  } catch (const rationalize::ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace projconst::cli
