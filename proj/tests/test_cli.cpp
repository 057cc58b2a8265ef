#include "cli.hpp"
#include "projconst/json_io.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace projconst;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "projconst");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("projconst_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& body) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

const char* kHexBasis = R"({"d":3,"n":2,"columns":[[1,-1,0],[0,1,-1]]})";

}  // namespace

TEST_CASE("search command") {
  SUBCASE("exhaustive (2, 3)") {
    const Outcome o = run({"search", "--n", "2", "--d", "3", "--exhaustive"});
    REQUIRE(o.code == cli::kOk);
    const json j = json::parse(o.out);
    CHECK(std::abs(j.at("value").get<double>() - 4.0 / 3.0) < 1e-9);
    CHECK(j.at("converged").get<bool>());
    for (const char* key : {"S", "D", "P", "iterations", "value", "converged"}) CHECK(j.contains(key));
  }
  SUBCASE("(1, 1)") {
    const Outcome o = run({"search", "--n", "1", "--d", "1"});
    REQUIRE(o.code == cli::kOk);
    CHECK(json::parse(o.out).at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("guard refusal") {
    const Outcome o = run({"search", "--n", "2", "--d", "9", "--exhaustive"});
    CHECK(o.code == cli::kGuard);
    CHECK(o.err.find("68719476736") != std::string::npos);
    CHECK(o.out.empty());
  }
  SUBCASE("usage errors") {
    CHECK(run({"search", "--n", "2", "--d", "3", "--exhaustive", "--alternating"}).code == cli::kUsage);
    CHECK(run({"search", "--n", "2"}).code == cli::kUsage);
    CHECK(run({"search", "--n", "4", "--d", "3"}).code == cli::kUsage);
    CHECK(run({"nosuch"}).code == cli::kUsage);
    CHECK(run({}).code == cli::kUsage);
  }
  SUBCASE("alternating mode") {
    const Outcome o = run({"search", "--n", "3", "--d", "6", "--alternating", "--restarts", "3"});
    REQUIRE(o.code == cli::kOk);
    CHECK(json::parse(o.out).at("value").get<double>() <= (1.0 + std::sqrt(5.0)) / 2.0 + 1e-8);
  }
}

TEST_CASE("almost-min command") {
  SUBCASE("icosa6") {
    const Outcome o = run({"almost-min", "--n", "3", "--eps", "0.1", "--seed", "icosa6"});
    REQUIRE(o.code == cli::kOk);
    const json c = json::parse(o.out).at("certificate");
    CHECK(c.at("rho").get<double>() == doctest::Approx(1.6180339887).epsilon(1e-10));
    CHECK(c.at("gap_rows").get<double>() < 1e-9);
  }
  SUBCASE("hex3 with matrix dump") {
    const Outcome o = run({"almost-min", "--n", "2", "--eps", "0.1", "--seed", "hex3", "--dump"});
    REQUIRE(o.code == cli::kOk);
    const json j = json::parse(o.out);
    const json& c = j.at("certificate");
    CHECK(std::abs(c.at("rho").get<double>() - 4.0 / 3.0) < 1e-12);
    CHECK(c.at("gap_rows").get<double>() < 1e-12);
    CHECK(std::abs(c.at("gap_minimality").get<double>()) < 1e-12);
    for (const char* key : {"d", "eta", "eps", "converged", "P", "S"}) CHECK(j.contains(key));
  }
  SUBCASE("seed from a file") {
    TempDir dir;
    const std::string seed = dir.write(
        "seed.json", io::matrix_to_json(Matrix::Ones(1, 1)).dump());
    const Outcome o = run({"almost-min", "--n", "1", "--eps", "1", "--seed", seed});
    REQUIRE(o.code == cli::kOk);
    CHECK(json::parse(o.out).at("d").get<int>() == 1);
  }
  SUBCASE("unknown seed") {
    CHECK(run({"almost-min", "--n", "2", "--eps", "0.1", "--seed", "nosuch"}).code == cli::kUsage);
  }
}

TEST_CASE("relproj command") {
  TempDir dir;
  SUBCASE("hexagon in l1") {
    const Outcome o = run({"relproj", "--space", "l1", "--basis", dir.write("hex.json", kHexBasis)});
    REQUIRE(o.code == cli::kOk);
    CHECK(std::abs(json::parse(o.out).at("value").get<double>() - 4.0 / 3.0) < 1e-9);
  }
  SUBCASE("e1 in linf") {
    const Outcome o = run({"relproj", "--space", "linf", "--basis",
                           dir.write("e1.json", R"({"d":4,"n":1,"columns":[[1,0,0,0]]})")});
    REQUIRE(o.code == cli::kOk);
    CHECK(std::abs(json::parse(o.out).at("value").get<double>() - 1.0) < 1e-12);
  }
  SUBCASE("witness verification") {
    const std::string witness = dir.write(
        "a.json", io::matrix_to_json((2.0 * Matrix::Identity(3, 3) - Matrix::Ones(3, 3)) / 3.0).dump());
    const Outcome o = run({"relproj", "--space", "l1", "--basis", dir.write("hex.json", kHexBasis),
                           "--certify", witness});
    REQUIRE(o.code == cli::kOk);
    const json j = json::parse(o.out);
    REQUIRE(j.contains("witness"));
    CHECK(std::abs(j.at("witness").at("value").get<double>() - 4.0 / 3.0) < 1e-12);
  }
  SUBCASE("input errors") {
    const Outcome dep = run({"relproj", "--space", "l1", "--basis",
                             dir.write("dep.json", R"({"d":3,"n":2,"columns":[[1,1,1],[2,2,2]]})")});
    CHECK(dep.code == cli::kUsage);
    CHECK(dep.err.find("linearly dependent") != std::string::npos);
    CHECK(run({"relproj", "--space", "l1", "--basis", dir.file("missing.json")}).code == cli::kUsage);
    CHECK(run({"relproj", "--space", "l1", "--basis", dir.write("junk.json", "{not json")}).code ==
          cli::kUsage);
  }
}

TEST_CASE("certify, eigsum, blowup and dirichlet commands") {
  TempDir dir;
  const Matrix hex_p = Matrix::Identity(3, 3) - Matrix::Ones(3, 3) / 3.0;
  SUBCASE("certify") {
    const Outcome o = run({"certify", "--matrix", dir.write("p.json", io::matrix_to_json(hex_p).dump())});
    REQUIRE(o.code == cli::kOk);
    const json c = json::parse(o.out).at("certificate");
    CHECK(std::abs(c.at("lower_bound").get<double>() - 4.0 / 3.0) < 1e-12);
    CHECK(run({"certify", "--matrix", dir.write("np.json", io::matrix_to_json(0.5 * hex_p).dump())})
              .code == cli::kUsage);
  }
  SUBCASE("eigsum") {
    const std::string rot = dir.write("rot.json", R"({"d":2,"rows":[[0,-1],[1,0]]})");
    const json one = json::parse(run({"eigsum", "--matrix", rot, "--n", "1"}).out);
    CHECK(one.at("value").is_null());
    const json two = json::parse(run({"eigsum", "--matrix", rot, "--n", "2"}).out);
    CHECK(std::abs(two.at("value").get<double>()) < 1e-12);
    const std::string sym = dir.write(
        "s.json", io::matrix_to_json(2.0 * Matrix::Identity(3, 3) - Matrix::Ones(3, 3)).dump());
    CHECK(std::abs(json::parse(run({"eigsum", "--matrix", sym, "--n", "2"}).out).at("value").get<double>() -
                   4.0) < 1e-12);
  }
  SUBCASE("blowup") {
    const std::string base = dir.write("b.json", R"({"d":1,"rows":[[1]]})");
    const Outcome o = run({"blowup", "--base", base, "--mult", "3"});
    REQUIRE(o.code == cli::kOk);
    CHECK(io::matrix_from_json(json::parse(o.out).at("S")) == Matrix::Ones(3, 3));
    CHECK(run({"blowup", "--base", base, "--mult", "0"}).code == cli::kUsage);
  }
  SUBCASE("dirichlet") {
    const json j = json::parse(run({"dirichlet", "--weights", "0.5", "0.5", "--k", "100"}).out);
    CHECK(j.at("q").get<int>() == 2);
    const Outcome capped = run({"dirichlet", "--weights", "0.41421356237309503", "0.585786437626905",
                                "--k", "1000", "--q-cap", "10"});
    CHECK(capped.code == cli::kResource);
    CHECK(capped.err.find("best q") != std::string::npos);
  }
}

TEST_CASE("output is deterministic and round-trips") {
  const std::vector<std::vector<std::string>> commands = {
      {"search", "--n", "3", "--d", "6"},
      {"search", "--n", "2", "--d", "5", "--alternating"},
      {"almost-min", "--n", "3", "--eps", "0.1", "--seed", "icosa6", "--dump"},
  };
  for (const auto& cmd : commands) {
    const Outcome a = run(cmd);
    const Outcome b = run(cmd);
    REQUIRE(a.code == cli::kOk);
    CHECK(a.out == b.out);
    // Every number re-parses to the identical double and re-serializes to
    // the identical text.
    CHECK(json::parse(a.out).dump(2) + "\n" == a.out);
  }
  std::vector<std::string> single = commands[0];
  single.insert(single.begin(), {"--threads", "1"});
  CHECK(run(single).out == run(commands[0]).out);

  const json j = json::parse(run(commands[0]).out);
  const search::SearchResult r = io::search_result_from_json(j);
  CHECK(io::search_result_to_json(r) == j);
}

TEST_CASE("--out writes the JSON to a file") {
  TempDir dir;
  const std::string path = dir.file("result.json");
  const Outcome o = run({"--out", path, "search", "--n", "2", "--d", "3"});
  REQUIRE(o.code == cli::kOk);
  CHECK(o.out.empty());
  std::ifstream in(path);
  const json j = json::parse(in);
  CHECK(std::abs(j.at("value").get<double>() - 4.0 / 3.0) < 1e-9);
}
