#include "projconst/relproj.hpp"
#include "projconst/seeds.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>

using namespace projconst;
using namespace projconst::relproj;
using projconst::testing::kPhi;

namespace {

Matrix J(int d) { return Matrix::Ones(d, d); }
Matrix I(int d) { return Matrix::Identity(d, d); }

// Orthonormal basis of the range of an orthogonal projection.
SubspaceBasis range_of(const OrthoProjection& p) {
  const Spectrum s = eig_sym(SymMatrix(p.matrix()));
  return SubspaceBasis(s.vectors.leftCols(p.rank()));
}

SubspaceBasis hexagon() {
  Matrix v(3, 2);
  v << 1, 0, -1, 1, 0, -1;
  return SubspaceBasis(v);
}

}  // namespace

TEST_CASE("nu1 examples and norm properties") {
  CHECK(nu1(I(5), Space::kLinf) == 5.0);
  CHECK(std::abs(nu1((2.0 * I(3) - J(3)) / 3.0, Space::kL1) - 1.0) < 1e-15);
  CHECK(nu1(Matrix::Zero(4, 4), Space::kL1) == 0.0);
  CHECK(nu1(Matrix::Zero(4, 4), Space::kLinf) == 0.0);

  Matrix a(2, 2);
  a << 1, -3, 2, 0.5;
  CHECK(nu1(a, Space::kLinf) == 2.0 + 3.0);  // column maxima
  CHECK(nu1(a, Space::kL1) == 3.0 + 2.0);    // row maxima
  CHECK(nu1(a.transpose(), Space::kL1) == nu1(a, Space::kLinf));

  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 7;
    const Matrix x = testing::random_matrix(rng, d, d);
    const Matrix y = testing::random_matrix(rng, d, d);
    const double c = u(rng);
    for (Space s : {Space::kL1, Space::kLinf}) {
      CHECK(nu1(x + y, s) <= nu1(x, s) + nu1(y, s) + 1e-12);
      CHECK(std::abs(nu1(c * x, s) - std::abs(c) * nu1(x, s)) < 1e-12);
      CHECK(nu1(x, s) >= 0.0);
    }
  }
}

TEST_CASE("parse_space") {
  CHECK(parse_space("l1") == Space::kL1);
  CHECK(parse_space("linf") == Space::kLinf);
  CHECK_THROWS_AS(parse_space("l2"), PreconditionError);
}

TEST_CASE("SubspaceBasis rejects dependent columns") {
  Matrix v(3, 2);
  v << 1, 2, 1, 2, 1, 2;
  CHECK_THROWS_AS(SubspaceBasis{v}, PreconditionError);
  CHECK_THROWS_AS(SubspaceBasis{Matrix::Zero(3, 0)}, PreconditionError);
}

TEST_CASE("min_projection_norm examples") {
  SUBCASE("hexagon in l1^3") {
    const MinProjection m = min_projection_norm(hexagon(), Space::kL1);
    CHECK(std::abs(m.value - 4.0 / 3.0) < 1e-9);
  }
  SUBCASE("e1 in linf^d") {
    for (int d : {1, 3, 5}) {
      Matrix v = Matrix::Zero(d, 1);
      v(0, 0) = 1.0;
      const MinProjection m = min_projection_norm(SubspaceBasis(v), Space::kLinf);
      CHECK(std::abs(m.value - 1.0) < 1e-12);
      Matrix e = Matrix::Zero(d, d);
      e(0, 0) = 1.0;
      CHECK(max_abs(m.Q - e) < 1e-12);
    }
  }
  SUBCASE("icosahedral subspace in l1^6") {
    const auto t0 = std::chrono::steady_clock::now();
    const MinProjection m = min_projection_norm(range_of(seeds::icosa6()), Space::kL1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(std::abs(m.value - kPhi) < 1e-6);
    CHECK(secs < 5.0);
  }
  SUBCASE("whole space") {
    std::mt19937_64 rng(72);
    for (int d : {1, 2, 4}) {
      const SubspaceBasis e(testing::random_matrix(rng, d, d));
      for (Space s : {Space::kL1, Space::kLinf}) {
        const MinProjection m = min_projection_norm(e, s);
        CHECK(std::abs(m.value - 1.0) < 1e-9);
        CHECK(max_abs(m.Q - I(d)) < 1e-8);
      }
    }
  }
}

TEST_CASE("min_projection_norm output is a projection onto E, no worse than orthogonal") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 6;
    const int n = 1 + trial % std::min(3, d - 1);
    const SubspaceBasis e(testing::random_matrix(rng, d, n));
    for (Space s : {Space::kL1, Space::kLinf}) {
      const MinProjection m = min_projection_norm(e, s);
      CHECK(max_abs(m.Q * e.columns() - e.columns()) < 1e-8);
      CHECK(max_abs(m.Q * m.Q - m.Q) < 1e-8);
      CHECK(std::abs(operator_norm(m.Q, s) - m.value) < 1e-8);
      CHECK(m.value <= operator_norm(e.orthogonal_projection().matrix(), s) + 1e-9);
      CHECK(m.value >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("trace_certificate examples") {
  SUBCASE("hexagon") {
    const DualityWitness w = trace_certificate((2.0 * I(3) - J(3)) / 3.0, hexagon(), Space::kL1);
    CHECK(std::abs(w.value - 4.0 / 3.0) < 1e-12);
    CHECK(std::abs(w.value - min_projection_norm(hexagon(), Space::kL1).value) < 1e-7);
  }
  SUBCASE("icosahedron") {
    const SubspaceBasis e = range_of(seeds::icosa6());
    const DualityWitness w = trace_certificate(seeds::icosa_sign().matrix() / 6.0, e, Space::kL1);
    CHECK(std::abs(w.value - kPhi) < 1e-12);
    CHECK(std::abs(w.value - min_projection_norm(e, Space::kL1).value) < 1e-7);
  }
  SUBCASE("identity is not normalized") {
    CHECK_THROWS_AS(trace_certificate(I(3), hexagon(), Space::kLinf), NormalizationError);
  }
  SUBCASE("non-invariant witness") {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(trace_certificate(a, hexagon(), Space::kL1), ConstraintViolation);
  }
}

TEST_CASE("weak duality on random subspaces") {
  std::mt19937_64 rng(74);
  int sign_witnesses = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 7;
    const int n = 1 + trial % std::min(3, d - 1);
    const SubspaceBasis e(testing::random_matrix(rng, d, n));
    const OrthoProjection p = e.orthogonal_projection();
    for (Space s : {Space::kL1, Space::kLinf}) {
      const double lp = min_projection_norm(e, s).value;
      // P / nu1(P) always satisfies AP = PAP.
      const DualityWitness w = trace_certificate(p.matrix() / nu1(p.matrix(), s), e, s);
      CHECK(w.value <= lp + 1e-7);
      const Matrix sgn = sign_pattern(p.matrix()).cast<double>();
      try {
        const DualityWitness ws = trace_certificate(sgn / nu1(sgn, s), e, s);
        ++sign_witnesses;
        CHECK(ws.value <= lp + 1e-7);
      } catch (const WitnessError&) {
      }
    }
  }
  MESSAGE("sign witnesses admissible: " << sign_witnesses);
}

TEST_CASE("attainment_check") {
  SUBCASE("hexagon sign matrix") {
    const Attainment a = attainment_check(seeds::hex_sign(), 2);
    CHECK(a.equalities_hold);
    CHECK(a.attained);
    CHECK(std::abs(a.value - 4.0 / 3.0) < 1e-9);
    REQUIRE(a.E.has_value());
    CHECK(a.E->dim() == 2);
  }
  SUBCASE("icosahedral sign matrix") {
    const Attainment a = attainment_check(seeds::icosa_sign(), 3);
    CHECK(a.equalities_hold);
    CHECK(a.attained);
    CHECK(std::abs(a.value - kPhi) < 1e-9);
    REQUIRE(a.rho.has_value());
    CHECK(std::abs(*a.rho - kPhi) < 1e-9);
    CHECK(std::abs(a.lp_value - kPhi) < 1e-7);
  }
  SUBCASE("all-plus J3 falls short of Pi(2, 3)") {
    const Attainment a = attainment_check(SignMatrix::all_plus(3), 2);
    CHECK_FALSE(a.attained);
    CHECK(std::abs(a.value - 1.0) < 1e-12);
    REQUIRE(a.reference.has_value());
    CHECK(std::abs(*a.reference - 4.0 / 3.0) < 1e-9);
  }
  SUBCASE("explicit reference") {
    const Attainment a = attainment_check(seeds::hex_sign(), 2, 1.5);
    CHECK(a.equalities_hold);
    CHECK_FALSE(a.attained);
  }
}
