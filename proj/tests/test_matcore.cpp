#include "projconst/matcore.hpp"
#include "projconst/seeds.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace projconst;
using projconst::testing::kPhi;

namespace {

Matrix J(int d) { return Matrix::Ones(d, d); }
Matrix I(int d) { return Matrix::Identity(d, d); }

}  // namespace

TEST_CASE("eig_sym on small closed-form spectra") {
  SUBCASE("identity") {
    const Spectrum s = eig_sym(SymMatrix(I(3)));
    for (int k = 0; k < 3; ++k) CHECK(s.values(k) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("2I - J") {
    // det(2I - J - x I) = (2 - x)^2 (-1 - x): roots 2, 2, -1.
    const Spectrum s = eig_sym(SymMatrix(2.0 * I(3) - J(3)));
    CHECK(std::abs(s.values(0) - 2.0) < 1e-14);
    CHECK(std::abs(s.values(1) - 2.0) < 1e-14);
    CHECK(std::abs(s.values(2) + 1.0) < 1e-14);
  }
  SUBCASE("J3") {
    const Spectrum s = eig_sym(SymMatrix(J(3)));
    CHECK(std::abs(s.values(0) - 3.0) < 1e-14);
    CHECK(std::abs(s.values(1)) < 1e-14);
    CHECK(std::abs(s.values(2)) < 1e-14);
  }
}

TEST_CASE("eig_sym reconstructs random symmetric matrices up to d = 50") {
  std::mt19937_64 rng(11);
  for (int d : {1, 2, 3, 7, 16, 33, 50}) {
    const Matrix a = testing::random_symmetric(rng, d);
    const Spectrum s = eig_sym(SymMatrix(a));
    const Matrix& v = s.vectors;
    CHECK(max_abs(v * s.values.asDiagonal() * v.transpose() - a) <= 1e-9);
    CHECK(max_abs(v.transpose() * v - Matrix::Identity(d, d)) <= 1e-9);
    for (int k = 1; k < d; ++k) CHECK(s.values(k - 1) >= s.values(k));
    // Sign convention: first non-negligible coordinate positive.
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < d; ++i) {
        if (std::abs(v(i, k)) > 1e-12) {
          CHECK(v(i, k) > 0);
          break;
        }
      }
    }
    const auto ref = testing::reference_eigenvalues(a);
    for (int k = 0; k < d; ++k) CHECK(std::abs(s.values(k) - ref[k]) <= 1e-10);
  }
}

TEST_CASE("eig_sym large route agrees with Jacobi") {
  std::mt19937_64 rng(12);
  const Matrix a = testing::random_symmetric(rng, 80);
  const Spectrum big = eig_sym(SymMatrix(a));
  const Spectrum jac = eig_sym_jacobi(SymMatrix(a));
  CHECK(max_abs(big.values - jac.values) <= 1e-10);
  CHECK(max_abs(big.vectors * big.values.asDiagonal() * big.vectors.transpose() - a) <= 1e-9);
}

TEST_CASE("eig_sym is deterministic") {
  std::mt19937_64 rng(13);
  const Matrix a = testing::random_symmetric(rng, 9);
  const Spectrum s1 = eig_sym(SymMatrix(a));
  const Spectrum s2 = eig_sym(SymMatrix(a));
  CHECK(s1.values == s2.values);
  CHECK(s1.vectors == s2.vectors);
}

TEST_CASE("perron on constant row-sum matrices") {
  SUBCASE("(2I + J)/3") {
    const Matrix m = (I(3) + J(3)) / 3.0;
    const PerronPair pp = perron(m);
    CHECK(std::abs(pp.rho - 4.0 / 3.0) < 1e-12);
    CHECK(max_abs(pp.v - Vector::Constant(3, 1.0 / std::sqrt(3.0))) < 1e-12);
  }
  SUBCASE("J/d") {
    for (int d : {1, 2, 5}) CHECK(std::abs(perron(J(d) / d).rho - 1.0) < 1e-12);
  }
  SUBCASE("|P_icosa|") {
    const Matrix m = seeds::icosa6().matrix().cwiseAbs();
    CHECK(std::abs(m(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(m(0, 1) - 1.0 / (2.0 * std::sqrt(5.0))) < 1e-15);
    const PerronPair pp = perron(m);
    CHECK(std::abs(pp.rho - kPhi) < 1e-12);
    CHECK(std::abs(testing::reference_eigenvalues(m)[0] - kPhi) < 1e-12);
  }
}

TEST_CASE("perron residual and positivity on random positive matrices") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 9;
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) m(i, j) = u(rng);
    }
    if (trial % 2 == 0) m = 0.5 * (m + m.transpose());
    const PerronPair pp = perron(m);
    CHECK((m * pp.v - pp.rho * pp.v).norm() <= 1e-10);
    CHECK(pp.v.minCoeff() > 0.0);
    CHECK(std::abs(pp.v.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("perron rejects nonpositive entries") {
  Matrix m = J(3);
  m(1, 2) = 0.0;
  CHECK_THROWS_AS(perron(m), PreconditionError);
}

TEST_CASE("sign_pattern thresholds") {
  const SignPattern p = sign_pattern(I(3) - J(3) / 3.0, 1e-9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(p(i, j) == (i == j ? 1 : -1));
  }
  CHECK(sign_pattern(Matrix::Zero(2, 2), 1e-9).isZero());
  CHECK(sign_pattern(Matrix::Constant(1, 1, 1e-12), 1e-9)(0, 0) == 0);
  CHECK(sign_pattern(Matrix::Constant(1, 1, -1e-6), 1e-9)(0, 0) == -1);
}

TEST_CASE("validate_projection") {
  SUBCASE("accepts I - J/3 at rank 2") {
    const OrthoProjection p = validate_projection(I(3) - J(3) / 3.0, 2);
    CHECK(p.rank() == 2);
    CHECK(p.dim() == 3);
  }
  SUBCASE("accepts J/3 at rank 1") { CHECK(validate_projection(J(3) / 3.0, 1).rank() == 1); }
  SUBCASE("rejects J/3 at rank 2 with a trace violation") {
    try {
      validate_projection(J(3) / 3.0, 2);
      FAIL("expected rejection");
    } catch (const ProjectionError& e) {
      CHECK(e.invariant() == ProjectionInvariant::kTrace);
      CHECK(std::abs(e.violation() - 1.0) < 1e-12);
    }
  }
  SUBCASE("rejects asymmetric and non-idempotent input") {
    Matrix a = I(2);
    a(0, 1) = 0.5;
    try {
      validate_projection(a, 2);
      FAIL("expected rejection");
    } catch (const ProjectionError& e) {
      CHECK(e.invariant() == ProjectionInvariant::kSymmetry);
    }
    try {
      validate_projection(0.5 * I(2), 1);
      FAIL("expected rejection");
    } catch (const ProjectionError& e) {
      CHECK(e.invariant() == ProjectionInvariant::kIdempotence);
    }
    CHECK_THROWS_AS(validate_projection(Matrix::Zero(2, 3), 1), ProjectionError);
  }
}

TEST_CASE("row_sum_stats") {
  const RowSumStats hex = row_sum_stats(seeds::hex3());
  CHECK(std::abs(hex.r - 4.0 / 3.0) < 1e-15);
  CHECK(std::abs(hex.R - 4.0 / 3.0) < 1e-15);
  CHECK(hex.gap < 1e-15);
  const RowSumStats ico = row_sum_stats(seeds::icosa6());
  CHECK(std::abs(ico.r - kPhi) < 1e-14);
  CHECK(std::abs(ico.R - kPhi) < 1e-14);
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  const RowSumStats dg = row_sum_stats(validate_projection(diag, 1));
  CHECK(dg.r == 0.0);
  CHECK(dg.R == 1.0);
}

TEST_CASE("Perron row-sum bounds and trace = multiplicity on random projections") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 8;
    const int n = 1 + trial % (d - 1);
    const OrthoProjection p = validate_projection(testing::random_projection(rng, d, n), n);
    const Spectrum s = eig_sym(SymMatrix(p.matrix()));
    int ones = 0;
    for (int k = 0; k < d; ++k) ones += std::abs(s.values(k) - 1.0) < 1e-8 ? 1 : 0;
    CHECK(ones == n);
    const Matrix abs_p = p.matrix().cwiseAbs();
    if (!is_strictly_positive(abs_p)) continue;
    const double rho = perron(abs_p).rho;
    const RowSumStats rs = row_sum_stats(p);
    CHECK(rs.r <= rho + 1e-9);
    CHECK(rho <= rs.R + 1e-9);
  }
}

TEST_CASE("SignMatrix invariants and bit encoding") {
  CHECK_THROWS_AS(SignMatrix(Matrix::Zero(2, 2)), PreconditionError);
  Matrix bad = J(2);
  bad(0, 1) = -1.0;
  CHECK_THROWS_AS(SignMatrix{bad}, PreconditionError);
  for (std::uint64_t bits = 0; bits < 64; ++bits) {
    const SignMatrix s = SignMatrix::from_upper_bits(4, bits);
    CHECK(s.upper_bits() == bits);
  }
  CHECK(SignMatrix::from_upper_bits(3, 1).lex_less(SignMatrix::all_plus(3)));
}

TEST_CASE("WeightVector and SymMatrix preconditions") {
  CHECK_THROWS_AS(WeightVector(Vector::Constant(3, 0.5)), PreconditionError);
  Vector neg(2);
  neg << 1.5, -0.5;
  CHECK_THROWS_AS(WeightVector{neg}, PreconditionError);
  Matrix a = I(2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(SymMatrix{a}, PreconditionError);
}
