#include "projconst/seeds.hpp"

#include <cmath>
#include <stdexcept>

namespace projconst::seeds {

const Matrix& icosahedral_seidel() {
  // Paley conference matrix of order 6: a bordered Jacobsthal matrix over
  // GF(5), where 1 and 4 are the nonzero squares.
  static const Matrix c = [] {
    Matrix m = Matrix::Zero(6, 6);
    for (int j = 1; j < 6; ++j) m(0, j) = m(j, 0) = 1.0;
    for (int a = 0; a < 5; ++a) {
      for (int b = 0; b < 5; ++b) {
        if (a == b) continue;
        const int diff = ((b - a) % 5 + 5) % 5;
        m(a + 1, b + 1) = (diff == 1 || diff == 4) ? 1.0 : -1.0;
      }
    }
    if (max_abs(m * m - 5.0 * Matrix::Identity(6, 6)) != 0.0 ||
        max_abs(m - m.transpose()) != 0.0) {
      throw std::logic_error("icosahedral Seidel matrix fails C^2 = 5I");
    }
    return m;
  }();
  return c;
}

OrthoProjection hex3() {
  return validate_projection(Matrix::Identity(3, 3) - Matrix::Constant(3, 3, 1.0 / 3.0), 2);
}

OrthoProjection icosa6() {
  const Matrix p =
      0.5 * (Matrix::Identity(6, 6) + icosahedral_seidel() / std::sqrt(5.0));
  return validate_projection(p, 3);
}

OrthoProjection trivial1() { return validate_projection(Matrix::Identity(1, 1), 1); }

OrthoProjection by_name(const std::string& name) {
  if (name == "hex3") return hex3();
  if (name == "icosa6") return icosa6();
  if (name == "trivial1") return trivial1();
  throw std::out_of_range("unknown seed '" + name + "'");
}

std::vector<std::string> names() { return {"hex3", "icosa6", "trivial1"}; }

SignMatrix hex_sign() {
  return SignMatrix(2.0 * Matrix::Identity(3, 3) - Matrix::Ones(3, 3));
}

SignMatrix icosa_sign() {
  return SignMatrix(Matrix::Identity(6, 6) + icosahedral_seidel());
}

}  // namespace projconst::seeds
