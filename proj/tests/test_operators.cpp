#include <doctest.h>

#include <cmath>
#include <random>

#include "lunmeb/operators.hpp"
#include "lunmeb/states.hpp"
#include "test_helpers.hpp"

using namespace lunmeb;
using numkit::CMatrix;
using numkit::Complex;
using numkit::CVector;
using operators::Side;

TEST_CASE("weyl matrices") {
  for (int d = 1; d <= 5; ++d) CHECK(operators::weyl(0, 0, d).matrix.isApprox(CMatrix::Identity(d, d)));

  // |0><1| + e^{i pi}|1><0| is the printed d=2 form; the general formula
  // (row k+m, column k, phase e^{i pi k}) gives its negative.
  CMatrix u11 = CMatrix::Zero(2, 2);
  u11(0, 1) = 1.0;
  u11(1, 0) = std::polar(1.0, numkit::kPi);
  CHECK((operators::weyl(1, 1, 2).matrix + u11).norm() < 1e-15);

  // U_10 |1> = e^{2 i pi / 3}|1>
  const CVector out = operators::weyl(1, 0, 3).matrix * numkit::basis_ket(3, 1);
  CHECK(std::abs(out[1] - std::polar(1.0, 2 * numkit::kPi / 3)) < 1e-15);
  CHECK(std::abs(out[0]) + std::abs(out[2]) == 0.0);

  CHECK_THROWS_AS(operators::weyl(2, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(operators::weyl(0, -1, 3), std::invalid_argument);
  const auto w = operators::weyl(1, 2, 4);
  CHECK(std::holds_alternative<operators::WeylLabel>(w.provenance));
  CHECK(std::get<operators::WeylLabel>(w.provenance) == operators::WeylLabel{1, 2});
}

TEST_CASE("every weyl operator is unitary") {
  const numkit::Tolerances tol;
  for (int d = 2; d <= 16; ++d) {
    for (int n = 0; n < d; ++n) {
      for (int m = 0; m < d; ++m) CHECK(operators::is_unitary(operators::weyl(n, m, d), tol.unit_tol));
    }
  }
}

TEST_CASE("weyl composition closes up to a unit phase") {
  for (int d = 2; d <= 5; ++d) {
    for (int a = 0; a < d * d; ++a) {
      for (int b = 0; b < d * d; ++b) {
        const int n = a / d, m = a % d, n2 = b / d, m2 = b % d;
        const CMatrix prod = operators::weyl(n, m, d).matrix * operators::weyl(n2, m2, d).matrix;
        const CMatrix target = operators::weyl((n + n2) % d, (m + m2) % d, d).matrix;
        // Same support, constant entrywise ratio of modulus one.
        Complex ratio = 0.0;
        bool ok = true;
        for (int r = 0; r < d; ++r) {
          for (int c = 0; c < d; ++c) {
            const bool pz = std::abs(prod(r, c)) < 1e-12, tz = std::abs(target(r, c)) < 1e-12;
            if (pz != tz) ok = false;
            if (pz || tz) continue;
            const Complex q = prod(r, c) / target(r, c);
            if (ratio == Complex(0.0)) ratio = q;
            if (std::abs(q - ratio) > 1e-12) ok = false;
          }
        }
        CHECK(ok);
        CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("weyl operators span all d x d matrices") {
  for (int d = 2; d <= 6; ++d) {
    CMatrix cols(d * d, d * d);
    for (int p = 0; p < d; ++p) {
      for (int q = 0; q < d; ++q) {
        const CMatrix u = operators::weyl(p, q, d).matrix;
        cols.col(p * d + q) = Eigen::Map<const CVector>(u.data(), d * d);
      }
    }
    CHECK(numkit::nullspace(cols).dimension == 0);
  }
}

TEST_CASE("subspace_weyl") {
  CMatrix expected = CMatrix::Zero(3, 3);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  CHECK((operators::subspace_weyl(0, 0, 3).matrix - expected).norm() < 1e-15);

  expected(1, 1) = -1.0;  // e^{2 i pi / 2}
  CHECK((operators::subspace_weyl(1, 0, 3).matrix - expected).norm() < 1e-15);

  for (int d = 3; d <= 7; ++d) {
    for (int n = 0; n < d - 1; ++n) {
      for (int m = 0; m < d - 1; ++m) {
        const CMatrix u = operators::subspace_weyl(n, m, d).matrix;
        CHECK(u.row(d - 1).norm() == 0.0);
        CHECK(u.col(d - 1).norm() == 0.0);
        const CMatrix block = u.topLeftCorner(d - 1, d - 1);
        CHECK((block.adjoint() * block - CMatrix::Identity(d - 1, d - 1)).norm() < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(operators::subspace_weyl(2, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(operators::subspace_weyl(0, 0, 2), std::invalid_argument);
}

TEST_CASE("combine") {
  for (int d = 2; d <= 4; ++d) {
    for (int n = 0; n < d; ++n) {
      for (int m = 0; m < d; ++m) {
        operators::OperatorCombination f{d, operators::OperatorBasis::Weyl, CMatrix::Zero(d, d)};
        f.f(n, m) = 1.0;
        CHECK(f.normalized());
        CHECK((operators::combine(f).matrix - operators::weyl(n, m, d).matrix).norm() < 1e-15);
      }
    }
  }

  // (U_00 + U_10) / sqrt2 = diag(2, 0) / sqrt2: normalised yet not unitary.
  operators::OperatorCombination f{2, operators::OperatorBasis::Weyl, CMatrix::Zero(2, 2)};
  f.f(0, 0) = f.f(1, 0) = 1.0 / std::sqrt(2.0);
  const auto v = operators::combine(f);
  CHECK(f.normalized());
  CHECK(std::abs(v.matrix(0, 0) - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(v.matrix(1, 1)) < 1e-15);
  CHECK_FALSE(operators::is_unitary(v));
  CHECK(std::holds_alternative<operators::Combination>(v.provenance));
}

TEST_CASE("decompose inverts combine") {
  std::mt19937_64 rng(8);
  for (int d = 2; d <= 5; ++d) {
    const CMatrix x = testing::random_matrix(rng, d, d);
    CHECK((operators::combine(operators::decompose(x)).matrix - x).norm() < 1e-12);
  }
}

TEST_CASE("apply_local") {
  const double c0 = std::sqrt(0.3), c1 = std::sqrt(0.7);
  const CVector phi = states::to_vector(states::make_schmidt_state(2, {c0, c1}));

  // C0|10> + C1|01>
  const CVector flipped = operators::apply_local(operators::weyl(0, 1, 2), phi);
  CHECK(std::abs(flipped[2] - c0) < 1e-15);
  CHECK(std::abs(flipped[1] - c1) < 1e-15);
  CHECK(std::abs(flipped[0]) + std::abs(flipped[3]) == 0.0);

  // C0|00> - C1|11>
  const CVector phased = operators::apply_local(operators::weyl(1, 0, 2), phi);
  CHECK(std::abs(phased[0] - c0) < 1e-15);
  CHECK(std::abs(phased[3] + c1) < 1e-15);

  CHECK((operators::apply_local(operators::weyl(0, 0, 2), phi) - phi).norm() == 0.0);
  CHECK_THROWS_AS(operators::apply_local(operators::weyl(0, 0, 3), phi), std::invalid_argument);
}

TEST_CASE("apply_local matches explicit Kronecker products") {
  std::mt19937_64 rng(9);
  for (int d = 2; d <= 4; ++d) {
    const CMatrix a = testing::random_matrix(rng, d, d);
    const operators::LocalOperator op{d, a, operators::Combination{}};
    const CVector v = testing::random_unit_vector(rng, d * d);
    CMatrix a_kron(d * d, d * d), b_kron(d * d, d * d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        a_kron.block(i * d, j * d, d, d) = a(i, j) * CMatrix::Identity(d, d);
        b_kron.block(i * d, j * d, d, d) = (i == j ? 1.0 : 0.0) * a;
      }
    }
    CHECK((operators::apply_local(op, v, Side::A) - a_kron * v).norm() < 1e-12);
    CHECK((operators::apply_local(op, v, Side::B) - b_kron * v).norm() < 1e-12);
  }
}

TEST_CASE("apply_local preserves norm for unitaries") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 5;
    const operators::LocalOperator u{d, testing::random_unitary(rng, d), operators::Combination{}};
    const CVector v = testing::random_unit_vector(rng, d * d);
    CHECK(std::abs(operators::apply_local(u, v, Side::A).norm() - 1.0) < 1e-12);
    CHECK(std::abs(operators::apply_local(u, v, Side::B).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("hs_inner") {
  for (int d = 2; d <= 5; ++d) {
    for (int a = 0; a < d * d; ++a) {
      for (int b = 0; b < d * d; ++b) {
        const Complex ip = operators::hs_inner(operators::weyl(a / d, a % d, d), operators::weyl(b / d, b % d, d));
        CHECK(std::abs(ip - (a == b ? Complex(d) : Complex(0.0))) < 1e-12);
      }
    }
  }
  CHECK(std::abs(operators::hs_inner(operators::weyl(0, 0, 2), operators::weyl(1, 0, 2))) < 1e-15);
  CHECK_THROWS_AS(operators::hs_inner(operators::weyl(0, 0, 2), operators::weyl(0, 0, 3)), std::invalid_argument);
}
