#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lunmeb/discrimination.hpp"
#include "test_helpers.hpp"

using namespace lunmeb;
using namespace lunmeb::discrimination;
using numkit::Complex;
using numkit::CVector;

namespace {

double norm_sq(const SchmidtState& s) {
  const auto& p = s.probabilities();
  double acc = (s.dim() - 1.0) * (s.dim() - 1.0) / p[0];
  for (int k = 1; k < s.dim(); ++k) acc += 1.0 / p[k];
  return 1.0 / acc;
}

// sum_l |dual_l><dual_l| is diagonal on |kk> with entries d N^2 a_k^2.
double oracle_max_A(const SchmidtState& s) {
  const int d = s.dim();
  const auto& p = s.probabilities();
  double top = (d - 1.0) * (d - 1.0) / p[0];
  for (int k = 1; k < d; ++k) top = std::max(top, 1.0 / p[k]);
  return 1.0 / (d * norm_sq(s) * top);
}

}  // namespace

TEST_CASE("representatives") {
  const auto s = states::from_probabilities(2, {0.3, 0.7});
  const auto r = build_representatives(s);
  REQUIRE(r.vectors.size() == 2);
  CHECK((r.vectors[0] - states::to_vector(s)).norm() < 1e-15);
  CVector expect = CVector::Zero(4);
  expect(0) = std::sqrt(0.3);
  expect(3) = -std::sqrt(0.7);
  CHECK((r.vectors[1] - expect).norm() < 1e-15);
  CHECK_THROWS_AS(build_representatives(states::make_schmidt_state(2, {1, 0})), std::invalid_argument);
}

TEST_CASE("duals are orthogonal to their own representative") {
  std::mt19937_64 rng(41);
  for (int d = 2; d <= 7; ++d) {
    const auto s = testing::random_full_rank_state(rng, d);
    const auto r = build_representatives(s);
    const auto du = build_duals(r);
    CHECK(du.normalization == doctest::Approx(std::sqrt(norm_sq(s))).epsilon(1e-12));
    const auto m = unambiguity_matrix(du, r);
    for (int l = 0; l < d; ++l) {
      CHECK(std::abs(du.duals[l].norm() - 1.0) < 1e-12);
      for (int j = 0; j < d; ++j) {
        const double expect = l == j ? 0.0 : d * du.normalization;
        CHECK(std::abs(m(l, j) - expect) < 1e-10);
      }
    }
  }
}

TEST_CASE("literal phases move the zero overlap for odd d") {
  const auto s = states::from_probabilities(3, {0.2, 0.3, 0.5});
  const auto r = build_representatives(s);
  const auto m = unambiguity_matrix(build_duals(r, PhaseConvention::Literal), r);
  for (int l = 0; l < 3; ++l) {
    for (int j = 0; j < 3; ++j) CHECK((m(l, j) < 1e-12) == (j == (3 - l) % 3));
  }
  // d = 2 phases are real, so both conventions coincide.
  const auto s2 = states::from_probabilities(2, {0.3, 0.7});
  const auto r2 = build_representatives(s2);
  const auto a = build_duals(r2, PhaseConvention::DualOrthogonal);
  const auto b = build_duals(r2, PhaseConvention::Literal);
  for (int l = 0; l < 2; ++l) CHECK((a.duals[l] - b.duals[l]).norm() < 1e-15);
}

TEST_CASE("scale choices") {
  const auto s2 = states::from_probabilities(2, {0.3, 0.7});
  const auto du2 = build_duals(build_representatives(s2));
  CHECK(du2.normalization * du2.normalization == doctest::Approx(0.21).epsilon(1e-12));
  CHECK(closed_form_A(s2, du2.normalization) == doctest::Approx(0.714285714285714).epsilon(1e-12));
  CHECK(max_feasible_A(du2) == doctest::Approx(0.714285714285714).epsilon(1e-12));

  const auto s3 = states::from_probabilities(3, {0.2, 0.3, 0.5});
  const auto du3 = build_duals(build_representatives(s3));
  CHECK(closed_form_A(s3, du3.normalization) == doctest::Approx(0.844444444444444).epsilon(1e-12));
  CHECK(max_feasible_A(du3) == doctest::Approx(0.422222222222222).epsilon(1e-12));

  std::mt19937_64 rng(42);
  for (int d = 2; d <= 7; ++d) {
    for (int t = 0; t < 5; ++t) {
      const auto s = testing::random_full_rank_state(rng, d);
      const auto du = build_duals(build_representatives(s));
      CHECK(max_feasible_A(du) == doctest::Approx(oracle_max_A(s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("closed-form A fails positivity for d >= 3") {
  const auto s = states::from_probabilities(3, {0.2, 0.3, 0.5});
  const auto du = build_duals(build_representatives(s));
  try {
    build_povm(du, AChoice::ClosedForm);
    FAIL("expected InvalidPovmError");
  } catch (const InvalidPovmError& e) {
    CHECK(e.element() == 3);
    CHECK(e.eigenvalue() == doctest::Approx(-1.0).epsilon(1e-10));
  }
  const auto loose = assemble_povm(du, closed_form_A(s, du.normalization), AChoice::ClosedForm);
  CHECK_FALSE(loose.certificates.valid);
  CHECK(loose.certificates.completeness_residual <= 1e-12);
}

TEST_CASE("max A is valid and tight") {
  std::mt19937_64 rng(43);
  const numkit::Tolerances tol;
  for (int d = 2; d <= 7; ++d) {
    const auto s = testing::random_full_rank_state(rng, d);
    const auto p = build_povm(build_duals(build_representatives(s)), AChoice::Max);
    CHECK(p.certificates.valid);
    CHECK(p.certificates.completeness_residual <= 1e-12);
    REQUIRE(p.certificates.min_eigenvalues.size() == static_cast<std::size_t>(d + 1));
    CHECK(std::abs(p.certificates.min_eigenvalues.back()) <= tol.psd_tol);
    for (int l = 0; l < d; ++l) CHECK(p.certificates.min_eigenvalues[l] >= -tol.psd_tol);
  }
}

TEST_CASE("outcome probabilities") {
  const auto s = states::from_probabilities(2, {0.3, 0.7});
  const auto r = build_representatives(s);
  const auto p = build_povm(build_duals(r), AChoice::ClosedForm);
  const auto probs = outcome_probabilities(p, r.vectors[0]);
  REQUIRE(probs.size() == 3);
  CHECK(std::abs(probs[0]) < 1e-12);
  CHECK(probs[1] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(probs[2] == doctest::Approx(0.4).epsilon(1e-12));

  std::mt19937_64 rng(44);
  for (int d = 2; d <= 5; ++d) {
    const auto pm = build_povm(build_duals(build_representatives(testing::random_full_rank_state(rng, d))), AChoice::Max);
    for (int t = 0; t < 50; ++t) {
      const auto v = testing::random_unit_vector(rng, d * d);
      const auto pr = clamp_probabilities(outcome_probabilities(pm, v));
      double sum = 0.0;
      for (double x : pr) {
        CHECK(x >= 0.0);
        sum += x;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(outcome_probabilities(p, 2.0 * r.vectors[0]), std::invalid_argument);
}

TEST_CASE("clamp_probabilities") {
  const auto c = clamp_probabilities({-1e-13, 5e-11, 0.3});
  CHECK(c[0] == 0.0);
  CHECK(c[1] == 0.0);
  CHECK(c[2] == 0.3);
}

TEST_CASE("formula_success_error") {
  const auto a = formula_success_error(2, 0.3);
  CHECK(a.success == doctest::Approx(0.6));
  CHECK(a.error == doctest::Approx(0.4));
  const auto b = formula_success_error(3, 0.2);
  CHECK(b.success == doctest::Approx(0.3));
  CHECK(b.error == doctest::Approx(0.7));
  CHECK_THROWS_AS(formula_success_error(3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(formula_success_error(3, 0.0), std::invalid_argument);
}

TEST_CASE("conclusive probability is the same for every representative") {
  std::mt19937_64 rng(45);
  for (int d = 2; d <= 6; ++d) {
    const auto s = testing::random_full_rank_state(rng, d);
    const auto r = build_representatives(s);
    const auto du = build_duals(r);
    const auto p = build_povm(du, AChoice::Max);
    const double n2 = du.normalization * du.normalization;
    const double expect = p.scale * (d - 1) * d * d * n2;
    for (int j = 0; j < d; ++j) CHECK(conclusive_probability(p, r, j) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("compare_success") {
  const auto s = states::from_probabilities(3, {0.2, 0.3, 0.5});
  const auto c = compare_success(s);
  CHECK(c.d == 3);
  CHECK(c.p0 == doctest::Approx(0.2));
  CHECK_FALSE(c.closed_form_a_valid);
  CHECK(c.closed_form_a_min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(c.oracle_conclusive_closed_form_a == doctest::Approx(0.6).epsilon(1e-10));
  CHECK(c.oracle_conclusive_max_a == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(c.formula_success == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(c.difference == doctest::Approx(0.3).epsilon(1e-10));

  // Born rule at max A equals p0 d / (d-1) when the index-0 coefficient is the smallest.
  std::mt19937_64 rng(46);
  for (int d = 2; d <= 6; ++d) {
    std::vector<double> p(d);
    for (auto& x : p) x = 1.0 + std::uniform_real_distribution<double>(0, 1)(rng);
    std::sort(p.begin(), p.end());
    double sum = 0;
    for (double x : p) sum += x;
    for (auto& x : p) x /= sum;
    const auto cs = compare_success(states::from_probabilities(d, p));
    CHECK(cs.oracle_conclusive_max_a == doctest::Approx(p[0] * d / (d - 1)).epsilon(1e-10));
    CHECK(cs.closed_form_a_valid == (d == 2));
  }
}

TEST_CASE("string round trips") {
  for (auto c : {PhaseConvention::DualOrthogonal, PhaseConvention::Literal}) CHECK(parse_convention(to_string(c)) == c);
  for (auto a : {AChoice::ClosedForm, AChoice::Max}) CHECK(parse_a_choice(to_string(a)) == a);
  CHECK(parse_a_choice("closed-form") == AChoice::ClosedForm);
  CHECK(parse_convention("dual-orthogonal") == PhaseConvention::DualOrthogonal);
  CHECK_THROWS(parse_convention("bogus"));
  CHECK_THROWS(parse_a_choice("bogus"));
}
