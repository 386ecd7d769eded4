#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "wnr/support.hpp"

using namespace wnr;
using test::kPi;

namespace {
const cplx I(0.0, 1.0);

ComplexMatrix j2() {
  ComplexMatrix a(2);
  a(0, 1) = 1.0;
  return a;
}

ComplexMatrix disc095() {
  ComplexMatrix b(2);
  b(0, 1) = 1.9;
  return b;
}

ComplexMatrix roots_of_unity(int n) {
  std::vector<cplx> d(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) d[std::size_t(k)] = std::polar(1.0, 2.0 * kPi * k / n);
  return ComplexMatrix::diagonal(d);
}
}  // namespace

TEST_CASE("weighted_support closed forms") {
  for (double theta : {0.0, 0.7, 2.1, 5.6})
    CHECK(weighted_support(j2(), {1, 0}, theta) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(weighted_support(ComplexMatrix::diagonal({3.0, 1.0}), {1, 0}, 0.0) ==
        doctest::Approx(3.0));
  CHECK(weighted_support(ComplexMatrix::diagonal({1.0, -1.0}), {0, 1}, 0.0) ==
        doctest::Approx(-1.0));
  CHECK_THROWS_AS(weighted_support(j2(), {1, 0, 0}, 0.0), DimensionMismatch);
}

TEST_CASE("sort_weights_desc") {
  {
    const auto [sorted, sigma] = sort_weights_desc(WeightVector({0, 1}));
    CHECK(sorted.raw() == std::vector<double>{1, 0});
    CHECK(sigma == std::vector<int>{1, 0});
  }
  {
    const auto [sorted, sigma] = sort_weights_desc(WeightVector({1, 0, 1, 2}));
    CHECK(sorted.raw() == std::vector<double>{2, 1, 1, 0});
    CHECK(sigma[0] == 3);
    CHECK(sigma == std::vector<int>{3, 0, 2, 1});  // stable on the tied pair
  }
  {
    const auto [sorted, sigma] = sort_weights_desc(WeightVector({0.5, 0.5, 0, 0}));
    CHECK(sorted.raw() == std::vector<double>{0.5, 0.5, 0, 0});
    CHECK(sigma == std::vector<int>{0, 1, 2, 3});
  }
}

TEST_CASE("weight signature groups equal nonzero values") {
  const WeightVector c({1, 0, 1, 2});
  CHECK(c.nonzero_count() == 3);
  const auto sig = c.signature();
  REQUIRE(sig.size() == 2);
  CHECK(sig[0].first == 1.0);
  CHECK(sig[0].second == 2);
  CHECK(sig[1].first == 2.0);
  CHECK(sig[1].second == 1);
}

TEST_CASE("support_derivative closed forms") {
  for (double theta : {0.0, 0.9, 3.3})
    CHECK(std::abs(support_derivative(j2(), {1, 0}, theta)) < 1e-10);
  const ComplexMatrix d31 = ComplexMatrix::diagonal({3.0, 1.0});
  CHECK(std::abs(support_derivative(d31, {1, 0}, 0.0)) < 1e-10);
  CHECK(support_derivative(d31, {1, 0}, kPi / 4) ==
        doctest::Approx(-3.0 * std::sin(kPi / 4)).epsilon(1e-10));
}

TEST_CASE("support_derivative flags weighted degeneracies") {
  // at theta = pi/2 both eigenvalues of H_theta(diag(3,1)) collapse to 0
  CHECK_THROWS_AS(support_derivative(ComplexMatrix::diagonal({3.0, 1.0}), {1, 0}, kPi / 2),
                  DegenerateEigenvalue);
}

TEST_CASE("support_derivative agrees with central differences") {
  Rng rng(11);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 120; ++trial) {
    const int n = 2 + int(rng.below(4));
    const ComplexMatrix a = rng.matrix(n);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (double& v : w) v = rng.normal();
    const WeightVector c(w);
    const double theta = rng.uniform() * 2 * kPi;
    double hf = 0.0;
    try {
      hf = support_derivative(a, c, theta);
    } catch (const DegenerateEigenvalue&) {
      continue;  // precondition failed; nothing to compare
    }
    const double e = 1e-5;
    const double fd = (weighted_support(a, c, theta + e) - weighted_support(a, c, theta - e)) /
                      (2.0 * e);
    CHECK(std::abs(hf - fd) <= 1e-5);
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("support covariance under scaling and translation") {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + int(rng.below(3));
    const ComplexMatrix a = rng.matrix(n);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (double& v : w) v = rng.normal();
    const WeightVector c(w);
    const cplx gamma = rng.complex_normal();
    const cplx lambda = rng.complex_normal();
    const double theta = rng.uniform() * 2 * kPi;

    const ComplexMatrix m = gamma * a + lambda * ComplexMatrix::identity(n);
    const double lhs = weighted_support(m, c, theta);
    const double rhs = std::abs(gamma) * weighted_support(a, c, theta + std::arg(gamma)) +
                       c.sum() * (std::polar(1.0, theta) * lambda).real();
    CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("support of the reversed weights at the antipode") {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + int(rng.below(4));
    const ComplexMatrix a = rng.matrix(n);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (double& v : w) v = rng.normal();
    std::vector<double> rev(w.rbegin(), w.rend());
    const double theta = rng.uniform() * 2 * kPi;
    CHECK(std::abs(weighted_support(a, WeightVector(w), theta) +
                   weighted_support(a, WeightVector(rev), theta + kPi)) <= 1e-9);
  }
}

TEST_CASE("Rayleigh quotients stay under the e1 support") {
  Rng rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + int(rng.below(4));
    const ComplexMatrix a = rng.matrix(n);
    const double theta = rng.uniform() * 2 * kPi;
    const double h = weighted_support(a, test::unit_weight(n, 0), theta);
    for (int s = 0; s < 20; ++s) {
      const auto x = test::random_unit_vector(rng, n);
      CHECK((std::polar(1.0, theta) * test::rayleigh(a, x)).real() <= h + 1e-9);
    }
  }
}

TEST_CASE("support_gap closed forms") {
  const ComplexMatrix a = roots_of_unity(4);
  const WeightVector e1_4 = test::unit_weight(4, 0);
  const WeightVector e1_2 = test::unit_weight(2, 0);
  CHECK(support_gap(a, e1_4, a, e1_4, 1.234) == doctest::Approx(0.0));
  CHECK(support_gap(a, e1_4, disc095(), e1_2, 0.0) == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(support_gap(a, e1_4, disc095(), e1_2, kPi / 4) ==
        doctest::Approx(std::cos(kPi / 4) - 0.95).epsilon(1e-10));
}

TEST_CASE("find_equal_support_angles: identical pair") {
  const ComplexMatrix a = roots_of_unity(4);
  const WeightVector e1 = test::unit_weight(4, 0);
  const EqualSupportAngles esa = find_equal_support_angles(a, e1, a, e1, 256);
  CHECK(esa.sentinel == EqualSupportAngles::Sentinel::IdenticallyZero);
  CHECK(esa.roots.empty());
}

TEST_CASE("find_equal_support_angles: hexagon against the 0.95 disc") {
  const ComplexMatrix a = roots_of_unity(6);
  const EqualSupportAngles esa =
      find_equal_support_angles(a, test::unit_weight(6, 0), disc095(), test::unit_weight(2, 0),
                                4096);
  CHECK(esa.sentinel == EqualSupportAngles::Sentinel::None);
  REQUIRE(esa.roots.size() == 12);
  // crossings solve cos(theta - k pi/3) = 0.95 on the active sector
  const double delta = std::acos(0.95);
  std::vector<double> expected;
  for (int k = 0; k < 6; ++k) {
    expected.push_back(std::fmod(kPi * k / 3.0 + delta, 2 * kPi));
    expected.push_back(std::fmod(kPi * k / 3.0 - delta + 2 * kPi, 2 * kPi));
  }
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(!esa.roots[i].tangential);
    CHECK(std::abs(esa.roots[i].theta - expected[i]) < 1e-8);
  }
}

TEST_CASE("find_equal_support_angles: gap vanishing on an arc") {
  const ComplexMatrix a = ComplexMatrix::diagonal({3.0, 1.0});
  const ComplexMatrix b = ComplexMatrix::diagonal({3.0, 2.0});
  const WeightVector e1 = test::unit_weight(2, 0);
  const EqualSupportAngles esa = find_equal_support_angles(a, e1, b, e1, 1024);
  CHECK(esa.sentinel == EqualSupportAngles::Sentinel::IdenticallyZeroOnArc);
  REQUIRE(!esa.zero_arcs.empty());
}

TEST_CASE("support_profile exports the grid with derivatives") {
  const SupportProfile p = support_profile(j2(), {1, 0}, 64);
  REQUIRE(p.grid.size() == 64);
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    CHECK(p.values[i] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(p.derivatives[i]) < 1e-7);
  }
}

TEST_CASE("support_point parametrizes the contact point") {
  // the segment [1,3]: contact sits at 3 for directions around theta = 0
  const ComplexMatrix d31 = ComplexMatrix::diagonal({3.0, 1.0});
  CHECK(std::abs(support_point(d31, {1, 0}, 0.3) - cplx(3.0, 0.0)) < 1e-9);
  CHECK(std::abs(support_point(d31, {1, 0}, -0.3) - cplx(3.0, 0.0)) < 1e-9);
  // the J2 disc: contact at radius 1/2 in direction e^{-i theta}
  for (double theta : {0.2, 1.7, 4.0})
    CHECK(std::abs(support_point(j2(), {1, 0}, theta) - 0.5 * std::polar(1.0, -theta)) < 1e-9);
}
