#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "rellich/error.hpp"
#include "rellich/quadrature.hpp"
#include "rellich/radial.hpp"
#include "rellich/spectral.hpp"
#include "support.hpp"

using namespace rellich;
using doctest::Approx;

namespace {

const ExtendedIndex two = ExtendedIndex::finite(2.0);
const OperatorParams laplace5 = OperatorParams::make(5, 0, 0);

void check_derivatives(const Profile1D& v) {
  const double h = 1e-5 * (v.b - v.a);
  double scale1 = 0.0, scale2 = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double s = v.a + (v.b - v.a) * i / 100.0;
    scale1 = std::max(scale1, std::abs(v.d1(s)));
    scale2 = std::max(scale2, std::abs(v.d2(s)));
  }
  for (int i = 1; i < 100; ++i) {
    const double s = v.a + (v.b - v.a) * (i + 0.37) / 101.0;
    const double fd1 = (v.value(s + h) - v.value(s - h)) / (2 * h);
    const double fd2 = (v.d1(s + h) - v.d1(s - h)) / (2 * h);
    CHECK(std::abs(fd1 - v.d1(s)) <= 1e-6 * scale1);
    CHECK(std::abs(fd2 - v.d2(s)) <= 1e-6 * scale2);
  }
  for (double end : {v.a, v.b}) {
    CHECK(std::abs(v.value(end)) < 1e-12);
    CHECK(std::abs(v.d1(end)) < 1e-12 * (1 + scale1));
    CHECK(std::abs(v.d2(end)) < 1e-9 * (1 + scale2));
  }
}

// Independent composite trapezoid rule for ‖g‖_p on [a, b].
double trapezoid_norm(const RealFunction& g, double a, double b, double p, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 0.5 : 1.0;
    sum += w * std::pow(std::abs(g(a + i * h)), p);
  }
  return std::pow(sum * h, 1.0 / p);
}

double critical_alpha(const OperatorParams& params, ExtendedIndex p, int n, CriticalBranch branch) {
  const auto [minus, plus] = critical_exponents(params, p, n);
  return branch == CriticalBranch::Minus ? minus : plus;
}

}  // namespace

TEST_SUITE("radial") {
  TEST_CASE("profile derivatives are exact") {
    check_derivatives(polynomial_bump(0.0, 1.0));
    check_derivatives(polynomial_bump(-3.0, 7.5));
    check_derivatives(plateau_profile(25.0));
    check_derivatives(modulated_bump(1.0, 4.0, 0.3, 5.0));
    check_derivatives(translated(polynomial_bump(0.0, 2.0), 3.5));
    check_derivatives(dilated(modulated_bump(0.0, 2.0, 0.5, 3.0), 2.5));
    check_derivatives(amplified(polynomial_bump(0.0, 2.0), -3.0));
    check_derivatives(exp_composed(polynomial_bump(0.25, 0.5), 0.3));
    check_derivatives(exp_composed(polynomial_bump(0.25, 0.5), -0.7));
  }

  TEST_CASE("plateau profile") {
    for (double T : {1.0, 25.0, 200.0}) {
      const Profile1D v = plateau_profile(T);
      CHECK(v.value(0.0) == 1.0);
      CHECK(v.a == -T);
      CHECK(v.b == T);
      // ψ″(0) = −6 is the extreme of ψ″.
      CHECK(sup_abs(v.d2, v.a, v.b) * T * T == Approx(6.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(plateau_profile(0.0), Error);
  }

  TEST_CASE("quadrature reproduces closed forms") {
    const ExtendedIndex inf = ExtendedIndex::infinity();
    CHECK(lp_norm_1d([](double) { return 1.0; }, 0, 1, two) == Approx(1.0).epsilon(1e-9));
    CHECK(lp_norm_1d([](double s) { return s; }, 0, 1, two) == Approx(1 / std::sqrt(3.0)).epsilon(1e-9));
    CHECK(lp_norm_1d([](double s) { return std::pow(1 - s * s, 3); }, -1, 1, inf) == Approx(1.0).epsilon(1e-9));
    CHECK(lp_norm_1d([](double s) { return s; }, 0, 1, ExtendedIndex::finite(3)) == Approx(std::cbrt(0.25)).epsilon(1e-9));
    CHECK(integrate([](double s) { return s * s * s; }, 0, 1).value == Approx(0.25).epsilon(1e-9));
    CHECK(integrate([](double s) { return std::exp(s); }, 0, 1).value == Approx(std::numbers::e - 1).epsilon(1e-9));
    CHECK(integrate([](double s) { return s * std::exp(-s); }, 0, 2).value == Approx(1 - 3 * std::exp(-2.0)).epsilon(1e-9));
    CHECK(integrate([](double s) { return s * s * std::exp(s); }, 0, 1).value == Approx(std::numbers::e - 2).epsilon(1e-9));
    CHECK(integrate([](double s) { return std::sin(s); }, 0, std::numbers::pi).value == Approx(2.0).epsilon(1e-9));
    CHECK(integrate([](double s) { return 1 / s; }, 1, std::numbers::e).value == Approx(1.0).epsilon(1e-9));
    const double beta_integral = std::tgamma(0.5) * std::tgamma(7.0) / std::tgamma(7.5);
    CHECK(integrate([](double t) { return std::pow(1 - t * t, 6); }, -1, 1).value == Approx(beta_integral).epsilon(1e-9));
    CHECK(integrate([](double s) { return std::exp(-s * s); }, -8, 8).value == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-9));
    CHECK(sup_abs([](double s) { return std::sin(s); }, 0, 3) == Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("non-finite integrands are rejected") {
    const RealFunction bad = [](double s) { return s > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; };
    CHECK(testing::code_of([&] { integrate(bad, 0, 1); }) == ErrorCode::NonFiniteIntegrand);
    CHECK(testing::code_of([&] { sup_abs(bad, 0, 1); }) == ErrorCode::NonFiniteIntegrand);
  }

  TEST_CASE("reduced coefficients") {
    ReducedCoefficients rc = reduced_coefficients(laplace5, two, 0.0, 0);
    CHECK(rc.beta == Approx(-2.0));
    CHECK(rc.lambda_red == Approx(1.25));
    rc = reduced_coefficients(laplace5, two, -0.5, 0);
    CHECK(rc.beta == Approx(-3.0));
    CHECK(rc.lambda_red == Approx(0.0).scale(1));
    rc = reduced_coefficients(laplace5, two, 2.5, 0);
    CHECK(rc.beta == Approx(3.0));
    CHECK(rc.lambda_red == Approx(0.0).scale(1));
  }

  TEST_CASE("critical exponents collapse the reduced operator") {
    testing::Draw draw(31);
    for (int i = 0; i < 2000; ++i) {
      const OperatorParams params = OperatorParams::make(draw.integer(2, 12), draw.uniform(-4, 4), draw.uniform(-1, 6));
      const ExtendedIndex p = draw.index();
      const int n = draw.integer(0, 4);
      if (params.discriminant() + harmonic_eigenvalue(params.N, n) < 0) continue;
      const double gap = real_root_gap(params, n);
      const auto [minus, plus] = critical_exponents(params, p, n);
      const ReducedCoefficients lo = reduced_coefficients(params, p, minus, n);
      const ReducedCoefficients hi = reduced_coefficients(params, p, plus, n);
      const double scale = 1 + std::abs(params.b) + harmonic_eigenvalue(params.N, n) + params.N * params.N;
      CHECK(std::abs(lo.lambda_red) < 1e-10 * scale);
      CHECK(std::abs(hi.lambda_red) < 1e-10 * scale);
      CHECK(lo.beta == Approx(-2 * gap).epsilon(1e-10));
      CHECK(hi.beta == Approx(2 * gap).epsilon(1e-10));
      const auto [r1, r2] = indicial_roots(params, n);
      const double gamma = -std::min(r1.real(), r2.real());
      CHECK(minus - 2 + gamma == Approx(-params.N * p.reciprocal()).scale(1).epsilon(1e-10));
    }
  }

  TEST_CASE("ratios stay above the best constant") {
    testing::Draw draw(32);
    for (int i = 0; i < 20; ++i) {
      const double a = draw.uniform(-10, 10);
      const double width = draw.uniform(0.5, 15);
      const Profile1D v = i % 2 ? modulated_bump(a, a + width, draw.uniform(0, 0.8), draw.uniform(0.5, 6))
                                : polynomial_bump(a, a + width);
      for (int n : {0, 1, 2}) {
        CHECK(rellich_ratio_separable(laplace5, two, 0.0, n, v).ratio >= 1.25 - 1e-3);
      }
    }
  }

  TEST_CASE("critical ratio reduces to the first order part") {
    const Profile1D v = polynomial_bump(0, 3);
    const RatioReport r = rellich_ratio_separable(laplace5, two, -0.5, 0, v);
    const double expect = lp_norm_1d([&](double s) { return v.d2(s) - 3 * v.d1(s); }, 0, 3, two) / lp_norm_1d(v.value, 0, 3, two);
    CHECK(r.ratio == Approx(expect).epsilon(1e-10));
    CHECK(r.ratio == Approx(r.numerator / r.denominator));
    CHECK(r.denominator > 0);
  }

  TEST_CASE("separable ratio agrees with an independent trapezoid rule") {
    const Profile1D v = dilated(modulated_bump(-1, 2, 0.4, 3), 2.0);
    for (double q : {2.0, 3.0}) {
      const ExtendedIndex p = ExtendedIndex::finite(q);
      const ReducedCoefficients rc = reduced_coefficients(laplace5, p, 0.3, 1);
      const RealFunction image = [&](double s) { return v.d2(s) + rc.beta * v.d1(s) - rc.lambda_red * v.value(s); };
      const double oracle = trapezoid_norm(image, v.a, v.b, q, 200000) / trapezoid_norm(v.value, v.a, v.b, q, 200000);
      CHECK(rellich_ratio_separable(laplace5, p, 0.3, 1, v).ratio == Approx(oracle).epsilon(1e-6));
    }
  }

  TEST_CASE("plateau family approaches the constant from above") {
    double previous = std::numeric_limits<double>::infinity();
    for (double T : {25.0, 50.0, 100.0, 200.0}) {
      const double r = rellich_ratio_separable(laplace5, two, 0.0, 0, plateau_profile(T)).ratio;
      CHECK(r < previous);
      CHECK(r >= 1.25);
      previous = r;
    }
    CHECK(previous <= 1.30);
  }

  TEST_CASE("counterexample ratio matches the separable ratio of the composed profile") {
    const Profile1D phi = polynomial_bump(0.25, 0.5);
    const OperatorParams params = OperatorParams::make(5, 0.5, 1.0);
    for (const ExtendedIndex p : {ExtendedIndex::finite(1.0), two, ExtendedIndex::finite(3.5), ExtendedIndex::infinity()}) {
      for (CriticalBranch branch : {CriticalBranch::Minus, CriticalBranch::Plus}) {
        for (int n : {0, 2}) {
          for (double eps : {0.5, 0.1}) {
            const double direct = counterexample_ratio(params, p, n, branch, eps, phi).ratio;
            const double oracle = rellich_ratio_separable(params, p, critical_alpha(params, p, n, branch), n,
                                                          exp_composed(phi, eps)).ratio;
            CHECK(direct == Approx(oracle).epsilon(1e-6));
          }
        }
      }
    }
  }

  TEST_CASE("counterexample ratio decays linearly") {
    const Profile1D phi = polynomial_bump(0.25, 0.5);
    std::vector<double> eps{0.1, 0.05, 0.025}, ratio;
    for (double e : eps) ratio.push_back(counterexample_ratio(laplace5, two, 0, CriticalBranch::Minus, e, phi).ratio);
    const double slope = std::log(ratio[2] / ratio[0]) / std::log(eps[2] / eps[0]);
    CHECK(slope >= 0.95);
    CHECK(slope <= 1.05);
    CHECK(ratio[2] / ratio[1] == Approx(0.5).epsilon(0.05));
    const ExtendedIndex inf = ExtendedIndex::infinity();
    const double K = counterexample_ratio(laplace5, inf, 0, CriticalBranch::Minus, 0.1, phi).ratio / 0.1;
    CHECK(counterexample_ratio(laplace5, inf, 0, CriticalBranch::Minus, 0.05, phi).ratio <= K * 0.05);
  }

  TEST_CASE("counterexample preconditions") {
    const Profile1D phi = polynomial_bump(0.25, 0.5);
    const OperatorParams complex_roots = OperatorParams::make(5, 0, -3);
    CHECK(testing::code_of([&] { counterexample_ratio(complex_roots, two, 0, CriticalBranch::Minus, 0.1, phi); }) ==
          ErrorCode::UnsupportedRegime);
    CHECK(testing::code_of([&] { counterexample_ratio(laplace5, two, 0, CriticalBranch::Minus, 0.0, phi); }) ==
          ErrorCode::PreconditionViolated);
    CHECK(testing::code_of([&] { counterexample_ratio(laplace5, two, 0, CriticalBranch::Minus, 1.5, phi); }) ==
          ErrorCode::PreconditionViolated);
    CHECK(testing::code_of([&] {
            counterexample_ratio(laplace5, two, 0, CriticalBranch::Minus, 0.1, polynomial_bump(0.2, 0.5));
          }) == ErrorCode::PreconditionViolated);
  }

  TEST_CASE("boundary counterexample") {
    BoundaryReport r = boundary_counterexample(laplace5, two, 3.0, 1000);
    CHECK(r.residual_sup < 1e-8);
    CHECK(r.norm_finite);
    CHECK(r.active);
    r = boundary_counterexample(laplace5, two, 2.0, 1000);
    CHECK(!r.norm_finite);
    CHECK(!r.active);
    r = boundary_counterexample(laplace5, two, -3.0, 1000);
    CHECK(!r.norm_finite);
    r = boundary_counterexample(OperatorParams::make(5, 0, -2.25), two, 3.0, 1000);
    CHECK(r.residual_sup < 1e-8);
    r = boundary_counterexample(laplace5, two, 6.0, 1000, 2);
    CHECK(r.residual_sup < 1e-8);
    CHECK(r.active);
    CHECK(testing::code_of([] { boundary_counterexample(OperatorParams::make(5, 0, -3), two, 3.0, 100); }) ==
          ErrorCode::UnsupportedRegime);
  }
}
