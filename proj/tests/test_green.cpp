#include <doctest.h>

#include <cmath>

#include "rellich/error.hpp"
#include "rellich/green.hpp"
#include "rellich/quadrature.hpp"
#include "support.hpp"

using namespace rellich;
using doctest::Approx;

namespace {

const OperatorParams laplace5 = OperatorParams::make(5, 0, 0);
const OperatorParams zero3 = OperatorParams::make(3, 1, -1);

GreenBoundInput at(double r1, double r2, double d) { return GreenBoundInput::make(r1, r2, d); }

// ∫_δ^1 r^{e+N−1} dr computed in x = log r.
double truncated_tail(double exponent, int N, double delta) {
  return integrate([=](double x) { return std::exp((exponent + N) * x); }, std::log(delta), 0.0).value;
}

}  // namespace

TEST_SUITE("green") {
  TEST_CASE("input validation") {
    CHECK_NOTHROW(at(4, 1, 3));
    CHECK_NOTHROW(at(1, 1, 0));
    CHECK(testing::code_of([] { at(4, 1, 1); }) == ErrorCode::InvalidArgument);
    CHECK(testing::code_of([] { at(1, 1, 3); }) == ErrorCode::InvalidArgument);
    CHECK(testing::code_of([] { at(0, 1, 1); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("positive discriminant kernel") {
    CHECK(g0_positive_discriminant(laplace5, at(1, 1, 1)) == Approx(1.0));
    // N = 5, c = 2: √D = 2.5, prefactor 4^{−1}, d^{−3} = 1/27, ratio 4/9 raised to 1.
    const OperatorParams drift = OperatorParams::make(5, 2, 0);
    CHECK(g0_positive_discriminant(drift, at(4, 1, 3)) == Approx(0.25 / 27.0 * (4.0 / 9.0)));
    const OperatorParams planar = OperatorParams::make(2, 0, 1);
    CHECK(g0_positive_discriminant(planar, at(2, 2, 2)) == Approx(1.0));
    CHECK(g0_positive_discriminant(planar, at(1, 1, 0.5)) == Approx(1 - std::log(0.25)));
    CHECK(g0_positive_discriminant(planar, at(1, 1, 2)) == Approx(0.25));
    CHECK(testing::code_of([] { g0_positive_discriminant(zero3, at(1, 1, 1)); }) == ErrorCode::DiscriminantZero);
  }

  TEST_CASE("zero discriminant kernel") {
    CHECK(g0_zero_discriminant(zero3, at(1, 1, 2), 1.0) == Approx(std::exp(-2.0)));
    CHECK(g0_zero_discriminant(zero3, at(1, 1, 0.5), 1.0) == Approx(2 * std::exp(-0.5)));
    const OperatorParams planar = OperatorParams::make(2, 0, 0);
    CHECK(g0_zero_discriminant(planar, at(1, 1, 1), 1.0) == Approx(std::exp(-1.0)));
    CHECK(g0_zero_discriminant(planar, at(1, 1, 0.5), 1.0) == Approx(1 - std::log(0.5)));
    CHECK(testing::code_of([] { g0_zero_discriminant(laplace5, at(1, 1, 1), 1.0); }) == ErrorCode::DiscriminantNonzero);
  }

  TEST_CASE("heat kernel bound") {
    CHECK(heat_kernel_bound(laplace5, HeatVariant::PositiveD, 1.0, 1.0, at(1, 1, 0), 1.0) == Approx(1.0));
    CHECK(heat_kernel_bound(zero3, HeatVariant::ZeroD, 1.0, 1.0, at(1, 1, 1), 3.0) == Approx(std::exp(-1.2)));
    double previous = heat_kernel_bound(zero3, HeatVariant::ZeroD, 1.0, 10.0, at(1, 1, 1), 3.0);
    for (double t = 20; t <= 200; t += 10) {
      const double next = heat_kernel_bound(zero3, HeatVariant::ZeroD, 1.0, t, at(1, 1, 1), 3.0);
      CHECK(next < previous);
      previous = next;
    }
    CHECK(previous < 1e-25);
    CHECK(testing::code_of([] { heat_kernel_bound(laplace5, HeatVariant::ZeroD, 1, 1, at(1, 1, 0), 1); }) ==
          ErrorCode::VariantMismatch);
    CHECK(testing::code_of([] { heat_kernel_bound(zero3, HeatVariant::PositiveD, 1, 1, at(1, 1, 0), 1); }) ==
          ErrorCode::VariantMismatch);
  }

  TEST_CASE("kernels are positive") {
    testing::Draw draw(51);
    for (int i = 0; i < 2000; ++i) {
      const int N = draw.integer(2, 8);
      const double c = draw.uniform(-2, 3);
      const double r1 = draw.uniform(0.01, 5), r2 = draw.uniform(0.01, 5);
      const double d = std::abs(r1 - r2) + draw.uniform(0.001, 1) * (r1 + r2 - std::abs(r1 - r2));
      const GreenBoundInput in = at(r1, r2, d);
      const OperatorParams positive = OperatorParams::make(N, c, draw.uniform(0.1, 3));
      const OperatorParams zero = OperatorParams::make(N, c, -std::pow((N - 2 + c) / 2, 2));
      CHECK(g0_positive_discriminant(positive, in) > 0);
      CHECK(g0_zero_discriminant(zero, in, draw.uniform(0.1, 3)) > 0);
      CHECK(heat_kernel_bound(positive, HeatVariant::PositiveD, 0.5, draw.uniform(0.1, 5), in, 1) > 0);
      CHECK(heat_kernel_bound(zero, HeatVariant::ZeroD, 0.5, draw.uniform(0.1, 5), in, 2) > 0);
    }
  }

  TEST_CASE("positive discriminant kernel is continuous across the seam") {
    testing::Draw draw(52);
    for (int i = 0; i < 500; ++i) {
      const OperatorParams params = OperatorParams::make(draw.integer(2, 8), draw.uniform(-1, 2), draw.uniform(0.1, 3));
      const double r1 = draw.uniform(0.5, 2), r2 = r1 * draw.uniform(2.0 / 3.0, 1.5);
      const double seam = std::sqrt(r1 * r2);
      const double h = 1e-12 * seam;
      const double left = g0_positive_discriminant(params, at(r1, r2, seam - h));
      const double right = g0_positive_discriminant(params, at(r1, r2, seam + h));
      CHECK(std::abs(left - right) <= 1e-10 * std::max(1.0, left));
    }
  }

  TEST_CASE("kernels decay in d beyond the seam") {
    testing::Draw draw(53);
    for (int i = 0; i < 200; ++i) {
      const int N = draw.integer(3, 8);
      const double c = draw.uniform(-1, 2);
      const OperatorParams positive = OperatorParams::make(N, c, draw.uniform(0.1, 3));
      const OperatorParams zero = OperatorParams::make(N, c, -std::pow((N - 2 + c) / 2, 2));
      const double r1 = draw.uniform(0.5, 2), r2 = draw.uniform(0.5, 2);
      const double start = std::max(std::sqrt(r1 * r2), std::abs(r1 - r2));
      double prev_pos = g0_positive_discriminant(positive, at(r1, r2, start));
      double prev_zero = g0_zero_discriminant(zero, at(r1, r2, start), 1.0);
      for (int k = 1; k <= 20; ++k) {
        const double d = start + (r1 + r2 - start) * k / 20.0;
        const double pos = g0_positive_discriminant(positive, at(r1, r2, d));
        const double zer = g0_zero_discriminant(zero, at(r1, r2, d), 1.0);
        CHECK(pos < prev_pos);
        CHECK(zer < prev_zero);
        prev_pos = pos;
        prev_zero = zer;
      }
    }
  }

  TEST_CASE("tail integrability matches the exponent threshold and quadrature") {
    testing::Draw draw(54);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
      const OperatorParams params = OperatorParams::make(draw.integer(2, 8), draw.uniform(-1, 2), draw.uniform(0.1, 3));
      const ExtendedIndex p = ExtendedIndex::finite(draw.uniform(1.25, 8));
      const double alpha = draw.uniform(-4, 8);
      const double threshold = base_exponent(params, p) + std::sqrt(params.discriminant());
      const bool integrable = green_tail_integrable(params, p, alpha);
      CHECK(integrable == (alpha < threshold));
      const double e = green_tail_exponent(params, p, alpha);
      if (std::abs(e + params.N) < 0.5) continue;
      const double coarse = truncated_tail(e, params.N, 1e-2);
      const double fine = truncated_tail(e, params.N, 1e-4);
      CHECK(integrable == (fine / coarse < 2.0));
      ++checked;
    }
    CHECK(checked > 300);
    CHECK(testing::code_of([] { green_tail_integrable(zero3, ExtendedIndex::finite(2), 0); }) ==
          ErrorCode::PreconditionViolated);
    CHECK(testing::code_of([] { green_tail_integrable(laplace5, ExtendedIndex::finite(1), 0); }) ==
          ErrorCode::PreconditionViolated);
  }
}
