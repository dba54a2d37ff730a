#pragma once

#include "rellich/params.hpp"

namespace rellich {

/// |x| = r1, |y| = r2 and |x − y| = d for a pair of points.
struct GreenBoundInput {
  double r1 = 1.0;
  double r2 = 1.0;
  double d = 0.0;

  /// Rejects r1, r2 ≤ 0, d < 0 and triples outside |r1 − r2| ≤ d ≤ r1 + r2.
  static GreenBoundInput make(double r1, double r2, double d, double tol = 1e-12);
};

/// Comparison kernel G₀ for D > 0 (unit constant). Needs d > 0.
double g0_positive_discriminant(const OperatorParams& params, const GreenBoundInput& in,
                                double tol = kDefaultTolerance);

/// Comparison kernel G₀ for D = 0 with decay rate k > 0 (unit constant).
double g0_zero_discriminant(const OperatorParams& params, const GreenBoundInput& in,
                            double decay_k, double tol = kDefaultTolerance);

enum class HeatVariant { PositiveD, ZeroD };

/// Heat kernel upper bound with C_ε = 1; `lambda1` enters the ZeroD variant only.
double heat_kernel_bound(const OperatorParams& params, HeatVariant variant, double eps,
                         double t, const GreenBoundInput& in, double lambda1,
                         double tol = kDefaultTolerance);

/// Whether |y|^{(√D − (N−2)/2 + c/2 − α)p′} is integrable near 0, i.e.
/// α < N(1/2 − 1/p) + 1 + c/2 + √D. Needs D > 0 and 1 < p < ∞.
bool green_tail_integrable(const OperatorParams& params, ExtendedIndex p, double alpha);

/// The exponent (√D − (N−2)/2 + c/2 − α)p′ itself.
double green_tail_exponent(const OperatorParams& params, ExtendedIndex p, double alpha);

}  // namespace rellich
