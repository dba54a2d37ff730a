#pragma once

#include <functional>

#include "rellich/params.hpp"

namespace rellich {

using RealFunction = std::function<double(double)>;

/// Composite Gauss–Legendre rule with panel doubling, plus the dense-grid
/// supremum used for p = ∞.
struct QuadratureSpec {
  int nodes = 64;
  double rel_tol = 1e-10;
  /// Absolute floor for the refinement test, for integrals that may vanish.
  double abs_tol = 0.0;
  int initial_panels = 4;
  int max_panels = 8192;
  int sup_grid = 100000;
};

struct Estimate {
  double value = 0.0;
  /// Difference between the last two panel refinements.
  double error = 0.0;
};

/// ∫_a^b f. Throws NonFiniteIntegrand on a non-finite sample.
Estimate integrate(const RealFunction& f, double a, double b,
                   const QuadratureSpec& quad = {});

/// sup_{[a,b]} |f|: grid maximum refined by Brent's method on the
/// neighbouring cells.
double sup_abs(const RealFunction& f, double a, double b,
               const QuadratureSpec& quad = {});

/// ‖f‖_{L^p(a,b)}; the supremum for p = ∞.
Estimate lp_norm_estimate(const RealFunction& f, double a, double b,
                          ExtendedIndex p, const QuadratureSpec& quad = {});

double lp_norm_1d(const RealFunction& f, double a, double b, ExtendedIndex p,
                  const QuadratureSpec& quad = {});

}  // namespace rellich
