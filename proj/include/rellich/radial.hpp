#pragma once

#include <string>

#include "rellich/params.hpp"
#include "rellich/quadrature.hpp"

namespace rellich {

/// C² profile with exact first and second derivatives, vanishing to second
/// order at both ends of its support [a, b].
struct Profile1D {
  RealFunction value;
  RealFunction d1;
  RealFunction d2;
  double a = 0.0;
  double b = 1.0;
  std::string tag;
};

/// ψ((2s − a − b)/(b − a)) with ψ(t) = (1 − t²)³.
Profile1D polynomial_bump(double a, double b);

/// v_T(s) = ψ(s/T) on [−T, T]; near-extremizer family as T grows.
Profile1D plateau_profile(double T);

/// Bump times 1 + amplitude·sin(frequency·s); still C² with compact support.
Profile1D modulated_bump(double a, double b, double amplitude, double frequency);

/// s ↦ v(s − shift).
Profile1D translated(const Profile1D& v, double shift);

/// s ↦ v(s/scale), scale > 0.
Profile1D dilated(const Profile1D& v, double scale);

/// s ↦ factor·v(s).
Profile1D amplified(const Profile1D& v, double factor);

/// s ↦ φ(e^{−εs}) for ε ≠ 0; needs φ supported in (0, ∞).
Profile1D exp_composed(const Profile1D& phi, double epsilon);

/// Coefficients of the log-coordinate operator v″ + βv′ − λ_red v obtained
/// from u = ρ^{2−α−N/p} v(−log ρ) P_n.
struct ReducedCoefficients {
  double beta = 0.0;
  double lambda_red = 0.0;
  int n = 0;
  double alpha = 0.0;
};

ReducedCoefficients reduced_coefficients(const OperatorParams& params,
                                         ExtendedIndex p, double alpha, int n);

struct RatioReport {
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
  double quad_error_estimate = 0.0;
};

/// ‖|x|^α Lu‖_p / ‖|x|^{α−2}u‖_p for u = ρ^{2−α−N/p} v(−log ρ) P_n, computed
/// as ‖v″ + βv′ − λ_red v‖_p / ‖v‖_p.
RatioReport rellich_ratio_separable(const OperatorParams& params, ExtendedIndex p,
                                    double alpha, int n, const Profile1D& v,
                                    const QuadratureSpec& quad = {});

enum class CriticalBranch { Minus, Plus };

const char* to_string(CriticalBranch branch);

/// Ratio of the family v(s) = φ(e^{−εs}) at α = α_n^∓, written in the
/// variable t = e^{−εs}: ε(I₁/I₀)^{1/p} with
/// I₁ = ∫ t^{p−1}|εtφ″ + (K + ε)φ′|^p, I₀ = ∫ |φ|^p/t and K = 2γ + N − 2 + c.
/// Requires D + λ_n ≥ 0, supp φ ⊆ [1/4, 1/2] and 0 < ε ≤ 1.
RatioReport counterexample_ratio(const OperatorParams& params, ExtendedIndex p,
                                 int n, CriticalBranch branch, double epsilon,
                                 const Profile1D& phi,
                                 const QuadratureSpec& quad = {},
                                 double tol = kDefaultTolerance);

struct BoundaryReport {
  /// Largest residual of Lu on the grid relative to the size of its terms.
  double residual_sup = 0.0;
  /// |x|^{α−2}u ∈ L^p(B).
  bool norm_finite = false;
  /// α > α_n^+, the regime where u defeats the inequality on the ball.
  bool active = false;
};

/// u = (|x|^{−s₂} − |x|^{−s₁})P_n solves Lu = 0 and vanishes on ∂B; with a
/// double root the second solution |x|^{−s₁} log|x| is used.
BoundaryReport boundary_counterexample(const OperatorParams& params,
                                       ExtendedIndex p, double alpha, int grid,
                                       int n = 0,
                                       double tol = kDefaultTolerance);

}  // namespace rellich
