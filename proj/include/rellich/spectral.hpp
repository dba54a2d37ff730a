#pragma once

#include <utility>
#include <vector>

#include "rellich/params.hpp"
#include "rellich/validity.hpp"

namespace rellich {

/// Parabola P = { −ξ² + iξk − ω : ξ ∈ ℝ } and the closed region Q to its
/// left. With k = 0 both collapse to the half line (−∞, −ω].
struct ParabolicRegion {
  double k = 0.0;
  double omega = 0.0;
};

/// Region of the radial operator r²D_rr + (N−1+c)rD_r:
/// k = N(1 − 2/p) − 2 + c, ω = ω_p(N, p, c).
ParabolicRegion radial_region(const OperatorParams& params, ExtendedIndex p);

/// Region after the substitution v = |x|^{α−2}u (drift c + 4 − 2α):
/// k = 2(base − α), ω = ω_p(N, p, c + 4 − 2α).
ParabolicRegion rellich_region(const OperatorParams& params, ExtendedIndex p,
                               double alpha);

// Membership tests share the slack tol·(1 + |λ|) on the defining inequality.
bool in_region(const ParabolicRegion& region, Complex lambda,
               double tol = kDefaultTolerance);
bool on_parabola(const ParabolicRegion& region, Complex lambda,
                 double tol = kDefaultTolerance);
/// Interior of Q; empty when k = 0.
bool in_interior(const ParabolicRegion& region, Complex lambda,
                 double tol = kDefaultTolerance);

/// Distance from a real λ to { −ξ² + iβξ }.
double dist_to_parabola(double beta, double lambda);

/// Exponents of e^{μt} solving λu = u″ + βu′, μ₁ = (−β − √(β²+4λ))/2,
/// μ₂ = (−β + √(β²+4λ))/2 with the nonnegative-real-part root.
std::pair<Complex, Complex> ode_roots(double beta, Complex lambda);

struct SpectralClassification {
  bool in_spectrum = false;
  bool in_approx = false;
  /// Certificate only: false means "not certified", never "not an eigenvalue".
  bool in_point_certified = false;
  bool in_residual_not_approx = false;
};

enum class HalfLine { Positive, Negative };
enum class RadialInterval { HalfLine, UnitInterval };

/// B = D² + βD with a Dirichlet condition at 0 on [0, ∞) or (−∞, 0].
SpectralClassification classify_halfline_ode(double beta, Complex lambda,
                                             HalfLine side,
                                             double tol = kDefaultTolerance);

/// Radial operator on (0, ∞) or (0, 1) in L^p(r^{N−1}dr).
SpectralClassification classify_radial_operator(const OperatorParams& params,
                                                ExtendedIndex p,
                                                RadialInterval interval,
                                                Complex lambda,
                                                double tol = kDefaultTolerance);

/// |x|²Δ + c x·∇ restricted to harmonics in J, on ℝ^N or the unit ball.
/// `domain` must be WholeSpace or UnitBall.
SpectralClassification classify_degenerate_operator(const OperatorParams& params,
                                                    ExtendedIndex p,
                                                    const HarmonicSet& J,
                                                    DomainKind domain,
                                                    Complex lambda,
                                                    double tol = kDefaultTolerance);

/// Optimal C in ‖u‖ ≤ C‖λu − Au‖: 1/(λ + ω_p). Throws OutOfRange when
/// λ + ω_p ≤ 0.
double resolvent_bound(const OperatorParams& params, ExtendedIndex p,
                       double lambda);

/// Eigenvalues of the second-order finite-difference discretisation of
/// u″ + βu′ on [0, length] with Dirichlet ends and `points` interior nodes.
/// The matrix is symmetrisable while h|β| < 2, which is required.
std::vector<double> halfline_dirichlet_spectrum(double beta, double length,
                                                int points);

/// Largest distance from a real point set to Q (zero for points inside).
double excess_over_region(const ParabolicRegion& region,
                          const std::vector<double>& points);

}  // namespace rellich
