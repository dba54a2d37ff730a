#include "rellich/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "rellich/error.hpp"

namespace rellich {
namespace {

double slack(Complex lambda, double tol) { return tol * (1.0 + std::abs(lambda)); }

bool degenerate(const ParabolicRegion& region, double tol) {
  return std::abs(region.k) <= tol;
}

// Re λ + (Im λ)²/k² + ω; zero exactly on P, negative inside Q.
double parabola_residual(const ParabolicRegion& region, Complex lambda) {
  const double im = lambda.imag();
  return lambda.real() + im * im / (region.k * region.k) + region.omega;
}

// True when λ + λ_j lies on P for some j ∈ J.
bool on_shifted_parabolas(const ParabolicRegion& region, const HarmonicSet& J,
                          int N, Complex lambda, double tol) {
  const auto last = J.max();
  for (int n = 0;; ++n) {
    if (last && n > *last) return false;
    const Complex shifted = lambda + harmonic_eigenvalue(N, n);
    // P lies in Re ≤ −ω and Re(λ + λ_n) increases with n.
    if (shifted.real() > -region.omega + slack(shifted, tol)) return false;
    if (J.contains(n) && on_parabola(region, shifted, tol)) return true;
  }
}

}  // namespace

ParabolicRegion radial_region(const OperatorParams& params, ExtendedIndex p) {
  return {params.N * (1.0 - 2.0 * p.reciprocal()) - 2.0 + params.c,
          omega_shift(params.N, p, params.c)};
}

ParabolicRegion rellich_region(const OperatorParams& params, ExtendedIndex p,
                               double alpha) {
  return radial_region(shifted_drift(params, alpha), p);
}

bool in_region(const ParabolicRegion& region, Complex lambda, double tol) {
  const double s = slack(lambda, tol);
  if (degenerate(region, tol)) {
    return std::abs(lambda.imag()) <= s && lambda.real() <= -region.omega + s;
  }
  return parabola_residual(region, lambda) <= s;
}

bool on_parabola(const ParabolicRegion& region, Complex lambda, double tol) {
  if (degenerate(region, tol)) return in_region(region, lambda, tol);
  return std::abs(parabola_residual(region, lambda)) <= slack(lambda, tol);
}

bool in_interior(const ParabolicRegion& region, Complex lambda, double tol) {
  if (degenerate(region, tol)) return false;
  return parabola_residual(region, lambda) < -slack(lambda, tol);
}

double dist_to_parabola(double beta, double lambda) {
  const double b2 = beta * beta;
  if (lambda >= -b2 / 2.0) return std::abs(lambda);
  return std::sqrt(b2 * (-lambda - b2 / 4.0));
}

std::pair<Complex, Complex> ode_roots(double beta, Complex lambda) {
  const Complex root = sqrt_nonneg_re(beta * beta + 4.0 * lambda);
  return {(-beta - root) / 2.0, (-beta + root) / 2.0};
}

SpectralClassification classify_halfline_ode(double beta, Complex lambda,
                                             HalfLine side, double tol) {
  const ParabolicRegion region{beta, 0.0};
  SpectralClassification out;
  if (!in_region(region, lambda, tol)) return out;
  out.in_spectrum = true;
  if (degenerate(region, tol)) {
    out.in_approx = true;
    return out;
  }
  // On (−∞, 0] the roles of the two signs are exchanged by s ↦ −s.
  const double effective = side == HalfLine::Positive ? beta : -beta;
  if (effective > 0.0) {
    out.in_approx = true;
    out.in_point_certified = in_interior(region, lambda, tol);
  } else {
    out.in_approx = on_parabola(region, lambda, tol);
    out.in_residual_not_approx = !out.in_approx;
  }
  return out;
}

SpectralClassification classify_radial_operator(const OperatorParams& params,
                                                ExtendedIndex p,
                                                RadialInterval interval,
                                                Complex lambda, double tol) {
  const ParabolicRegion region = radial_region(params, p);
  if (interval == RadialInterval::HalfLine) {
    SpectralClassification out;
    out.in_spectrum = out.in_approx = on_parabola(region, lambda, tol);
    return out;
  }
  // r = e^s maps (0, 1) onto (−∞, 0) and the operator onto D² + kD − ω.
  return classify_halfline_ode(region.k, lambda + region.omega, HalfLine::Negative, tol);
}

SpectralClassification classify_degenerate_operator(const OperatorParams& params,
                                                    ExtendedIndex p,
                                                    const HarmonicSet& J,
                                                    DomainKind domain,
                                                    Complex lambda, double tol) {
  const ParabolicRegion region = radial_region(params, p);
  SpectralClassification out;
  if (domain == DomainKind::WholeSpace) {
    out.in_spectrum = out.in_approx = on_shifted_parabolas(region, J, params.N, lambda, tol);
    return out;
  }
  if (domain != DomainKind::UnitBall) {
    throw Error(ErrorCode::InvalidArgument,
                "spectral classification is available on rn and ball only");
  }
  const Complex lowest = lambda + harmonic_eigenvalue(params.N, J.min());
  out.in_spectrum = in_region(region, lowest, tol);
  if (!out.in_spectrum) return out;
  if (degenerate(region, tol)) {
    out.in_approx = true;
  } else if (region.k < 0.0) {
    out.in_approx = true;
    out.in_point_certified = in_interior(region, lowest, tol);
  } else {
    out.in_approx = on_shifted_parabolas(region, J, params.N, lambda, tol);
    out.in_residual_not_approx = !out.in_approx && in_interior(region, lowest, tol);
  }
  return out;
}

double resolvent_bound(const OperatorParams& params, ExtendedIndex p, double lambda) {
  const double shifted = lambda + omega_shift(params.N, p, params.c);
  if (shifted <= 0.0) {
    throw Error(ErrorCode::OutOfRange,
                "resolvent bound needs lambda + omega_p > 0, got " + std::to_string(shifted));
  }
  return 1.0 / shifted;
}

std::vector<double> halfline_dirichlet_spectrum(double beta, double length, int points) {
  if (points < 1 || !(length > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need a positive length and at least one node");
  }
  const double h = length / (points + 1);
  if (!(h * std::abs(beta) < 2.0)) {
    throw Error(ErrorCode::OutOfRange, "grid too coarse: h*|beta| must be below 2");
  }
  const double lower = 1.0 / (h * h) - beta / (2.0 * h);
  const double upper = 1.0 / (h * h) + beta / (2.0 * h);
  // Diagonal similarity turns the tridiagonal (lower, −2/h², upper) into a
  // symmetric one with off-diagonal √(lower·upper).
  std::vector<double> diag(points, -2.0 / (h * h));
  std::vector<double> off(points > 1 ? points - 1 : 1, std::sqrt(lower * upper));
  const lapack_int info = LAPACKE_dsterf(points, diag.data(), off.data());
  if (info != 0) {
    throw Error(ErrorCode::OutOfRange, "dsterf failed with info " + std::to_string(info));
  }
  return diag;
}

double excess_over_region(const ParabolicRegion& region, const std::vector<double>& points) {
  double worst = 0.0;
  for (double x : points) {
    if (in_region(region, Complex(x, 0.0), 0.0)) continue;
    worst = std::max(worst, dist_to_parabola(region.k, x + region.omega));
  }
  return worst;
}

}  // namespace rellich
