#include "rellich/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rellich/error.hpp"

namespace rellich {
namespace {

double relative_error(const Estimate& e) {
  return e.value != 0.0 ? std::abs(e.error / e.value) : std::abs(e.error);
}

RatioReport make_ratio(const Estimate& numerator, const Estimate& denominator) {
  if (!(denominator.value > 0.0)) {
    throw Error(ErrorCode::NonFiniteIntegrand, "ratio denominator vanishes");
  }
  const double ratio = numerator.value / denominator.value;
  return {numerator.value, denominator.value, ratio,
          std::abs(ratio) * (relative_error(numerator) + relative_error(denominator))};
}

}  // namespace

Profile1D polynomial_bump(double a, double b) {
  if (!(b > a)) throw Error(ErrorCode::InvalidArgument, "bump needs a < b");
  const double mid = 0.5 * (a + b);
  const double k = 2.0 / (b - a);
  const auto t_of = [mid, k](double s) { return k * (s - mid); };
  Profile1D v;
  v.value = [t_of](double s) {
    const double t = t_of(s);
    if (std::abs(t) >= 1.0) return 0.0;
    const double q = 1.0 - t * t;
    return q * q * q;
  };
  v.d1 = [t_of, k](double s) {
    const double t = t_of(s);
    if (std::abs(t) >= 1.0) return 0.0;
    const double q = 1.0 - t * t;
    return -6.0 * t * q * q * k;
  };
  v.d2 = [t_of, k](double s) {
    const double t = t_of(s);
    if (std::abs(t) >= 1.0) return 0.0;
    const double q = 1.0 - t * t;
    return q * (30.0 * t * t - 6.0) * k * k;
  };
  v.a = a;
  v.b = b;
  v.tag = "bump[" + std::to_string(a) + "," + std::to_string(b) + "]";
  return v;
}

Profile1D plateau_profile(double T) {
  if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "plateau width must be positive");
  Profile1D v = polynomial_bump(-T, T);
  v.tag = "plateau(T=" + std::to_string(T) + ")";
  return v;
}

Profile1D modulated_bump(double a, double b, double amplitude, double frequency) {
  const Profile1D psi = polynomial_bump(a, b);
  const auto m = [amplitude, frequency](double s) {
    return 1.0 + amplitude * std::sin(frequency * s);
  };
  const auto m1 = [amplitude, frequency](double s) {
    return amplitude * frequency * std::cos(frequency * s);
  };
  const auto m2 = [amplitude, frequency](double s) {
    return -amplitude * frequency * frequency * std::sin(frequency * s);
  };
  Profile1D v;
  v.value = [psi, m](double s) { return psi.value(s) * m(s); };
  v.d1 = [psi, m, m1](double s) { return psi.d1(s) * m(s) + psi.value(s) * m1(s); };
  v.d2 = [psi, m, m1, m2](double s) {
    return psi.d2(s) * m(s) + 2.0 * psi.d1(s) * m1(s) + psi.value(s) * m2(s);
  };
  v.a = a;
  v.b = b;
  v.tag = psi.tag + "*(1+" + std::to_string(amplitude) + "sin(" + std::to_string(frequency) + "s))";
  return v;
}

Profile1D translated(const Profile1D& v, double shift) {
  Profile1D w;
  w.value = [v, shift](double s) { return v.value(s - shift); };
  w.d1 = [v, shift](double s) { return v.d1(s - shift); };
  w.d2 = [v, shift](double s) { return v.d2(s - shift); };
  w.a = v.a + shift;
  w.b = v.b + shift;
  w.tag = v.tag + "+" + std::to_string(shift);
  return w;
}

Profile1D dilated(const Profile1D& v, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "dilation must be positive");
  Profile1D w;
  w.value = [v, scale](double s) { return v.value(s / scale); };
  w.d1 = [v, scale](double s) { return v.d1(s / scale) / scale; };
  w.d2 = [v, scale](double s) { return v.d2(s / scale) / (scale * scale); };
  w.a = v.a * scale;
  w.b = v.b * scale;
  w.tag = v.tag + "/" + std::to_string(scale);
  return w;
}

Profile1D amplified(const Profile1D& v, double factor) {
  Profile1D w;
  w.value = [v, factor](double s) { return factor * v.value(s); };
  w.d1 = [v, factor](double s) { return factor * v.d1(s); };
  w.d2 = [v, factor](double s) { return factor * v.d2(s); };
  w.a = v.a;
  w.b = v.b;
  w.tag = std::to_string(factor) + "*" + v.tag;
  return w;
}

Profile1D exp_composed(const Profile1D& phi, double epsilon) {
  if (epsilon == 0.0 || !(phi.a > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need epsilon != 0 and phi supported in (0, inf)");
  }
  Profile1D v;
  v.value = [phi, epsilon](double s) { return phi.value(std::exp(-epsilon * s)); };
  v.d1 = [phi, epsilon](double s) {
    const double t = std::exp(-epsilon * s);
    return -epsilon * t * phi.d1(t);
  };
  v.d2 = [phi, epsilon](double s) {
    const double t = std::exp(-epsilon * s);
    return epsilon * epsilon * t * (phi.d1(t) + t * phi.d2(t));
  };
  const double s1 = -std::log(phi.b) / epsilon;
  const double s2 = -std::log(phi.a) / epsilon;
  v.a = std::min(s1, s2);
  v.b = std::max(s1, s2);
  v.tag = phi.tag + "(exp(-" + std::to_string(epsilon) + "s))";
  return v;
}

ReducedCoefficients reduced_coefficients(const OperatorParams& params, ExtendedIndex p,
                                         double alpha, int n) {
  const double np = params.N * p.reciprocal();
  ReducedCoefficients out;
  out.beta = 2.0 * alpha - 2.0 - params.N + 2.0 * np - params.c;
  out.lambda_red = gamma_constant(params.N, p, alpha, params.c) + params.b +
                   harmonic_eigenvalue(params.N, n);
  out.n = n;
  out.alpha = alpha;
  return out;
}

RatioReport rellich_ratio_separable(const OperatorParams& params, ExtendedIndex p,
                                    double alpha, int n, const Profile1D& v,
                                    const QuadratureSpec& quad) {
  const ReducedCoefficients rc = reduced_coefficients(params, p, alpha, n);
  const auto image = [&v, rc](double s) {
    return v.d2(s) + rc.beta * v.d1(s) - rc.lambda_red * v.value(s);
  };
  return make_ratio(lp_norm_estimate(image, v.a, v.b, p, quad),
                    lp_norm_estimate(v.value, v.a, v.b, p, quad));
}

const char* to_string(CriticalBranch branch) {
  return branch == CriticalBranch::Minus ? "minus" : "plus";
}

RatioReport counterexample_ratio(const OperatorParams& params, ExtendedIndex p, int n,
                                 CriticalBranch branch, double epsilon,
                                 const Profile1D& phi, const QuadratureSpec& quad,
                                 double tol) {
  const double radicand = params.discriminant() + harmonic_eigenvalue(params.N, n);
  if (radicand < -tol) {
    throw Error(ErrorCode::UnsupportedRegime,
                "the counterexample family needs real indicial roots (D + lambda_n >= 0)");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::PreconditionViolated, "epsilon must lie in (0, 1]");
  }
  const double slack = 1e-12;
  if (phi.a < 0.25 - slack || phi.b > 0.5 + slack) {
    throw Error(ErrorCode::PreconditionViolated, "phi must be supported in [1/4, 1/2]");
  }
  const double gap = real_root_gap(params, n);
  const double K = branch == CriticalBranch::Minus ? 2.0 * gap : -2.0 * gap;
  if (p.is_infinite()) {
    const auto top = [&phi, K, epsilon](double t) {
      return epsilon * t * t * phi.d2(t) + (K + epsilon) * t * phi.d1(t);
    };
    const double num = epsilon * sup_abs(top, phi.a, phi.b, quad);
    return make_ratio({num, 0.0}, {sup_abs(phi.value, phi.a, phi.b, quad), 0.0});
  }
  const double q = p.value();
  const Estimate I1 = integrate(
      [&phi, K, epsilon, q](double t) {
        const double g = epsilon * t * phi.d2(t) + (K + epsilon) * phi.d1(t);
        return std::pow(t, q - 1.0) * std::pow(std::abs(g), q);
      },
      phi.a, phi.b, quad);
  const Estimate I0 = integrate(
      [&phi, q](double t) { return std::pow(std::abs(phi.value(t)), q) / t; }, phi.a, phi.b,
      quad);
  const double num = epsilon * std::pow(I1.value, 1.0 / q);
  const double den = std::pow(I0.value, 1.0 / q);
  return make_ratio({num, num * relative_error(I1) / q}, {den, den * relative_error(I0) / q});
}

BoundaryReport boundary_counterexample(const OperatorParams& params, ExtendedIndex p,
                                       double alpha, int grid, int n, double tol) {
  const double lambda_n = harmonic_eigenvalue(params.N, n);
  const double radicand = params.discriminant() + lambda_n;
  if (radicand < -tol) {
    throw Error(ErrorCode::UnsupportedRegime,
                "the boundary counterexample needs real indicial roots");
  }
  if (grid < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least two points");
  const auto [r1, r2] = indicial_roots(params, n);
  const double s1 = r1.real();
  const double s2 = r2.real();
  const bool double_root = std::abs(s2 - s1) <= tol;
  const double drift = params.N - 1.0 + params.c;
  const double potential = params.b + lambda_n;

  // Returns (f, r f′, r² f″) for f = r^{−s}, or r^{−s} log r.
  struct Jet {
    double f, rf1, r2f2;
  };
  const auto power = [](double r, double s) -> Jet {
    const double f = std::pow(r, -s);
    return {f, -s * f, s * (s + 1.0) * f};
  };
  const auto power_log = [](double r, double s) -> Jet {
    const double f = std::pow(r, -s);
    const double L = std::log(r);
    return {f * L, f * (1.0 - s * L), f * (-(s + 1.0) * (1.0 - s * L) - s)};
  };

  BoundaryReport out;
  const double lo = std::log(1e-6);
  for (int i = 0; i < grid; ++i) {
    const double r = std::exp(lo + (0.0 - lo) * i / (grid - 1));
    Jet u;
    if (double_root) {
      u = power_log(r, s1);
    } else {
      const Jet a = power(r, s2);
      const Jet b = power(r, s1);
      u = {a.f - b.f, a.rf1 - b.rf1, a.r2f2 - b.r2f2};
    }
    const double residual = u.r2f2 + drift * u.rf1 - potential * u.f;
    const double scale = std::abs(u.r2f2) + std::abs(drift * u.rf1) + std::abs(potential * u.f);
    if (scale > 0.0) out.residual_sup = std::max(out.residual_sup, std::abs(residual) / scale);
  }
  // r^{(α−2−s)p} r^{N−1} is integrable near 0 iff α − 2 − s > −N/p; at p = ∞
  // boundedness needs α − 2 − s ≥ 0, strictly when a logarithm is present.
  const double np = params.N * p.reciprocal();
  const double exponent = alpha - 2.0 - std::max(s1, s2);
  if (p.is_infinite() && !double_root) {
    out.norm_finite = exponent >= -tol;
  } else {
    out.norm_finite = exponent > -np + tol;
  }
  out.active = alpha > critical_exponents(params, p, n).second + tol;
  return out;
}

}  // namespace rellich
