#include "rellich/green.hpp"

#include <algorithm>
#include <cmath>

#include "rellich/error.hpp"

namespace rellich {
namespace {

void require_positive_distance(const GreenBoundInput& in) {
  if (!(in.d > 0.0)) throw Error(ErrorCode::InvalidArgument, "G0 is singular at d = 0");
}

}  // namespace

GreenBoundInput GreenBoundInput::make(double r1, double r2, double d, double tol) {
  if (!(r1 > 0.0) || !(r2 > 0.0) || !(d >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need r1 > 0, r2 > 0 and d >= 0");
  }
  const double scale = tol * std::max({1.0, r1, r2});
  if (d < std::abs(r1 - r2) - scale || d > r1 + r2 + scale) {
    throw Error(ErrorCode::InvalidArgument, "(r1, r2, d) violates the triangle inequality");
  }
  return {r1, r2, d};
}

double g0_positive_discriminant(const OperatorParams& params, const GreenBoundInput& in,
                                double tol) {
  const double D = params.discriminant();
  if (D <= tol) throw Error(ErrorCode::DiscriminantZero, "this kernel needs D > 0");
  require_positive_distance(in);
  const double prefactor = std::pow(in.r1, -params.c / 2.0) * std::pow(in.r2, params.c / 2.0);
  const double root = std::sqrt(D);
  if (params.N > 2) {
    const double ratio = std::min(1.0, in.r1 * in.r2 / (in.d * in.d));
    return prefactor * std::pow(in.d, 2.0 - params.N) *
           std::pow(ratio, root - (params.N - 2) / 2.0);
  }
  const double q = in.d * in.d / (in.r1 * in.r2);
  return prefactor * (q >= 1.0 ? std::pow(q, -root) : 1.0 - std::log(q));
}

double g0_zero_discriminant(const OperatorParams& params, const GreenBoundInput& in,
                            double decay_k, double tol) {
  if (std::abs(params.discriminant()) > tol) {
    throw Error(ErrorCode::DiscriminantNonzero, "this kernel needs D = 0");
  }
  if (!(decay_k > 0.0)) throw Error(ErrorCode::InvalidArgument, "decay rate must be positive");
  require_positive_distance(in);
  const double s1 = (params.N - 2 + params.c) / 2.0;
  const double prefactor = std::pow(in.r1, -s1) * std::pow(in.r2, params.c - s1);
  if (params.N > 2) {
    return prefactor * std::exp(-decay_k * in.d) * std::pow(std::min(1.0, in.d), 2.0 - params.N);
  }
  return prefactor * (in.d >= 1.0 ? std::exp(-decay_k * in.d) : 1.0 - std::log(in.d));
}

double heat_kernel_bound(const OperatorParams& params, HeatVariant variant, double eps, double t,
                         const GreenBoundInput& in, double lambda1, double tol) {
  if (!(eps > 0.0) || !(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "need eps > 0 and t > 0");
  const double D = params.discriminant();
  const bool positive = D > tol;
  const bool zero = std::abs(D) <= tol;
  if ((variant == HeatVariant::PositiveD && !positive) || (variant == HeatVariant::ZeroD && !zero)) {
    throw Error(ErrorCode::VariantMismatch, "heat kernel variant does not match the sign of D");
  }
  const int N = params.N;
  const double gaussian = std::exp(-in.d * in.d / ((4.0 + eps) * t));
  const double scale = std::pow(t, -N / 2.0);
  if (variant == HeatVariant::PositiveD) {
    const double st = std::sqrt(t);
    const double cut = std::min(in.r1 / st, 1.0) * std::min(in.r2 / st, 1.0);
    return scale * std::pow(in.r1, -params.c / 2.0) * std::pow(in.r2, params.c / 2.0) *
           std::pow(cut, -N / 2.0 + 1.0 + std::sqrt(D)) * gaussian;
  }
  if (!(lambda1 > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda1 must be positive");
  const double s1 = (N - 2 + params.c) / 2.0;
  return scale * std::exp(-lambda1 * t / 3.0) * std::pow(in.r1, -s1) *
         std::pow(in.r2, params.c - s1) * gaussian;
}

double green_tail_exponent(const OperatorParams& params, ExtendedIndex p, double alpha) {
  const double D = params.discriminant();
  if (!(D > 0.0) || !p.is_interior() || p.is_infinite()) {
    throw Error(ErrorCode::PreconditionViolated, "tail test needs D > 0 and 1 < p < inf");
  }
  const double conj = 1.0 / p.conjugate_reciprocal();
  return (std::sqrt(D) - (params.N - 2) / 2.0 + params.c / 2.0 - alpha) * conj;
}

bool green_tail_integrable(const OperatorParams& params, ExtendedIndex p, double alpha) {
  // ∫_0^1 r^{e} r^{N−1} dr < ∞ ⇔ e > −N.
  return green_tail_exponent(params, p, alpha) > -params.N;
}

}  // namespace rellich
