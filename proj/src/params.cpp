#include "rellich/params.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "rellich/error.hpp"

namespace rellich {

OperatorParams OperatorParams::make(int N, double c, double b) {
  if (N < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "dimension N must be at least 2, got " + std::to_string(N));
  }
  if (!std::isfinite(c) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidArgument, "coefficients c and b must be finite");
  }
  return OperatorParams{N, c, b};
}

double OperatorParams::discriminant() const {
  const double h = (N - 2 + c) / 2.0;
  return b + h * h;
}

ExtendedIndex ExtendedIndex::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::InvalidArgument,
                "Lebesgue exponent must satisfy 1 <= p < inf");
  }
  return ExtendedIndex(p);
}

ExtendedIndex ExtendedIndex::parse(std::string_view text) {
  std::string lowered;
  for (char ch : text) lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lowered == "inf" || lowered == "infinity" || lowered == "\xe2\x88\x9e") {
    return infinity();
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(lowered, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse exponent '" + std::string(text) + "'");
  }
  if (used != lowered.size()) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse exponent '" + std::string(text) + "'");
  }
  if (std::isinf(value)) return infinity();
  return finite(value);
}

double ExtendedIndex::value() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "p = inf has no finite value");
  return *value_;
}

ExtendedIndex ExtendedIndex::conjugate() const {
  if (!value_) return finite(1.0);
  if (*value_ == 1.0) return infinity();
  return finite(*value_ / (*value_ - 1.0));
}

std::string ExtendedIndex::to_string() const {
  if (!value_) return "inf";
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << *value_;
  return os.str();
}

double discriminant(const OperatorParams& params) { return params.discriminant(); }

double harmonic_eigenvalue(int N, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "harmonic degree must be nonnegative");
  if (N < 2) throw Error(ErrorCode::InvalidArgument, "dimension N must be at least 2");
  return static_cast<double>(n) * static_cast<double>(N + n - 2);
}

Complex sqrt_nonneg_re(Complex z) {
  if (z.imag() == 0.0) {
    // std::sqrt on (-x, -0.0) lands on the lower branch; pin Im >= 0.
    if (z.real() >= 0.0) return {std::sqrt(z.real()), 0.0};
    return {0.0, std::sqrt(-z.real())};
  }
  Complex w = std::sqrt(z);
  if (w.real() < 0.0) w = -w;
  return w;
}

double real_root_gap(const OperatorParams& params, int n) {
  const double radicand = params.discriminant() + harmonic_eigenvalue(params.N, n);
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

std::pair<Complex, Complex> indicial_roots(const OperatorParams& params, int n) {
  const double centre = (params.N - 2 + params.c) / 2.0;
  const Complex root = sqrt_nonneg_re(params.discriminant() + harmonic_eigenvalue(params.N, n));
  return {centre - root, centre + root};
}

double base_exponent(const OperatorParams& params, ExtendedIndex p) {
  return params.N * (0.5 - p.reciprocal()) + 1.0 + params.c / 2.0;
}

std::pair<double, double> critical_exponents(const OperatorParams& params,
                                             ExtendedIndex p, int n) {
  const double base = base_exponent(params, p);
  const double gap = real_root_gap(params, n);
  return {base - gap, base + gap};
}

double gamma_constant(int N, ExtendedIndex p, double alpha, double c) {
  return (N * p.reciprocal() - 2.0 + alpha) * (N * p.conjugate_reciprocal() - alpha + c);
}

double omega_shift(int N, ExtendedIndex p, double c) {
  // (N/p²)[p(N−2+c) − N] = (N/p)(N−2+c) − (N/p)², finite at p = ∞.
  const double np = N * p.reciprocal();
  return np * (N - 2 + c) - np * np;
}

double mu_shift(const OperatorParams& params, double alpha) {
  return params.b - (2.0 - alpha) * (params.N - alpha + params.c);
}

OperatorParams shifted_drift(const OperatorParams& params, double alpha) {
  return OperatorParams{params.N, params.c + 4.0 - 2.0 * alpha, params.b};
}

KelvinImage kelvin_transform(const OperatorParams& params, ExtendedIndex p,
                             double alpha) {
  const int N = params.N;
  OperatorParams image{N, -params.c, params.b + (N - 2) * params.c};
  return {image, -alpha + N + 2.0 - 2.0 * N * p.reciprocal()};
}

}  // namespace rellich
