#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <utility>

namespace rellich {

using Complex = std::complex<double>;

/// Default tolerance for equality tests in decision logic.
inline constexpr double kDefaultTolerance = 1e-9;

/// Coefficients of L = Δ + c·x/|x|²·∇ − b/|x|² in dimension N.
struct OperatorParams {
  int N = 2;
  double c = 0.0;
  double b = 0.0;

  /// Validating constructor; rejects N < 2.
  static OperatorParams make(int N, double c, double b);

  double discriminant() const;

  friend bool operator==(const OperatorParams&, const OperatorParams&) = default;
};

/// Lebesgue exponent p ∈ [1, ∞]. Infinity is a distinct state, never a large
/// float; every accessor returns the analytic limit at p = ∞.
class ExtendedIndex {
 public:
  static ExtendedIndex finite(double p);
  static ExtendedIndex infinity() { return ExtendedIndex(); }
  /// Accepts "inf", "infinity", "∞" or a decimal number ≥ 1.
  static ExtendedIndex parse(std::string_view text);

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  bool is_one() const { return value_ && *value_ == 1.0; }
  /// Strictly between 1 and ∞.
  bool is_interior() const { return value_ && *value_ > 1.0; }

  /// Finite value; throws for p = ∞.
  double value() const;
  /// 1/p, with 1/∞ = 0.
  double reciprocal() const { return value_ ? 1.0 / *value_ : 0.0; }
  /// 1/p′ = 1 − 1/p.
  double conjugate_reciprocal() const { return 1.0 - reciprocal(); }
  /// p′ with 1′ = ∞ and ∞′ = 1.
  ExtendedIndex conjugate() const;

  std::string to_string() const;

  friend bool operator==(const ExtendedIndex&, const ExtendedIndex&) = default;

 private:
  ExtendedIndex() = default;
  explicit ExtendedIndex(double p) : value_(p) {}

  std::optional<double> value_;
};

double discriminant(const OperatorParams& params);

/// λ_n = n(N + n − 2), eigenvalue of −Δ on the sphere for degree-n harmonics.
double harmonic_eigenvalue(int N, int n);

/// Square root with nonnegative real part; for negative reals returns +i√|z|.
Complex sqrt_nonneg_re(Complex z);

/// Re √(D + λ_n), zero when D + λ_n ≤ 0.
double real_root_gap(const OperatorParams& params, int n);

/// Roots (s₁ⁿ, s₂ⁿ) = (N−2+c)/2 ∓ √(D+λ_n) of the indicial equation of L on
/// degree-n harmonics.
std::pair<Complex, Complex> indicial_roots(const OperatorParams& params, int n);

/// N(1/2 − 1/p) + 1 + c/2, the centre of every critical-exponent pair.
double base_exponent(const OperatorParams& params, ExtendedIndex p);

/// (α_n^−, α_n^+) = base ∓ Re √(D + λ_n).
std::pair<double, double> critical_exponents(const OperatorParams& params,
                                             ExtendedIndex p, int n);

/// γ_p(α, c) = (N/p − 2 + α)(N/p′ − α + c).
double gamma_constant(int N, ExtendedIndex p, double alpha, double c);

/// ω_p = (N/p²)[p(N − 2 + c) − N]; ω_∞ = 0, ω_1 = (c − 2)N.
double omega_shift(int N, ExtendedIndex p, double c);

/// μ = b − (2 − α)(N − α + c), the spectral parameter of the reduced problem.
double mu_shift(const OperatorParams& params, double alpha);

/// Coefficients of the auxiliary operator |x|²Δ + (c + 4 − 2α)x·∇ obtained
/// from the substitution v = |x|^{α−2}u.
OperatorParams shifted_drift(const OperatorParams& params, double alpha);

struct KelvinImage {
  OperatorParams params;
  double alpha;
};

/// Image of (L, α) under u(x) = |x|^{2−N} v(x/|x|²); an involution that
/// preserves the discriminant.
KelvinImage kelvin_transform(const OperatorParams& params, ExtendedIndex p,
                             double alpha);

}  // namespace rellich
