#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rellich/params.hpp"
#include "rellich/quadrature.hpp"
#include "rellich/radial.hpp"
#include "rellich/validity.hpp"

namespace rellich {

/// One evaluated instance of a claim lhs ≥ rhs.
struct Sample {
  std::string descriptor;
  double lhs = 0.0;
  double rhs = 0.0;
  /// (lhs − rhs) scaled by max(1, |lhs|, |rhs|) unless a claim says otherwise.
  double margin = 0.0;
};

struct VerificationReport {
  std::string claim;
  std::vector<Sample> samples;
  bool passed = false;
  double min_margin = 0.0;
  /// Margins down to −tolerance still pass.
  double tolerance = 0.0;
  std::map<std::string, double> metrics;
};

/// Separable test function u = ρ^{…} v(−log ρ) P_n.
struct CorpusEntry {
  int n = 0;
  Profile1D profile;
};

using Corpus = std::vector<CorpusEntry>;

/// Seeded mix of bumps and modulated bumps on log supports inside
/// [lo, lo + span], degrees drawn from the first members of J (at most 3).
Corpus default_corpus(std::uint64_t seed, int count, const HarmonicSet& J,
                      double lo = 0.5, double span = 12.0);

/// Counterexample ε-family used by the failure and critical checks.
inline const std::vector<double> kEpsilonFamily{0.2, 0.1, 0.05, 0.025};

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Checks ‖|x|^α Lu‖_p ≥ C‖|x|^{α−2}u‖_p on the corpus when the decision
/// holds, and the decay of the relevant counterexample family when it fails.
/// Ball-type domains need profiles supported in s > 0.
VerificationReport verify_rellich(const OperatorParams& params, ExtendedIndex p,
                                  double alpha, DomainKind domain,
                                  const HarmonicSet& J, const Corpus& corpus,
                                  const QuadratureSpec& quad = {},
                                  double tol = kDefaultTolerance);

/// Weighted Hardy inequality ∫|x|^β|∇u|²|u|^{p−2} ≥ ((N−2+β)/p)²∫|x|^{β−2}|u|^p
/// for radial u(r) = r^{−a} w(log r).
VerificationReport verify_hardy(int N, ExtendedIndex p, double beta,
                                const Profile1D& w, double a = 0.0,
                                const QuadratureSpec& quad = {});

struct GreenReconstruction {
  double max_error = 0.0;
  double v_sup = 0.0;
  /// ∫f and ∫e^{βσ}f relative to ∫|f| and ∫e^{βσ}|f|.
  double orthogonality_plain = 0.0;
  double orthogonality_weighted = 0.0;
};

/// Rebuilds v from f = v″ + βv′ with the explicit Green representation.
GreenReconstruction oned_green_reconstruct(double beta, const Profile1D& v,
                                           int grid = 200,
                                           const QuadratureSpec& quad = {});

/// Weight exponent κ of the one-dimensional inequality for (β, p, ε).
double oned_kappa(double beta, ExtendedIndex p, double eps);

/// ‖v/s^κ‖_{L^p(a,∞)} / ‖v″ + βv′‖_{L^p(0,∞)}.
double oned_ratio(double beta, ExtendedIndex p, double kappa, double a,
                  const Profile1D& v, const QuadratureSpec& quad = {});

/// Finiteness of the one-dimensional ratio over the corpus; the empirical
/// supremum is reported as "empirical_sup".
VerificationReport verify_oned_inequality(double beta, ExtendedIndex p, double a,
                                          double eps,
                                          const std::vector<Profile1D>& corpus,
                                          double cap = 1e6,
                                          const QuadratureSpec& quad = {});

/// Ratios of bumps on [M, 2M] for each M; grows with M when κ is too small.
std::vector<double> oned_dilation_sweep(double beta, ExtendedIndex p, double kappa,
                                        double a, const std::vector<double>& M,
                                        const QuadratureSpec& quad = {});

/// ‖Γv‖_p^p − λ^p‖v‖_p^p ≥ λ^{p−1}(p−1)/p² ∫|v|^p/s², Γ = D² + βD − λ.
VerificationReport verify_aux_remainder(double beta, double lambda, ExtendedIndex p,
                                        const Profile1D& v,
                                        const QuadratureSpec& quad = {});

/// Remainder inequality for radial u supported in B_{1/2}; profiles live in
/// s = −log ρ ≥ log 2. Reports the constant as "remainder_constant".
VerificationReport verify_remainder(const OperatorParams& params, ExtendedIndex p,
                                    double alpha,
                                    const std::vector<Profile1D>& corpus,
                                    const QuadratureSpec& quad = {},
                                    double tol = kDefaultTolerance);

/// Logarithmic inequality at α = α_n^± over the counterexample family.
/// `eps_exp` is the extra exponent used at p = 1.
VerificationReport verify_critical_log(const OperatorParams& params, ExtendedIndex p,
                                       int n, CriticalBranch branch,
                                       std::optional<double> alpha = std::nullopt,
                                       double eps_exp = 0.5,
                                       const QuadratureSpec& quad = {},
                                       double tol = kDefaultTolerance);

/// λ‖u‖_p ≤ ‖(λ − A − ω_p)u‖_p for A = |x|²Δ + c x·∇ on u = ρ^{−N/p}w(−log ρ)P_n.
VerificationReport verify_dissipativity(const OperatorParams& params, ExtendedIndex p,
                                        double lambda, const Corpus& corpus,
                                        const QuadratureSpec& quad = {});

}  // namespace rellich
