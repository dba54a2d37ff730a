#include "rellich/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "rellich/error.hpp"

namespace rellich {
namespace {

constexpr double kQuadratureSlack = 1e-6;
constexpr double kLimitSlack = 1e-3;

double relative_margin(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale > 0.0 ? (lhs - rhs) / scale : 0.0;
}

double scaled_margin(double lhs, double rhs) {
  return (lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

void finalize(VerificationReport& report) {
  report.min_margin = std::numeric_limits<double>::infinity();
  for (const Sample& s : report.samples) report.min_margin = std::min(report.min_margin, s.margin);
  if (report.samples.empty()) report.min_margin = 0.0;
  report.passed = !report.samples.empty() && report.min_margin >= -report.tolerance;
}

std::string describe(const std::string& head, double value) {
  std::ostringstream out;
  out << head << value;
  return out.str();
}

// Uniform in [0, 1) from the top 53 bits, identical on every platform.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool ball_like(DomainKind domain) {
  return domain == DomainKind::UnitBall || domain == DomainKind::BoundedSmooth;
}

double pth_power_integral(const RealFunction& f, double a, double b, double p,
                          const QuadratureSpec& quad) {
  return integrate([&f, p](double s) { return std::pow(std::abs(f(s)), p); }, a, b, quad).value;
}

Profile1D standard_phi() { return polynomial_bump(0.25, 0.5); }

// Adds decay and slope samples for the ε-family of mode (n, branch).
void check_counterexample_family(VerificationReport& report, const OperatorParams& params,
                                 ExtendedIndex p, int n, CriticalBranch branch,
                                 const QuadratureSpec& quad, double tol) {
  const double radicand = params.discriminant() + harmonic_eigenvalue(params.N, n);
  if (radicand < -tol) {
    throw Error(ErrorCode::UnsupportedRegime,
                "failure at a complex-root critical exponent has no explicit test family");
  }
  const Profile1D phi = standard_phi();
  std::vector<double> ratios;
  for (double eps : kEpsilonFamily) {
    ratios.push_back(counterexample_ratio(params, p, n, branch, eps, phi, quad, tol).ratio);
  }
  const std::string mode = "n=" + std::to_string(n) + " " + to_string(branch);
  for (std::size_t k = 1; k < ratios.size(); ++k) {
    report.samples.push_back({mode + describe(" decay eps=", kEpsilonFamily[k]), ratios[k - 1],
                              ratios[k], relative_margin(ratios[k - 1], ratios[k])});
  }
  // The ratio is O(ε) when the roots split and O(ε²) when they coincide.
  const std::vector<double> tail_eps(kEpsilonFamily.end() - 3, kEpsilonFamily.end());
  const std::vector<double> tail_ratio(ratios.end() - 3, ratios.end());
  const double slope = loglog_slope(tail_eps, tail_ratio);
  report.samples.push_back({mode + " slope lower", slope, 0.9, scaled_margin(slope, 0.9)});
  report.samples.push_back({mode + " slope upper", 2.1, slope, scaled_margin(2.1, slope)});
  if (!report.metrics.count("fitted_slope")) {
    report.metrics["fitted_slope"] = slope;
    report.metrics["smallest_eps_ratio"] = ratios.back();
  }
}

void check_boundary_obstruction(VerificationReport& report, const OperatorParams& params,
                                ExtendedIndex p, double alpha, const FailingMode& mode,
                                const QuadratureSpec& quad, double tol) {
  if (std::abs(alpha - mode.critical_alpha) <= tol) {
    check_counterexample_family(report, params, p, mode.n, CriticalBranch::Plus, quad, tol);
    return;
  }
  const BoundaryReport b = boundary_counterexample(params, p, alpha, 2000, mode.n, tol);
  const std::string head = "n=" + std::to_string(mode.n) + " boundary";
  report.samples.push_back({head + " residual", 1e-8, b.residual_sup, scaled_margin(1e-8, b.residual_sup)});
  report.samples.push_back({head + " norm_finite", b.norm_finite ? 1.0 : 0.0, 1.0,
                            b.norm_finite ? 0.0 : -1.0});
  report.samples.push_back({head + " active", b.active ? 1.0 : 0.0, 1.0, b.active ? 0.0 : -1.0});
  report.metrics["boundary_residual"] = b.residual_sup;
}

}  // namespace

Corpus default_corpus(std::uint64_t seed, int count, const HarmonicSet& J, double lo,
                      double span) {
  std::vector<int> degrees;
  for (int n = 0; degrees.size() < 3 && n < 64; ++n) {
    if (J.contains(n)) degrees.push_back(n);
  }
  if (degrees.empty()) throw Error(ErrorCode::InvalidArgument, "harmonic set has no small members");
  std::mt19937_64 rng(seed);
  Corpus corpus;
  for (int i = 0; i < count; ++i) {
    const double length = 0.5 + 5.5 * uniform(rng);
    const double start = lo + (span - length) * uniform(rng);
    const int n = degrees[static_cast<std::size_t>(uniform(rng) * degrees.size())];
    Profile1D profile = polynomial_bump(start, start + length);
    if (i % 2 == 1) {
      const double amplitude = 0.1 + 0.4 * uniform(rng);
      const double frequency = 1.0 + 4.0 * uniform(rng);
      profile = modulated_bump(start, start + length, amplitude, frequency);
    }
    corpus.push_back({n, std::move(profile)});
  }
  return corpus;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "slope fit needs two or more paired points");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

VerificationReport verify_rellich(const OperatorParams& params, ExtendedIndex p, double alpha,
                                  DomainKind domain, const HarmonicSet& J, const Corpus& corpus,
                                  const QuadratureSpec& quad, double tol) {
  for (const CorpusEntry& entry : corpus) {
    if (!J.contains(entry.n)) {
      throw Error(ErrorCode::CorpusOutsideSubspace,
                  "corpus degree " + std::to_string(entry.n) + " is not in J = " + J.to_string());
    }
  }
  const Verdict verdict = decide(params, p, alpha, domain, J, tol);
  if (domain == DomainKind::ExteriorBall || domain == DomainKind::ExteriorSmooth) {
    // Separable functions outside the ball are Kelvin images of functions in it.
    const KelvinImage image = kelvin_transform(params, p, alpha);
    VerificationReport report =
        verify_rellich(image.params, p, image.alpha, DomainKind::UnitBall, J, corpus, quad, tol);
    report.claim = "Rellich inequality on the exterior domain via its Kelvin image";
    return report;
  }
  if (domain != DomainKind::WholeSpace && !ball_like(domain)) {
    throw Error(ErrorCode::InvalidArgument, "unsupported domain");
  }

  VerificationReport report;
  report.tolerance = kLimitSlack;
  if (verdict.holds) {
    if (ball_like(domain)) {
      for (const CorpusEntry& entry : corpus) {
        if (entry.profile.a < 0.0) {
          throw Error(ErrorCode::PreconditionViolated,
                      "ball profiles must be supported in s = -log r > 0");
        }
      }
    }
    const double C = verdict.best_constant.value_or(0.0);
    report.claim = verdict.best_constant ? "ratio >= best constant" : "ratio > 0";
    if (verdict.best_constant) report.metrics["best_constant"] = C;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (const CorpusEntry& entry : corpus) {
      const RatioReport r = rellich_ratio_separable(params, p, alpha, entry.n, entry.profile, quad);
      min_ratio = std::min(min_ratio, r.ratio);
      report.samples.push_back({"n=" + std::to_string(entry.n) + " " + entry.profile.tag, r.ratio,
                                C, scaled_margin(r.ratio, C)});
    }
    report.metrics["min_ratio"] = min_ratio;
  } else {
    report.claim = "counterexample ratios decay to zero";
    for (const FailingMode& mode : verdict.failing_modes) {
      switch (mode.branch) {
        case Branch::Minus:
          check_counterexample_family(report, params, p, mode.n, CriticalBranch::Minus, quad, tol);
          break;
        case Branch::Plus:
          check_counterexample_family(report, params, p, mode.n, CriticalBranch::Plus, quad, tol);
          break;
        case Branch::BoundaryObstruction:
          check_boundary_obstruction(report, params, p, alpha, mode, quad, tol);
          break;
      }
    }
  }
  finalize(report);
  return report;
}

VerificationReport verify_hardy(int N, ExtendedIndex p, double beta, const Profile1D& w,
                                double a, const QuadratureSpec& quad) {
  if (!p.is_interior() || p.is_infinite()) {
    throw Error(ErrorCode::PreconditionViolated, "Hardy inequality needs 1 < p < inf");
  }
  const double weight = N - 2.0 + beta;
  if (weight == 0.0) throw Error(ErrorCode::DegenerateWeight, "N - 2 + beta = 0");
  const double q = p.value();
  const double constant = (weight / q) * (weight / q);
  const double e = beta + N - 2.0 - a * q;
  const Estimate gradient = integrate(
      [&w, e, a, q](double t) {
        const double u = w.value(t);
        if (u == 0.0) return 0.0;
        const double du = w.d1(t) - a * u;
        return std::exp(e * t) * du * du * std::pow(std::abs(u), q - 2.0);
      },
      w.a, w.b, quad);
  const Estimate mass = integrate(
      [&w, e, q](double t) { return std::exp(e * t) * std::pow(std::abs(w.value(t)), q); }, w.a,
      w.b, quad);
  VerificationReport report;
  report.claim = "weighted Hardy inequality";
  report.tolerance = kQuadratureSlack;
  const double rhs = constant * mass.value;
  report.samples.push_back({w.tag, gradient.value, rhs, relative_margin(gradient.value, rhs)});
  report.metrics["constant"] = constant;
  report.metrics["ratio"] = gradient.value / mass.value;
  finalize(report);
  return report;
}

GreenReconstruction oned_green_reconstruct(double beta, const Profile1D& v, int grid,
                                           const QuadratureSpec& quad) {
  if (beta == 0.0) throw Error(ErrorCode::BetaZero, "the representation needs beta != 0");
  if (v.a < 0.0) throw Error(ErrorCode::PreconditionViolated, "profile must live in (0, inf)");
  const auto f = [&v, beta](double s) { return v.d2(s) + beta * v.d1(s); };
  const auto weighted = [&f, beta](double s) { return std::exp(beta * s) * f(s); };
  GreenReconstruction out;
  const double plain_abs = integrate([&f](double s) { return std::abs(f(s)); }, v.a, v.b, quad).value;
  const double weighted_abs =
      integrate([&weighted](double s) { return std::abs(weighted(s)); }, v.a, v.b, quad).value;
  out.orthogonality_plain = std::abs(integrate(f, v.a, v.b, quad).value) / plain_abs;
  out.orthogonality_weighted = std::abs(integrate(weighted, v.a, v.b, quad).value) / weighted_abs;

  QuadratureSpec local = quad;
  local.abs_tol = 1e-14 * plain_abs;
  const double right = v.b + 1.0;
  for (int i = 0; i < grid; ++i) {
    const double s = right * i / (grid - 1);
    const double first =
        s > v.a ? integrate([&f, beta, s](double sigma) { return std::exp(-beta * (s - sigma)) * f(sigma); },
                            v.a, std::min(s, v.b), local)
                      .value
                : 0.0;
    const double second = s < v.b ? integrate(f, std::max(s, v.a), v.b, local).value : 0.0;
    const double rebuilt = -(first + second) / beta;
    out.max_error = std::max(out.max_error, std::abs(rebuilt - v.value(s)));
    out.v_sup = std::max(out.v_sup, std::abs(v.value(s)));
  }
  out.v_sup = std::max(out.v_sup, sup_abs(v.value, v.a, v.b, quad));
  return out;
}

double oned_kappa(double beta, ExtendedIndex p, double eps) {
  const double base = beta != 0.0 ? 1.0 : 2.0;
  return p.is_one() ? base + eps : base;
}

double oned_ratio(double beta, ExtendedIndex p, double kappa, double a, const Profile1D& v,
                  const QuadratureSpec& quad) {
  if (v.a < 0.0) throw Error(ErrorCode::PreconditionViolated, "profile must live in (0, inf)");
  const double lo = std::max(a, v.a);
  const double weighted =
      lo < v.b ? lp_norm_1d([&v, kappa](double s) { return v.value(s) / std::pow(s, kappa); }, lo,
                            v.b, p, quad)
               : 0.0;
  const double image =
      lp_norm_1d([&v, beta](double s) { return v.d2(s) + beta * v.d1(s); }, v.a, v.b, p, quad);
  return weighted / image;
}

VerificationReport verify_oned_inequality(double beta, ExtendedIndex p, double a, double eps,
                                          const std::vector<Profile1D>& corpus, double cap,
                                          const QuadratureSpec& quad) {
  const double kappa = oned_kappa(beta, p, eps);
  VerificationReport report;
  report.claim = "one-dimensional weighted ratio stays finite";
  report.tolerance = 0.0;
  double sup = 0.0;
  for (const Profile1D& v : corpus) {
    const double r = oned_ratio(beta, p, kappa, a, v, quad);
    sup = std::max(sup, r);
    const double margin = std::isfinite(r) ? (cap - r) / cap : -1.0;
    report.samples.push_back({v.tag, cap, r, margin});
  }
  report.metrics["kappa"] = kappa;
  report.metrics["empirical_sup"] = sup;
  finalize(report);
  return report;
}

std::vector<double> oned_dilation_sweep(double beta, ExtendedIndex p, double kappa, double a,
                                        const std::vector<double>& M, const QuadratureSpec& quad) {
  std::vector<double> out;
  for (double m : M) out.push_back(oned_ratio(beta, p, kappa, a, polynomial_bump(m, 2.0 * m), quad));
  return out;
}

VerificationReport verify_aux_remainder(double beta, double lambda, ExtendedIndex p,
                                        const Profile1D& v, const QuadratureSpec& quad) {
  if (!p.is_interior() || p.is_infinite()) {
    throw Error(ErrorCode::PreconditionViolated, "the remainder lemma needs 1 < p < inf");
  }
  if (!(lambda > 0.0)) throw Error(ErrorCode::PreconditionViolated, "lambda must be positive");
  if (!(v.a > 0.0)) throw Error(ErrorCode::PreconditionViolated, "profile must live in (0, inf)");
  const double q = p.value();
  const auto gamma = [&v, beta, lambda](double s) {
    return v.d2(s) + beta * v.d1(s) - lambda * v.value(s);
  };
  const double lhs = pth_power_integral(gamma, v.a, v.b, q, quad) -
                     std::pow(lambda, q) * pth_power_integral(v.value, v.a, v.b, q, quad);
  const double weighted =
      integrate([&v, q](double s) { return std::pow(std::abs(v.value(s)), q) / (s * s); }, v.a,
                v.b, quad)
          .value;
  const double constant = std::pow(lambda, q - 1.0) * (q - 1.0) / (q * q);
  VerificationReport report;
  report.claim = "auxiliary remainder inequality";
  report.tolerance = kQuadratureSlack;
  report.samples.push_back({v.tag, lhs, constant * weighted, relative_margin(lhs, constant * weighted)});
  report.metrics["constant"] = constant;
  finalize(report);
  return report;
}

VerificationReport verify_remainder(const OperatorParams& params, ExtendedIndex p, double alpha,
                                    const std::vector<Profile1D>& corpus,
                                    const QuadratureSpec& quad, double tol) {
  if (!p.is_interior() || p.is_infinite()) {
    throw Error(ErrorCode::PreconditionViolated, "the remainder term needs 1 < p < inf");
  }
  const double D = params.discriminant();
  const double base = base_exponent(params, p);
  if (!(D > 0.0) || !(std::abs(alpha - base) < std::sqrt(D) - tol)) {
    throw Error(ErrorCode::PreconditionViolated,
                "alpha must lie strictly inside (base - sqrt(D), base + sqrt(D))");
  }
  const double support_floor = std::log(2.0) - 1e-12;
  for (const Profile1D& v : corpus) {
    if (v.a < support_floor) {
      throw Error(ErrorCode::PreconditionViolated, "profiles must be supported in B_{1/2}");
    }
  }
  const ReducedCoefficients rc = reduced_coefficients(params, p, alpha, 0);
  const double C = rc.lambda_red;
  const double q = p.value();
  const double constant = std::pow(C, q - 1.0) * (q - 1.0) / (q * q);
  VerificationReport report;
  report.claim = "Rellich inequality with logarithmic remainder";
  report.tolerance = kQuadratureSlack;
  for (const Profile1D& v : corpus) {
    const auto gamma = [&v, rc](double s) {
      return v.d2(s) + rc.beta * v.d1(s) - rc.lambda_red * v.value(s);
    };
    const double lhs = pth_power_integral(gamma, v.a, v.b, q, quad) -
                       std::pow(C, q) * pth_power_integral(v.value, v.a, v.b, q, quad);
    const double weighted =
        integrate([&v, q](double s) { return std::pow(std::abs(v.value(s)), q) / (s * s); }, v.a,
                  v.b, quad)
            .value;
    const double rhs = constant * weighted;
    report.samples.push_back({v.tag, lhs, rhs, relative_margin(lhs, rhs)});
  }
  report.metrics["best_constant"] = C;
  report.metrics["remainder_constant"] = constant;
  finalize(report);
  return report;
}

VerificationReport verify_critical_log(const OperatorParams& params, ExtendedIndex p, int n,
                                       CriticalBranch branch, std::optional<double> alpha,
                                       double eps_exp, const QuadratureSpec& quad, double tol) {
  const auto [minus, plus] = critical_exponents(params, p, n);
  const double critical = branch == CriticalBranch::Minus ? minus : plus;
  if (alpha && std::abs(*alpha - critical) > tol) {
    throw Error(ErrorCode::NotCritical, "alpha is not the critical exponent of the chosen mode");
  }
  const double radicand = params.discriminant() + harmonic_eigenvalue(params.N, n);
  double kappa = radicand > tol ? 1.0 : 2.0;
  if (p.is_one()) kappa += eps_exp;
  const ReducedCoefficients rc = reduced_coefficients(params, p, critical, n);
  const Profile1D phi = standard_phi();

  VerificationReport report;
  report.claim = "logarithmic Rellich inequality at a critical exponent";
  report.tolerance = 0.0;
  std::vector<double> weighted_ratios, plain_ratios;
  for (double eps : kEpsilonFamily) {
    const Profile1D v = exp_composed(phi, eps);
    const auto gamma = [&v, rc](double s) {
      return v.d2(s) + rc.beta * v.d1(s) - rc.lambda_red * v.value(s);
    };
    const double image = lp_norm_1d(gamma, v.a, v.b, p, quad);
    const double weighted = lp_norm_1d(
        [&v, kappa](double s) { return v.value(s) / std::pow(s, kappa); }, v.a, v.b, p, quad);
    const double plain = lp_norm_1d(v.value, v.a, v.b, p, quad);
    weighted_ratios.push_back(image / weighted);
    plain_ratios.push_back(image / plain);
    report.samples.push_back({describe("positive eps=", eps), image / weighted, 0.0, image / weighted});
  }
  // A ratio tending to zero would halve (or faster) at each step.
  for (std::size_t k = 1; k < weighted_ratios.size(); ++k) {
    const double floor = 0.5 * weighted_ratios[k - 1];
    report.samples.push_back({describe("stable eps=", kEpsilonFamily[k]), weighted_ratios[k], floor,
                              relative_margin(weighted_ratios[k], floor)});
  }
  report.metrics["alpha"] = critical;
  report.metrics["kappa"] = kappa;
  report.metrics["empirical_infimum"] =
      *std::min_element(weighted_ratios.begin(), weighted_ratios.end());
  report.metrics["unweighted_first"] = plain_ratios.front();
  report.metrics["unweighted_last"] = plain_ratios.back();
  report.metrics["unweighted_slope"] = loglog_slope(kEpsilonFamily, plain_ratios);
  finalize(report);
  return report;
}

VerificationReport verify_dissipativity(const OperatorParams& params, ExtendedIndex p,
                                        double lambda, const Corpus& corpus,
                                        const QuadratureSpec& quad) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::PreconditionViolated, "lambda must be positive");
  const double np = params.N * p.reciprocal();
  const double drift = 2.0 * np + 2.0 - params.N - params.c;
  VerificationReport report;
  report.claim = "dissipativity of A + omega_p";
  report.tolerance = kQuadratureSlack;
  for (const CorpusEntry& entry : corpus) {
    const Profile1D& w = entry.profile;
    const double shift = lambda + harmonic_eigenvalue(params.N, entry.n);
    const auto image = [&w, shift, drift](double s) {
      return shift * w.value(s) - w.d2(s) - drift * w.d1(s);
    };
    const double lhs = lp_norm_1d(image, w.a, w.b, p, quad);
    const double rhs = lambda * lp_norm_1d(w.value, w.a, w.b, p, quad);
    report.samples.push_back({"n=" + std::to_string(entry.n) + " " + w.tag, lhs, rhs,
                              relative_margin(lhs, rhs)});
  }
  report.metrics["omega_p"] = omega_shift(params.N, p, params.c);
  finalize(report);
  return report;
}

}  // namespace rellich
