#include "rellich/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rellich/error.hpp"
#include "rellich/params.hpp"
#include "rellich/radial.hpp"
#include "rellich/spectral.hpp"
#include "rellich/validity.hpp"
#include "rellich/verify.hpp"

namespace rellich::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int N = 5;
  double c = 0.0;
  double b = 0.0;
  std::string p = "2";
  std::optional<double> alpha;
  std::string domain = "rn";
  std::string J = "all";
  std::string format = "json";
  std::optional<double> tol;
  std::uint64_t seed = 0;
  std::string output;
  // spectrum
  std::string lambda = "0";
  std::string interval;
  std::optional<double> beta;
  std::string side = "positive";
  bool sample = false;
  double xi_max = 5.0;
  // counterexample, critical
  int n = 0;
  std::string mode = "minus";
  // verify
  int corpus_size = 8;
  double a = 0.0;
  double eps = 0.5;
  double lambda_value = 1.0;
};

double parse_double(const std::string& text, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError(std::string("cannot parse ") + what + " from '" + text + "'");
  }
  return value;
}

Complex parse_lambda(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text, "lambda"), 0.0};
  return {parse_double(text.substr(0, comma), "lambda"),
          parse_double(text.substr(comma + 1), "lambda")};
}

double resolve_tolerance(const RunConfig& cfg) {
  if (cfg.tol) return *cfg.tol;
  if (const char* env = std::getenv("RELLICH_TOL")) return parse_double(env, "RELLICH_TOL");
  return kDefaultTolerance;
}

OperatorParams params_of(const RunConfig& cfg) {
  try {
    return OperatorParams::make(cfg.N, cfg.c, cfg.b);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

ExtendedIndex index_of(const RunConfig& cfg) {
  try {
    return ExtendedIndex::parse(cfg.p);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

DomainKind domain_of(const RunConfig& cfg) {
  try {
    return parse_domain(cfg.domain);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

HarmonicSet harmonics_of(const RunConfig& cfg) {
  try {
    return HarmonicSet::parse(cfg.J);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

double alpha_of(const RunConfig& cfg) {
  if (!cfg.alpha) throw UsageError("--alpha is required");
  return *cfg.alpha;
}

CriticalBranch branch_of(const std::string& mode) {
  if (mode == "minus") return CriticalBranch::Minus;
  if (mode == "plus") return CriticalBranch::Plus;
  throw UsageError("--mode must be minus or plus here, got '" + mode + "'");
}

std::string number(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

json header(const std::string& command, const RunConfig& cfg) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["params"] = {{"N", cfg.N}, {"c", cfg.c}, {"b", cfg.b}};
  j["p"] = cfg.p;
  return j;
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  file << text;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const OperatorParams params = params_of(cfg);
  const ExtendedIndex p = index_of(cfg);
  const double alpha = alpha_of(cfg);
  const DomainKind domain = domain_of(cfg);
  const HarmonicSet J = harmonics_of(cfg);
  const Verdict verdict = decide(params, p, alpha, domain, J, resolve_tolerance(cfg));

  json j = header("check", cfg);
  j["alpha"] = alpha;
  j["domain"] = to_string(domain);
  j["J"] = J.to_string();
  j["holds"] = verdict.holds;
  json modes = json::array();
  for (const FailingMode& m : verdict.failing_modes) {
    modes.push_back({{"n", m.n}, {"branch", to_string(m.branch)}, {"critical_alpha", m.critical_alpha}});
  }
  j["failing_modes"] = modes;
  j["best_constant"] = optional_number(verdict.best_constant);
  json critical = json::array();
  for (int n = 0; n <= 5; ++n) {
    const auto [minus, plus] = critical_exponents(params, p, n);
    critical.push_back({{"n", n}, {"minus", minus}, {"plus", plus}});
  }
  j["critical_alphas"] = critical;
  j["notes"] = verdict.notes;
  emit(out, j);
  return verdict.holds ? kExitOk : kExitFail;
}

json classification_json(const SpectralClassification& s) {
  return {{"in_spectrum", s.in_spectrum},
          {"in_approx", s.in_approx},
          {"in_point_certified", s.in_point_certified},
          {"in_residual_not_approx", s.in_residual_not_approx}};
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const OperatorParams params = params_of(cfg);
  const ExtendedIndex p = index_of(cfg);
  const double tol = resolve_tolerance(cfg);
  const ParabolicRegion region =
      cfg.beta ? ParabolicRegion{*cfg.beta, 0.0} : radial_region(params, p);
  json j = header("spectrum", cfg);
  j["region"] = {{"k", region.k}, {"omega", region.omega}};

  if (cfg.sample) {
    if (!(cfg.xi_max > 0.0)) throw UsageError("--xi-max must be positive");
    std::ostringstream csv;
    csv << "re,im,tag\n";
    constexpr int kIntervals = 1000;
    for (int i = 0; i <= kIntervals; ++i) {
      const double xi = -cfg.xi_max + 2.0 * cfg.xi_max * i / kIntervals;
      csv << number(-xi * xi - region.omega) << "," << number(xi * region.k) << ",P\n";
    }
    j["sample_rows"] = kIntervals + 1;
    j["xi_max"] = cfg.xi_max;
    if (cfg.output.empty()) {
      out << csv.str();
      return kExitOk;
    }
    write_text(cfg.output, csv.str());
    j["output"] = cfg.output;
    emit(out, j);
    return kExitOk;
  }

  const Complex lambda = parse_lambda(cfg.lambda);
  j["lambda"] = {{"re", lambda.real()}, {"im", lambda.imag()}};
  SpectralClassification result;
  if (cfg.beta) {
    HalfLine side;
    if (cfg.side == "positive") {
      side = HalfLine::Positive;
    } else if (cfg.side == "negative") {
      side = HalfLine::Negative;
    } else {
      throw UsageError("--side must be positive or negative");
    }
    j["operator"] = "halfline-ode";
    j["side"] = cfg.side;
    result = classify_halfline_ode(*cfg.beta, lambda, side, tol);
  } else if (!cfg.interval.empty()) {
    RadialInterval interval;
    if (cfg.interval == "half") {
      interval = RadialInterval::HalfLine;
    } else if (cfg.interval == "unit") {
      interval = RadialInterval::UnitInterval;
    } else {
      throw UsageError("--interval must be half or unit");
    }
    j["operator"] = "radial";
    j["interval"] = cfg.interval;
    result = classify_radial_operator(params, p, interval, lambda, tol);
  } else {
    const DomainKind domain = domain_of(cfg);
    const HarmonicSet J = harmonics_of(cfg);
    j["operator"] = "degenerate";
    j["domain"] = to_string(domain);
    j["J"] = J.to_string();
    result = classify_degenerate_operator(params, p, J, domain, lambda, tol);
  }
  j["classification"] = classification_json(result);
  emit(out, j);
  return kExitOk;
}

int cmd_counterexample(const RunConfig& cfg, std::ostream& out) {
  const OperatorParams params = params_of(cfg);
  const ExtendedIndex p = index_of(cfg);
  const double tol = resolve_tolerance(cfg);
  json j = header("counterexample", cfg);
  j["mode"] = cfg.mode;
  j["n"] = cfg.n;

  if (cfg.mode == "boundary") {
    const double alpha = alpha_of(cfg);
    const BoundaryReport report = boundary_counterexample(params, p, alpha, 2000, cfg.n, tol);
    const bool passed = report.residual_sup < 1e-8;
    j["alpha"] = alpha;
    j["residual_sup"] = report.residual_sup;
    j["norm_finite"] = report.norm_finite;
    j["active"] = report.active;
    j["passed"] = passed;
    emit(out, j);
    return passed ? kExitOk : kExitFail;
  }

  const CriticalBranch branch = branch_of(cfg.mode);
  const auto [minus, plus] = critical_exponents(params, p, cfg.n);
  const Profile1D phi = polynomial_bump(0.25, 0.5);
  std::vector<double> ratios;
  std::ostringstream csv;
  csv << "epsilon,ratio\n";
  json rows = json::array();
  for (double eps : kEpsilonFamily) {
    const double r = counterexample_ratio(params, p, cfg.n, branch, eps, phi, {}, tol).ratio;
    ratios.push_back(r);
    csv << number(eps) << "," << number(r) << "\n";
    rows.push_back({{"epsilon", eps}, {"ratio", r}});
  }
  const std::vector<double> tail_eps(kEpsilonFamily.end() - 3, kEpsilonFamily.end());
  const std::vector<double> tail_ratio(ratios.end() - 3, ratios.end());
  const double slope = loglog_slope(tail_eps, tail_ratio);
  const bool decreasing = std::is_sorted(ratios.rbegin(), ratios.rend());
  const bool passed = decreasing && slope >= 0.9 && slope <= 2.1;
  j["alpha"] = branch == CriticalBranch::Minus ? minus : plus;
  j["slope_epsilons"] = tail_eps;
  j["slope"] = slope;
  j["passed"] = passed;

  if (cfg.format == "csv") {
    if (cfg.output.empty()) {
      out << csv.str() << "# " << j.dump() << "\n";
      return passed ? kExitOk : kExitFail;
    }
    write_text(cfg.output, csv.str());
    j["output"] = cfg.output;
  } else {
    j["rows"] = rows;
  }
  emit(out, j);
  return passed ? kExitOk : kExitFail;
}

std::vector<Profile1D> remainder_corpus(std::uint64_t seed) {
  std::vector<Profile1D> corpus;
  for (const CorpusEntry& e : default_corpus(seed, 8, HarmonicSet::all(), std::log(2.0) + 0.05, 12.0)) {
    corpus.push_back(e.profile);
  }
  // Supports near r = 1e-4 and r = 1e-8.
  corpus.push_back(polynomial_bump(9.0, 9.5));
  corpus.push_back(modulated_bump(18.0, 20.0, 0.3, 2.0));
  return corpus;
}

std::vector<Profile1D> oned_corpus() {
  std::vector<Profile1D> corpus;
  for (int k = 0; k < 20; ++k) {
    const double m = 0.2 * std::pow(2.0, 0.5 * k);
    corpus.push_back(polynomial_bump(m, 2.0 * m));
  }
  return corpus;
}

json report_json(const VerificationReport& r) {
  json samples = json::array();
  for (const Sample& s : r.samples) {
    samples.push_back({{"descriptor", s.descriptor}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"margin", s.margin}});
  }
  json metrics = json::object();
  for (const auto& [key, value] : r.metrics) metrics[key] = value;
  return {{"claim", r.claim},
          {"passed", r.passed},
          {"min_margin", r.min_margin},
          {"tolerance", r.tolerance},
          {"metrics", metrics},
          {"samples", samples}};
}

int cmd_verify(const std::string& target, const RunConfig& cfg, std::ostream& out) {
  const double tol = resolve_tolerance(cfg);
  const ExtendedIndex p = index_of(cfg);
  json j = header("verify", cfg);
  j["target"] = target;
  j["seed"] = cfg.seed;
  VerificationReport report;
  if (target == "rellich") {
    const HarmonicSet J = harmonics_of(cfg);
    const double alpha = alpha_of(cfg);
    j["alpha"] = alpha;
    j["domain"] = cfg.domain;
    j["J"] = J.to_string();
    report = verify_rellich(params_of(cfg), p, alpha, domain_of(cfg), J,
                            default_corpus(cfg.seed, cfg.corpus_size, J), {}, tol);
  } else if (target == "hardy") {
    if (!cfg.beta) throw UsageError("--beta is required");
    j["beta"] = *cfg.beta;
    report = verify_hardy(params_of(cfg).N, p, *cfg.beta, polynomial_bump(0.0, std::log(2.0)), cfg.a);
  } else if (target == "remainder") {
    const double alpha = alpha_of(cfg);
    j["alpha"] = alpha;
    report = verify_remainder(params_of(cfg), p, alpha, remainder_corpus(cfg.seed), {}, tol);
  } else if (target == "critical") {
    const CriticalBranch branch = branch_of(cfg.mode);
    j["n"] = cfg.n;
    j["mode"] = cfg.mode;
    report = verify_critical_log(params_of(cfg), p, cfg.n, branch, cfg.alpha, cfg.eps, {}, tol);
  } else if (target == "aux") {
    if (!cfg.beta) throw UsageError("--beta is required");
    j["beta"] = *cfg.beta;
    j["lambda"] = cfg.lambda_value;
    report = verify_aux_remainder(*cfg.beta, cfg.lambda_value, p, polynomial_bump(1.0, 3.0));
  } else if (target == "oned") {
    const double beta = cfg.beta.value_or(1.0);
    j["beta"] = beta;
    j["a"] = cfg.a;
    report = verify_oned_inequality(beta, p, cfg.a, cfg.eps, oned_corpus());
  } else if (target == "dissipativity") {
    j["lambda"] = cfg.lambda_value;
    report = verify_dissipativity(params_of(cfg), p, cfg.lambda_value,
                                  default_corpus(cfg.seed, cfg.corpus_size, harmonics_of(cfg)));
  } else {
    throw UsageError("unknown verify target '" + target + "'");
  }
  j["report"] = report_json(report);
  emit(out, j);
  return report.passed ? kExitOk : kExitFail;
}

void add_operator_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--N", cfg.N, "dimension (>= 2)");
  app->add_option("--c", cfg.c, "drift coefficient");
  app->add_option("--b", cfg.b, "potential coefficient");
  app->add_option("--p", cfg.p, "Lebesgue exponent: a number >= 1 or inf");
  app->add_option("--tol", cfg.tol, "decision tolerance (overrides RELLICH_TOL)");
  app->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("-o,--output", cfg.output, "write CSV data to this path");
  app->add_option("--seed", cfg.seed, "seed for random corpora");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedRegime:
      return kExitUnsupported;
    case ErrorCode::InvalidArgument:
      return kExitUsage;
    default:
      return kExitPrecondition;
  }
}

void emit_error(std::ostream& out, const std::string& kind, const std::string& message) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["error"] = kind;
  j["message"] = message;
  emit(out, j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Rellich inequalities for L = Delta + c x/|x|^2 . grad - b/|x|^2"};
  app.require_subcommand(1);

  CLI::App* check = app.add_subcommand("check", "decide whether the inequality holds");
  add_operator_options(check, cfg);
  check->add_option("--alpha", cfg.alpha, "weight exponent");
  check->add_option("--domain", cfg.domain, "rn, ball, bounded, exterior or exterior-ball");
  check->add_option("--J", cfg.J, "harmonic degrees: all, ge:N, set:a,b or ne:a,b");

  CLI::App* spectrum = app.add_subcommand("spectrum", "classify a spectral point or sample P");
  add_operator_options(spectrum, cfg);
  spectrum->add_option("--lambda", cfg.lambda, "spectral point re[,im]");
  spectrum->add_option("--interval", cfg.interval, "radial operator on the half line or unit interval");
  spectrum->add_option("--domain", cfg.domain, "rn or ball for the degenerate operator");
  spectrum->add_option("--J", cfg.J, "harmonic degrees");
  spectrum->add_option("--beta", cfg.beta, "classify u'' + beta u' instead");
  spectrum->add_option("--side", cfg.side, "positive or negative half line");
  spectrum->add_flag("--sample", cfg.sample, "emit 1001 points of the parabola as CSV");
  spectrum->add_option("--xi-max", cfg.xi_max, "sampling range for xi");

  CLI::App* counter = app.add_subcommand("counterexample", "evaluate a counterexample family");
  add_operator_options(counter, cfg);
  counter->add_option("--n", cfg.n, "harmonic degree");
  counter->add_option("--mode", cfg.mode, "minus, plus or boundary");
  counter->add_option("--alpha", cfg.alpha, "weight exponent (boundary mode)");

  CLI::App* verify = app.add_subcommand("verify", "run a numerical verification");
  verify->require_subcommand(1);
  std::string target;
  for (const char* name : {"rellich", "hardy", "remainder", "critical", "aux", "oned", "dissipativity"}) {
    CLI::App* sub = verify->add_subcommand(name);
    add_operator_options(sub, cfg);
    sub->add_option("--alpha", cfg.alpha, "weight exponent");
    sub->add_option("--domain", cfg.domain, "domain kind");
    sub->add_option("--J", cfg.J, "harmonic degrees");
    sub->add_option("--beta", cfg.beta, "drift of the one-dimensional operator or Hardy weight");
    sub->add_option("--lambda", cfg.lambda_value, "positive spectral parameter");
    sub->add_option("--n", cfg.n, "harmonic degree");
    sub->add_option("--mode", cfg.mode, "minus or plus");
    sub->add_option("--a", cfg.a, "left end of the weighted norm, or Hardy power");
    sub->add_option("--eps", cfg.eps, "extra log exponent at p = 1");
    sub->add_option("--corpus-size", cfg.corpus_size, "number of random profiles");
    sub->callback([&target, name] { target = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(cfg, out);
    if (spectrum->parsed()) return cmd_spectrum(cfg, out);
    if (counter->parsed()) return cmd_counterexample(cfg, out);
    return cmd_verify(target, cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << "\n";
    emit_error(out, to_string(e.code()), e.what());
    return exit_code_for(e.code());
  }
}

}  // namespace rellich::cli
