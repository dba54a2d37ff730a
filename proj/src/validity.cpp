#include "rellich/validity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "rellich/error.hpp"
#include "rellich/spectral.hpp"

namespace rellich {
namespace {

std::vector<int> sorted_unique(std::vector<int> values) {
  for (int v : values) {
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "harmonic degrees must be nonnegative");
  }
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw Error(ErrorCode::InvalidArgument, "harmonic degrees must be distinct");
  }
  return values;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::InvalidArgument, "bad harmonic degree '" + std::string(token) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(const std::vector<int>& values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  return os.str();
}

// Iterates n = 0, 1, ... over members of J until `stop(n)` is true. `stop`
// must be monotone in n; finite sets end after their last member anyway.
template <typename Stop, typename Visit>
void scan_members(const HarmonicSet& J, Stop stop, Visit visit) {
  const auto last = J.max();
  for (int n = 0;; ++n) {
    if (last && n > *last) return;
    if (stop(n)) return;
    if (J.contains(n)) visit(n);
  }
}

}  // namespace

HarmonicSet HarmonicSet::at_least(int n0) {
  if (n0 < 0) throw Error(ErrorCode::InvalidArgument, "harmonic degrees must be nonnegative");
  return HarmonicSet(AtLeast{n0});
}

HarmonicSet HarmonicSet::finite(std::vector<int> members) {
  if (members.empty()) throw Error(ErrorCode::InvalidArgument, "harmonic set must be nonempty");
  return HarmonicSet(FiniteSet{sorted_unique(std::move(members))});
}

HarmonicSet HarmonicSet::excluding(std::vector<int> excluded) {
  return HarmonicSet(Excluding{sorted_unique(std::move(excluded))});
}

HarmonicSet HarmonicSet::parse(std::string_view text) {
  if (text == "all") return all();
  if (text.starts_with("ge:")) {
    const auto values = parse_int_list(text.substr(3));
    if (values.size() != 1) throw Error(ErrorCode::InvalidArgument, "ge: takes one degree");
    return at_least(values.front());
  }
  if (text.starts_with("set:")) return finite(parse_int_list(text.substr(4)));
  if (text.starts_with("ne:")) return excluding(parse_int_list(text.substr(3)));
  throw Error(ErrorCode::InvalidArgument, "unknown harmonic set '" + std::string(text) + "'");
}

bool HarmonicSet::contains(int n) const {
  if (n < 0) return false;
  return std::visit(
      [n](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, All>) {
          return true;
        } else if constexpr (std::is_same_v<T, AtLeast>) {
          return n >= s.n0;
        } else if constexpr (std::is_same_v<T, FiniteSet>) {
          return std::binary_search(s.members.begin(), s.members.end(), n);
        } else {
          return !std::binary_search(s.excluded.begin(), s.excluded.end(), n);
        }
      },
      spec_);
}

int HarmonicSet::min() const {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, All>) {
          return 0;
        } else if constexpr (std::is_same_v<T, AtLeast>) {
          return s.n0;
        } else if constexpr (std::is_same_v<T, FiniteSet>) {
          return s.members.front();
        } else {
          int n = 0;
          for (int e : s.excluded) {
            if (e != n) break;
            ++n;
          }
          return n;
        }
      },
      spec_);
}

bool HarmonicSet::is_all() const {
  if (std::holds_alternative<All>(spec_)) return true;
  if (const auto* s = std::get_if<AtLeast>(&spec_)) return s->n0 == 0;
  if (const auto* s = std::get_if<Excluding>(&spec_)) return s->excluded.empty();
  return false;
}

std::optional<int> HarmonicSet::max() const {
  if (const auto* s = std::get_if<FiniteSet>(&spec_)) return s->members.back();
  return std::nullopt;
}

std::string HarmonicSet::to_string() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, All>) {
          return "all";
        } else if constexpr (std::is_same_v<T, AtLeast>) {
          return "ge:" + std::to_string(s.n0);
        } else if constexpr (std::is_same_v<T, FiniteSet>) {
          return "set:" + join(s.members);
        } else {
          return "ne:" + join(s.excluded);
        }
      },
      spec_);
}

DomainKind parse_domain(std::string_view text) {
  if (text == "rn" || text == "whole" || text == "whole-space") return DomainKind::WholeSpace;
  if (text == "ball" || text == "unit-ball") return DomainKind::UnitBall;
  if (text == "bounded") return DomainKind::BoundedSmooth;
  if (text == "exterior") return DomainKind::ExteriorSmooth;
  if (text == "exterior-ball") return DomainKind::ExteriorBall;
  throw Error(ErrorCode::InvalidArgument, "unknown domain '" + std::string(text) + "'");
}

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::WholeSpace: return "rn";
    case DomainKind::UnitBall: return "ball";
    case DomainKind::BoundedSmooth: return "bounded";
    case DomainKind::ExteriorSmooth: return "exterior";
    case DomainKind::ExteriorBall: return "exterior-ball";
  }
  return "?";
}

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::Minus: return "minus";
    case Branch::Plus: return "plus";
    case Branch::BoundaryObstruction: return "boundary";
  }
  return "?";
}

Verdict decide_whole_space(const OperatorParams& params, ExtendedIndex p,
                           double alpha, const HarmonicSet& J, double tol) {
  Verdict verdict;
  const double base = base_exponent(params, p);
  // Beyond this n both critical exponents are more than 1 away from α, and
  // λ_n is increasing, so no later degree can match.
  auto beyond_horizon = [&](int n) {
    const double gap = real_root_gap(params, n);
    return base - gap < alpha - 1.0 && base + gap > alpha + 1.0;
  };
  scan_members(J, beyond_horizon, [&](int n) {
    const auto [minus, plus] = critical_exponents(params, p, n);
    if (std::abs(alpha - minus) <= tol) verdict.failing_modes.push_back({n, Branch::Minus, minus});
    if (std::abs(alpha - plus) <= tol) verdict.failing_modes.push_back({n, Branch::Plus, plus});
  });
  verdict.holds = verdict.failing_modes.empty();
  if (verdict.holds && J.is_all()) verdict.best_constant = best_constant(params, p, alpha, tol);
  return verdict;
}

Verdict decide_unit_ball(const OperatorParams& params, ExtendedIndex p,
                         double alpha, const HarmonicSet& J, double tol) {
  Verdict verdict;
  const int j0 = J.min();
  const double threshold = critical_exponents(params, p, j0).second;
  if (alpha >= threshold - tol) {
    verdict.failing_modes.push_back({j0, Branch::BoundaryObstruction, threshold});
    verdict.notes = "alpha is not below the boundary threshold base + Re sqrt(D + lambda_j0)";
  }
  // α_j^− is nonincreasing in j: once it drops below α − tol nothing matches.
  auto below = [&](int n) { return critical_exponents(params, p, n).first < alpha - tol; };
  scan_members(J, below, [&](int n) {
    const double minus = critical_exponents(params, p, n).first;
    if (std::abs(alpha - minus) <= tol) verdict.failing_modes.push_back({n, Branch::Minus, minus});
  });
  verdict.holds = verdict.failing_modes.empty();
  if (verdict.holds && J.is_all()) verdict.best_constant = best_constant(params, p, alpha, tol);
  return verdict;
}

Verdict decide_bounded_domain(const OperatorParams& params, ExtendedIndex p,
                              double alpha, double tol) {
  if (!p.is_interior()) {
    throw Error(ErrorCode::PreconditionViolated,
                "bounded domains require 1 < p < inf, got p = " + p.to_string());
  }
  if (params.discriminant() < -tol) {
    throw Error(ErrorCode::PreconditionViolated,
                "bounded domains require D >= 0, got D = " + std::to_string(params.discriminant()));
  }
  return decide_unit_ball(params, p, alpha, HarmonicSet::all(), tol);
}

Verdict decide_exterior(const OperatorParams& params, ExtendedIndex p,
                        double alpha, DomainKind kind, double tol) {
  if (kind != DomainKind::ExteriorSmooth && kind != DomainKind::ExteriorBall) {
    throw Error(ErrorCode::InvalidArgument, "decide_exterior needs an exterior domain kind");
  }
  if (kind == DomainKind::ExteriorSmooth) {
    if (!p.is_interior()) {
      throw Error(ErrorCode::PreconditionViolated,
                  "exterior smooth domains require 1 < p < inf, got p = " + p.to_string());
    }
    if (params.discriminant() < -tol) {
      throw Error(ErrorCode::PreconditionViolated, "exterior smooth domains require D >= 0");
    }
  }
  Verdict verdict;
  const double base = base_exponent(params, p);
  const double threshold = critical_exponents(params, p, 0).first;
  if (alpha <= threshold + tol) {
    verdict.failing_modes.push_back({0, Branch::BoundaryObstruction, threshold});
    verdict.notes = "alpha is not above the boundary threshold base - Re sqrt(D)";
  }
  auto above = [&](int n) { return base + real_root_gap(params, n) > alpha + tol; };
  scan_members(HarmonicSet::all(), above, [&](int n) {
    const double plus = base + real_root_gap(params, n);
    if (std::abs(alpha - plus) <= tol) verdict.failing_modes.push_back({n, Branch::Plus, plus});
  });
  verdict.holds = verdict.failing_modes.empty();
  return verdict;
}

Verdict decide(const OperatorParams& params, ExtendedIndex p, double alpha,
               DomainKind domain, const HarmonicSet& J, double tol) {
  switch (domain) {
    case DomainKind::WholeSpace:
      return decide_whole_space(params, p, alpha, J, tol);
    case DomainKind::UnitBall:
      return decide_unit_ball(params, p, alpha, J, tol);
    default:
      break;
  }
  if (!J.is_all()) {
    throw Error(ErrorCode::PreconditionViolated,
                std::string("harmonic subspaces are only supported on rn and ball, not ") +
                    to_string(domain));
  }
  if (domain == DomainKind::BoundedSmooth) return decide_bounded_domain(params, p, alpha, tol);
  return decide_exterior(params, p, alpha, domain, tol);
}

std::optional<double> best_constant(const OperatorParams& params, ExtendedIndex p,
                                    double alpha, double tol) {
  const double D = params.discriminant();
  if (!(D > 0.0)) return std::nullopt;
  if (std::abs(base_exponent(params, p) - alpha) >= std::sqrt(D) - tol) return std::nullopt;
  return params.b + gamma_constant(params.N, p, alpha, params.c);
}

ParameterFlags parameter_flags(const OperatorParams& params, ExtendedIndex p,
                               double alpha, int j) {
  const double lambda_j = harmonic_eigenvalue(params.N, j);
  const double shifted_D = params.discriminant() + lambda_j;
  const double distance = std::abs(base_exponent(params, p) - alpha);
  const double mu = mu_shift(params, alpha);
  const ParabolicRegion region = rellich_region(params, p, alpha);

  ParameterFlags flags{};
  flags.outside_region = !in_region(region, Complex(mu + lambda_j, 0.0), 0.0);
  flags.positive_constant =
      params.b + gamma_constant(params.N, p, alpha, params.c) + lambda_j > 0.0;
  flags.real_gap = shifted_D > 0.0 && distance < std::sqrt(shifted_D);
  flags.complex_gap = distance < sqrt_nonneg_re(shifted_D).real();
  return flags;
}

}  // namespace rellich
