#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "rellich/params.hpp"

namespace rellich {

/// Set J ⊆ ℕ₀ of spherical-harmonic degrees.
class HarmonicSet {
 public:
  struct All {};
  struct AtLeast { int n0; };
  struct FiniteSet { std::vector<int> members; };
  struct Excluding { std::vector<int> excluded; };
  using Spec = std::variant<All, AtLeast, FiniteSet, Excluding>;

  static HarmonicSet all() { return HarmonicSet(All{}); }
  static HarmonicSet at_least(int n0);
  static HarmonicSet finite(std::vector<int> members);
  static HarmonicSet excluding(std::vector<int> excluded);
  /// "all" | "ge:N" | "set:a,b,..." | "ne:a,b,...".
  static HarmonicSet parse(std::string_view text);

  bool contains(int n) const;
  /// Smallest member j₀.
  int min() const;
  bool is_all() const;
  /// Finite sets report their largest element; other kinds are unbounded.
  std::optional<int> max() const;
  const Spec& spec() const { return spec_; }
  std::string to_string() const;

 private:
  explicit HarmonicSet(Spec spec) : spec_(std::move(spec)) {}
  Spec spec_;
};

enum class DomainKind { WholeSpace, UnitBall, BoundedSmooth, ExteriorSmooth, ExteriorBall };

DomainKind parse_domain(std::string_view text);
const char* to_string(DomainKind kind);

enum class Branch { Minus, Plus, BoundaryObstruction };

const char* to_string(Branch branch);

struct FailingMode {
  int n = 0;
  Branch branch = Branch::Minus;
  /// The critical exponent that α matched (or the obstruction threshold).
  double critical_alpha = 0.0;

  friend bool operator==(const FailingMode&, const FailingMode&) = default;
};

struct Verdict {
  bool holds = true;
  std::vector<FailingMode> failing_modes;
  std::optional<double> best_constant;
  std::string notes;
};

Verdict decide_whole_space(const OperatorParams& params, ExtendedIndex p,
                           double alpha, const HarmonicSet& J,
                           double tol = kDefaultTolerance);

Verdict decide_unit_ball(const OperatorParams& params, ExtendedIndex p,
                         double alpha, const HarmonicSet& J,
                         double tol = kDefaultTolerance);

/// Bounded smooth domain containing the origin; requires 1 < p < ∞ and D ≥ 0.
Verdict decide_bounded_domain(const OperatorParams& params, ExtendedIndex p,
                              double alpha, double tol = kDefaultTolerance);

/// Exterior domains not containing the origin. ExteriorSmooth requires
/// 1 < p < ∞ and D ≥ 0; ExteriorBall accepts every p and D.
Verdict decide_exterior(const OperatorParams& params, ExtendedIndex p,
                        double alpha, DomainKind kind,
                        double tol = kDefaultTolerance);

/// Dispatches on the domain kind. BoundedSmooth and the exterior kinds only
/// accept J = All.
Verdict decide(const OperatorParams& params, ExtendedIndex p, double alpha,
               DomainKind domain, const HarmonicSet& J,
               double tol = kDefaultTolerance);

/// b + γ_p(α, c) when D > 0 and |base − α| < √D; absent otherwise.
std::optional<double> best_constant(const OperatorParams& params,
                                    ExtendedIndex p, double alpha,
                                    double tol = kDefaultTolerance);

struct ParameterFlags {
  bool outside_region;     ///< μ ∉ Q_p − λ_j
  bool positive_constant;  ///< b + γ_p + λ_j > 0
  bool real_gap;           ///< |base − α| < √(D+λ_j) and D + λ_j > 0
  bool complex_gap;        ///< |base − α| < Re √(D+λ_j)

  bool agree() const {
    return outside_region == positive_constant && positive_constant == real_gap &&
           real_gap == complex_gap;
  }
};

/// Four equivalent characterisations of validity on a single harmonic degree.
ParameterFlags parameter_flags(const OperatorParams& params, ExtendedIndex p,
                               double alpha, int j);

}  // namespace rellich
