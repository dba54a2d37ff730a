#include "rellich/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rellich/error.hpp"

namespace rellich {
namespace {

struct Rule {
  std::vector<double> x;  // nodes on [−1, 1]
  std::vector<double> w;
};

const Rule& gauss_legendre(int nodes) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[nodes];
  if (!slot) {
    gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(nodes);
    if (table == nullptr) {
      throw Error(ErrorCode::InvalidArgument, "cannot build Gauss-Legendre rule");
    }
    auto rule = std::make_unique<Rule>();
    for (int i = 0; i < nodes; ++i) {
      double xi = 0.0, wi = 0.0;
      gsl_integration_glfixed_point(-1.0, 1.0, i, &xi, &wi, table);
      rule->x.push_back(xi);
      rule->w.push_back(wi);
    }
    gsl_integration_glfixed_table_free(table);
    slot = std::move(rule);
  }
  return *slot;
}

double sample(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw Error(ErrorCode::NonFiniteIntegrand,
                "integrand is not finite at " + std::to_string(x));
  }
  return y;
}

double composite(const RealFunction& f, double a, double b, int panels, const Rule& rule) {
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      panel += rule.w[i] * sample(f, mid + 0.5 * h * rule.x[i]);
    }
    total += 0.5 * h * panel;
  }
  return total;
}

}  // namespace

Estimate integrate(const RealFunction& f, double a, double b, const QuadratureSpec& quad) {
  if (!(b > a)) return {};
  const Rule& rule = gauss_legendre(quad.nodes);
  int panels = std::max(1, quad.initial_panels);
  double previous = composite(f, a, b, panels, rule);
  while (panels < quad.max_panels) {
    panels *= 2;
    const double current = composite(f, a, b, panels, rule);
    const double change = std::abs(current - previous);
    previous = current;
    if (change <= std::max(quad.rel_tol * std::abs(current), quad.abs_tol) || current == 0.0) {
      return {current, change};
    }
    if (panels >= quad.max_panels) return {current, change};
  }
  return {previous, std::abs(previous)};
}

double sup_abs(const RealFunction& f, double a, double b, const QuadratureSpec& quad) {
  if (!(b > a)) return std::abs(sample(f, a));
  const int points = std::max(3, quad.sup_grid);
  const double h = (b - a) / (points - 1);
  double best = -1.0;
  int best_index = 0;
  for (int i = 0; i < points; ++i) {
    const double y = std::abs(sample(f, a + i * h));
    if (y > best) {
      best = y;
      best_index = i;
    }
  }
  const double lo = a + std::max(0, best_index - 1) * h;
  const double hi = a + std::min(points - 1, best_index + 1) * h;
  const auto negated = [&f](double x) { return -std::abs(sample(f, x)); };
  const auto refined = boost::math::tools::brent_find_minima(negated, lo, hi, 50);
  return std::max(best, -refined.second);
}

Estimate lp_norm_estimate(const RealFunction& f, double a, double b, ExtendedIndex p,
                          const QuadratureSpec& quad) {
  if (p.is_infinite()) return {sup_abs(f, a, b, quad), 0.0};
  const double q = p.value();
  const Estimate power =
      integrate([&f, q](double x) { return std::pow(std::abs(f(x)), q); }, a, b, quad);
  const double norm = std::pow(std::max(power.value, 0.0), 1.0 / q);
  // First-order propagation of the error in ∫|f|^p through the p-th root.
  const double error = power.value > 0.0 ? norm * power.error / (q * power.value) : power.error;
  return {norm, error};
}

double lp_norm_1d(const RealFunction& f, double a, double b, ExtendedIndex p,
                  const QuadratureSpec& quad) {
  return lp_norm_estimate(f, a, b, p, quad).value;
}

}  // namespace rellich
