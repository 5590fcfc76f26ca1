#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "altosc/errors.hpp"

namespace altosc {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Cached rule for order in {8, 16, 32}; other orders throw DomainError.
const GaussLegendreRule& gauss_legendre_rule(int order);

/// Composite Gauss-Legendre over `panels` equal panels. Non-finite samples throw NumericalError.
template <typename F>
double gauss_legendre(F&& f, double a, double b, int panels, int order) {
  if (panels < 1) throw DomainError("gauss_legendre: panels must be >= 1");
  if (!(b >= a)) throw DomainError("gauss_legendre: interval must satisfy a <= b");
  const GaussLegendreRule& rule = gauss_legendre_rule(order);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    double panel = 0.0;
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
      const double y = f(mid + 0.5 * width * rule.nodes[k]);
      if (!std::isfinite(y)) throw NumericalError("gauss_legendre: non-finite integrand sample");
      panel += rule.weights[k] * y;
    }
    total += 0.5 * width * panel;
  }
  return total;
}

struct QuadratureResult {
  double value = 0.0;
  double change = 0.0;  // |I(2 panels) - I(panels)| relative to max(|I|, scale)
  int panels = 0;
};

/// Composite Gauss-Legendre with panel doubling until successive values differ by at most
/// rel_tol * max(|I|, scale). Throws AccuracyError if max_panels is exceeded first.
template <typename F>
QuadratureResult gauss_legendre_checked(F&& f, double a, double b, int panels, int order, double rel_tol,
                                        int max_panels = 1 << 16, double scale = 0.0) {
  double previous = gauss_legendre(f, a, b, panels, order);
  while (true) {
    const int doubled = 2 * panels;
    if (doubled > max_panels) {
      throw AccuracyError("gauss_legendre: panel doubling did not reach the requested tolerance");
    }
    const double current = gauss_legendre(f, a, b, doubled, order);
    const double ref = std::max(std::abs(current), scale);
    const double change = ref > 0.0 ? std::abs(current - previous) / ref : 0.0;
    if (change <= rel_tol) return {current, change, doubled};
    previous = current;
    panels = doubled;
  }
}

}  // namespace altosc
