#include "altosc/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace altosc {

namespace {

// Newton iteration on P_n from the Chebyshev initial guess.
GaussLegendreRule build_rule(int order) {
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int order) {
  static const GaussLegendreRule rule8 = build_rule(8);
  static const GaussLegendreRule rule16 = build_rule(16);
  static const GaussLegendreRule rule32 = build_rule(32);
  switch (order) {
    case 8: return rule8;
    case 16: return rule16;
    case 32: return rule32;
    default: throw DomainError("gauss_legendre: order must be 8, 16 or 32");
  }
}

}  // namespace altosc
