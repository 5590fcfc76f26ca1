#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "altosc/errors.hpp"
#include "altosc/oracle.hpp"
#include "altosc/wavefunctions.hpp"

using namespace altosc;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams sphere(int dim, double r0, double omega) { return make_params(Geometry::Sphere, dim, r0, omega); }
ModelParams hyper(int dim, double r0, double omega) { return make_params(Geometry::Hyperboloid, dim, r0, omega); }

}  // namespace

TEST(Sphere, NormalizationConstantExample) {
  EXPECT_NEAR(normalization_sphere(sphere(2, 1.0, 0.5), QuantumState(0, 0)), std::sqrt(1.5), 1e-14);
  EXPECT_THROW(normalization_sphere(hyper(2, 1.0, 0.5), QuantumState(0, 0)), UsageError);
}

TEST(Sphere, GoldenConstantFromQuadrature) {
  // D=3, r0=1, w=1, (1, 2): C frozen after the quadrature oracle confirmed the norm.
  const ModelParams p = sphere(3, 1.0, 1.0);
  const QuantumState s(1, 2);
  EXPECT_NEAR(normalization_integral(p, s), 1.0, 1e-10);
  EXPECT_NEAR(normalization_sphere(p, s), 20.145046150118133, 20.0 * 1e-13);
}

TEST(Sphere, PointValues) {
  const ModelParams p = sphere(2, 1.0, 0.5);
  EXPECT_NEAR(radial_sphere(p, QuantumState(0, 0), 0.0), std::sqrt(1.5), 1e-14);
  for (int L = 1; L < 4; ++L) EXPECT_EQ(radial_sphere(p, QuantumState(1, L), 0.0), 0.0);
  // Single node of (1, 0): 2F1(-1, n_r + L + nu + D/2 = 4; 1; s) = 1 - 4 s vanishes at s = 1/4.
  const double node = 2.0 * std::asin(0.5);
  EXPECT_NEAR(radial_sphere(p, QuantumState(1, 0), node), 0.0, 1e-14);
  const auto nodes = locate_nodes(p, QuantumState(1, 0));
  ASSERT_EQ(nodes.size(), 1u);
  EXPECT_NEAR(nodes[0], node, 1e-12);
  // South pole: exponent nu - D/2 + 1 > 0 sends R to zero.
  EXPECT_EQ(radial_sphere(p, QuantumState(0, 0), kPi), 0.0);
  EXPECT_THROW(radial_sphere(p, QuantumState(0, 0), -0.1), DomainError);
  EXPECT_THROW(radial_sphere(p, QuantumState(0, 0), 3.2), DomainError);
}

TEST(Hyperboloid, PointValues) {
  const ModelParams p = hyper(2, 1.0, 1.0);
  EXPECT_NEAR(radial_hyperboloid(p, QuantumState(0, 0), 0.0), std::sqrt(1.5), 1e-14);
  EXPECT_EQ(radial_hyperboloid(p, QuantumState(0, 1), 0.0), 0.0);
  EXPECT_EQ(radial_hyperboloid(p, QuantumState(0, 0), std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_LT(std::abs(radial_hyperboloid(p, QuantumState(0, 0), 60.0)), 1e-40);
  EXPECT_THROW(radial_hyperboloid(p, QuantumState(2, 0), 1.0), NotBoundStateError);
  EXPECT_THROW(radial_hyperboloid(p, QuantumState(0, 0), -1.0), DomainError);
  EXPECT_THROW(radial_hyperboloid(sphere(2, 1.0, 1.0), QuantumState(0, 0), 1.0), UsageError);
  EXPECT_NEAR(normalization_integral(p, QuantumState(0, 0)), 1.0, 1e-10);
}

TEST(Flat, PointValues) {
  EXPECT_NEAR(radial_flat(3, 1.0, QuantumState(0, 0), 0.0), std::sqrt(4.0 / std::sqrt(kPi)), 1e-14);
  EXPECT_EQ(radial_flat(3, 1.0, QuantumState(0, 2), 0.0), 0.0);
  EXPECT_THROW(radial_flat(3, 0.0, QuantumState(0, 0), 1.0), DomainError);
  EXPECT_THROW(radial_flat(3, 1.0, QuantumState(0, 0), -1.0), DomainError);
  for (int D : {2, 3, 5})
    for (int n = 0; n < 4; ++n)
      for (int L = 0; L < 4; ++L)
        for (double w : {0.5, 2.0})
          ASSERT_NEAR(flat_normalization_integral(D, w, QuantumState(n, L)), 1.0, 1e-10)
              << D << " " << n << " " << L << " " << w;
}

TEST(Sample, Behaviour) {
  const ModelParams p = sphere(2, 1.0, 0.5);
  const QuantumState s(0, 0);
  EXPECT_EQ(sample(p, s, SampleKind::SphereChi, Eigen::VectorXd()).values.size(), 0);

  Eigen::VectorXd edge(3);
  edge << 0.0, kPi / 2, kPi * (1 - 1e-12);
  const auto r = sample(p, s, SampleKind::SphereChi, edge);
  EXPECT_TRUE(r.values.allFinite());
  EXPECT_EQ(r.kind, SampleKind::SphereChi);

  const Eigen::VectorXd uniform = Eigen::VectorXd::LinSpaced(1001, 0.0, kPi);
  EXPECT_TRUE(sample(p, QuantumState(3, 2), SampleKind::SphereChi, uniform).values.allFinite());
  const ModelParams h = hyper(3, 1.0, 2.0);
  const Eigen::VectorXd taus = Eigen::VectorXd::LinSpaced(1001, 0.0, 50.0);
  EXPECT_TRUE(sample(h, QuantumState(1, 1), SampleKind::HyperboloidTau, taus).values.allFinite());

  Eigen::VectorXd bad(2);
  bad << 0.5, 0.5;
  EXPECT_THROW(sample(p, s, SampleKind::SphereChi, bad), DomainError);
  bad << 0.5, 4.0;
  EXPECT_THROW(sample(p, s, SampleKind::SphereChi, bad), DomainError);
}

TEST(Sample, MatchesPointwiseEvaluation) {
  const ModelParams p = hyper(3, 1.5, 1.0);
  const QuantumState s(1, 2);
  const Eigen::VectorXd taus = Eigen::VectorXd::LinSpaced(57, 0.0, 9.0);
  const auto r = sample(p, s, SampleKind::HyperboloidTau, taus);
  for (Eigen::Index i = 0; i < taus.size(); ++i) ASSERT_EQ(r.values[i], radial_hyperboloid(p, s, taus[i]));
}

TEST(Properties, SphereNormalizationGrid) {
  for (int D : {2, 3, 4, 5})
    for (double w : {0.25, 1.0, 4.0})
      for (int n = 0; n <= 6; ++n)
        for (int L = 0; n + L <= 6; ++L) {
          const ModelParams p = sphere(D, 1.0, w);
          ASSERT_NEAR(normalization_integral(p, QuantumState(n, L)), 1.0, 1e-9)
              << "D=" << D << " w=" << w << " n=" << n << " L=" << L;
        }
}

TEST(Properties, HyperboloidNormalizationGrid) {
  int checked = 0;
  for (int D : {2, 3, 4, 5})
    for (double w : {0.25, 1.0, 4.0})
      for (int n = 0; n <= 6; ++n)
        for (int L = 0; n + L <= 6; ++L) {
          const ModelParams p = hyper(D, 1.0, w);
          if (!is_bound(p, QuantumState(n, L))) continue;
          ASSERT_NEAR(normalization_integral(p, QuantumState(n, L)), 1.0, 1e-9)
              << "D=" << D << " w=" << w << " n=" << n << " L=" << L;
          ++checked;
        }
  EXPECT_GT(checked, 50);
}

TEST(Properties, NormalizationIndependentQuadrature) {
  // Cross-check with Boost tanh-sinh on a few states.
  boost::math::quadrature::tanh_sinh<double> ts;
  const ModelParams p = sphere(3, 1.7, 0.8);
  const QuantumState s(2, 1);
  const RadialFunction f(p, s);
  const double rD = std::pow(1.7, 3);
  const double v = ts.integrate([&](double x) { return rD * f(x) * f(x) * std::pow(std::sin(x), 2); }, 0.0, kPi);
  EXPECT_NEAR(v, 1.0, 1e-10);

  const ModelParams h = hyper(2, 1.0, 1.0);
  const RadialFunction g(h, QuantumState(1, 0));
  const double u = ts.integrate([&](double t) { return g(t) * g(t) * std::sinh(t); }, 0.0, 80.0);
  EXPECT_NEAR(u, 1.0, 1e-10);
}

TEST(Properties, OrthogonalityAndNodes) {
  for (Geometry geo : {Geometry::Sphere, Geometry::Hyperboloid})
    for (int D : {2, 3, 5})
      for (int L = 0; L < 4; ++L) {
        const ModelParams p = make_params(geo, D, 1.0, 2.0);
        for (int n = 0; n < 4; ++n) {
          const QuantumState a(n, L);
          if (!is_bound(p, a)) continue;
          ASSERT_EQ(static_cast<int>(locate_nodes(p, a).size()), n);
          for (int m = n + 1; m < 4; ++m) {
            const QuantumState b(m, L);
            if (!is_bound(p, b)) continue;
            ASSERT_LT(std::abs(overlap_integral(p, a, b)), 1e-9);
          }
        }
      }
}

TEST(Properties, BoundaryExponents) {
  // R / (chi/2)^L and R / sinh(tau/2)^L tend to finite nonzero limits at the origin.
  for (int L = 0; L < 4; ++L) {
    const ModelParams p = sphere(3, 1.0, 1.0);
    const QuantumState s(1, L);
    double prev = 0.0;
    for (double x = 1e-2; x > 1e-6; x /= 10) {
      const double ratio = radial_sphere(p, s, x) / std::pow(std::sin(0.5 * x), L);
      ASSERT_TRUE(std::isfinite(ratio));
      ASSERT_NE(ratio, 0.0);
      if (prev != 0.0) ASSERT_NEAR(ratio / prev, 1.0, 1e-3);
      prev = ratio;
    }
    const ModelParams h = hyper(3, 1.0, 1.0);
    prev = 0.0;
    for (double x = 1e-2; x > 1e-6; x /= 10) {
      const double ratio = radial_hyperboloid(h, QuantumState(0, L), x) / std::pow(std::sinh(0.5 * x), L);
      ASSERT_TRUE(std::isfinite(ratio));
      ASSERT_NE(ratio, 0.0);
      if (prev != 0.0) ASSERT_NEAR(ratio / prev, 1.0, 1e-3);
      prev = ratio;
    }
  }
}

TEST(Properties, LogValueBeyondUnderflow) {
  // Small gap (nu - L - D/2 ~ 0.06): the density still matters where R underflows.
  const ModelParams h = hyper(4, 1.0, 1.0);
  const RadialFunction g(h, QuantumState(0, 6));
  const LogValue v = g.log_value(600.0);
  EXPECT_EQ(v.sign, 1);
  EXPECT_TRUE(std::isfinite(v.log_magnitude));
  EXPECT_EQ(g(600.0), 0.0);
  EXPECT_NEAR(normalization_integral(h, QuantumState(0, 6)), 1.0, 1e-9);
}

TEST(Properties, LargeNuStaysFinite) {
  // nu ~ 4 w r0^2 = 4e4: log-space evaluation keeps every factor finite.
  const ModelParams p = sphere(3, 100.0, 1.0);
  const RadialFunction f(p, QuantumState(2, 1));
  for (double chi : {0.0, 1e-3, 0.02, 0.5, 3.0}) EXPECT_TRUE(std::isfinite(f(chi)));
  const ModelParams h = hyper(3, 100.0, 1.0);
  const RadialFunction g(h, QuantumState(2, 1));
  for (double tau : {0.0, 1e-3, 0.02, 0.5, 30.0}) EXPECT_TRUE(std::isfinite(g(tau)));
}
