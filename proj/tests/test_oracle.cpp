#include <gtest/gtest.h>

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

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(FdGrid, Basics) {
  FdGrid g{0.0, 1.0, 99, 0.0};
  EXPECT_DOUBLE_EQ(g.spacing(), 0.01);
  EXPECT_EQ(g.refined().points, 199);
  EXPECT_DOUBLE_EQ(g.refined().spacing(), 0.005);
  EXPECT_THROW((FdGrid{1.0, 1.0, 99, 0.0}).validate(), DomainError);
  EXPECT_THROW((FdGrid{0.0, 1.0, 15, 0.0}).validate(), DomainError);

  FdGrid s{0.0, 50.0, 100, 0.5};
  EXPECT_DOUBLE_EQ(s.map(0.0), 0.0);
  EXPECT_NEAR(s.map(1.0), 50.0, 1e-12);
  EXPECT_NEAR(s.map_derivative(0.0), 0.5, 1e-15);
  const double e = 1e-6;
  EXPECT_NEAR((s.map(0.3 + e) - s.map(0.3 - e)) / (2 * e), s.map_derivative(0.3), 1e-6);
}

TEST(PtPotential, Examples) {
  EXPECT_NEAR(pt_effective_potential(sphere(2, 1.0, 0.5), 0, kPi / 4), 7.0, 1e-13);
  // lambda = 1/2 removes the sin-singular term.
  const ModelParams p = sphere(3, 1.0, 1.0);
  const double v = nu(p, 0);
  for (double x : {0.1, 0.7, 1.3})
    EXPECT_NEAR(pt_effective_potential(p, 0, x), (v * v - 0.25) / std::pow(std::cos(x), 2), 1e-12);
  EXPECT_EQ(pt_effective_potential(hyper(2, 1.0, 1.0), 0, std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_LT(std::abs(pt_effective_potential(hyper(2, 1.0, 1.0), 0, 40.0)), 1e-30);
  // Attractive hyperboloid well.
  EXPECT_LT(pt_effective_potential(hyper(3, 1.0, 1.0), 0, 1.0), 0.0);
  EXPECT_THROW(pt_effective_potential(sphere(2, 1.0, 1.0), 0, 0.0), DomainError);
  EXPECT_THROW(pt_effective_potential(sphere(2, 1.0, 1.0), 0, kPi / 2), DomainError);
  EXPECT_THROW(pt_effective_potential(hyper(2, 1.0, 1.0), 0, 0.0), DomainError);
}

TEST(Richardson, Examples) {
  EXPECT_EQ(richardson_extrapolate(3.5, 3.5, 2), 3.5);
  EXPECT_NEAR(richardson_extrapolate(1.04, 1.01, 2), 1.0, 1e-15);
  EXPECT_THROW(richardson_extrapolate(1.0, 1.0, 0), DomainError);
}

TEST(FdEigenvalues, SphereGroundState) {
  const ModelParams p = sphere(2, 1.0, 0.5);
  const FdGrid g{0.0, kPi / 2, 1999, 0.0};
  const double e1 = fd_eigenvalues(p, 0, g, 1).eigenvalues[0];
  const double e2 = fd_eigenvalues(p, 0, g.refined(), 1).eigenvalues[0];
  EXPECT_LT(std::abs(e2 - 9.0), std::abs(e1 - 9.0));
  EXPECT_LT(std::abs(richardson_extrapolate(e1, e2, 2) - 9.0), 1e-6 * 9.0);
}

TEST(FdEigenvalues, FreeParticleSphere) {
  const ModelParams p = sphere(3, 1.0, 0.0);
  const auto ex = extrapolated_eigenvalues(p, 0, 4, 0);
  for (int n = 0; n < 4; ++n) {
    const double want = energy_sphere(p, QuantumState(n, 0)).epsilon;
    EXPECT_LT(rel(ex.extrapolated[n], want), 1e-6);
  }
}

TEST(FdEigenvalues, HyperboloidExample) {
  const ModelParams p = hyper(2, 1.0, 1.0);
  const auto r = fd_eigenvalues(p, 0, default_fd_grid(p, 0, 0), 5);
  EXPECT_TRUE(r.truncated);
  ASSERT_EQ(r.eigenvalues.size(), 2);
  EXPECT_NEAR(r.eigenvalues[0], -9.0, 1e-3);
  EXPECT_NEAR(r.eigenvalues[1], -1.0, 1e-3);
  const auto ex = extrapolated_eigenvalues(p, 0, 5, 0);
  EXPECT_LT(rel(ex.extrapolated[0], -9.0), 1e-4);
  EXPECT_LT(rel(ex.extrapolated[1], -1.0), 1e-4);
  EXPECT_LT(ex.truncation_shift, 1e-8);
  EXPECT_EQ(fd_bound_count(p, 0, ex.fine_grid), 2);
}

TEST(FdEigenvalues, SphereGoldenState) {
  // Confirms the golden E of test_model for D=5, r0=2, w=1, (2, 1).
  const ModelParams p = sphere(5, 2.0, 1.0);
  const auto ex = extrapolated_eigenvalues(p, 1, 3, 0);
  const double eps = ex.extrapolated[2];
  EXPECT_LT(rel(eps, 561.41202111052471), 1e-6);
  const double d1 = 4.0;
  const double energy_from_fd = (eps - d1 * d1 - p.well_strength()) / (8.0 * 4.0);
  EXPECT_NEAR(energy_from_fd, 9.0441256597038970, 1e-6 * 561.4 / 32.0);
}

TEST(FdEigenvalues, SpectrumGrid) {
  for (int D : {2, 3, 5})
    for (double w : {0.5, 1.0, 2.0})
      for (int L = 0; L <= 3; ++L) {
        const ModelParams p = sphere(D, 1.0, w);
        const auto ex = extrapolated_eigenvalues(p, L, 4, 0);
        for (int n = 0; n < 4; ++n) {
          const double want = energy_sphere(p, QuantumState(n, L)).epsilon;
          ASSERT_LT(rel(ex.extrapolated[n], want), fd_tolerance(p, L)) << D << " " << w << " " << L << " " << n;
        }
      }
}

TEST(FdEigenvalues, HyperboloidBoundCounts) {
  for (int D : {2, 3, 5})
    for (double w : {0.5, 1.0, 2.0})
      for (int L = 0; L <= 3; ++L) {
        const ModelParams p = hyper(D, 1.0, w);
        const auto top = bound_state_max(p, L);
        const int expected = top ? *top + 1 : 0;
        const FdGrid g = default_fd_grid(p, L, 0);
        ASSERT_EQ(fd_bound_count(p, L, g), expected) << D << " " << w << " " << L;
        if (!top) continue;
        const auto ex = extrapolated_eigenvalues(p, L, expected, 0);
        for (int n = 0; n < expected; ++n) {
          const double want = energy_hyperboloid(p, QuantumState(n, L)).epsilon;
          ASSERT_LT(rel(ex.extrapolated[n], want), fd_tolerance(p, L)) << D << " " << w << " " << L << " " << n;
        }
      }
}

TEST(FdEigenvalues, Errors) {
  EXPECT_THROW(fd_eigenvalues(sphere(2, 1.0, 1.0), 0, FdGrid{0.0, 1.0, 10, 0.0}, 1), DomainError);
  EXPECT_THROW(fd_eigenvalues(sphere(2, 1.0, 1.0), 0, FdGrid{0.0, 1.0, 100, 0.0}, -1), DomainError);
  EXPECT_THROW(fd_bound_count(sphere(2, 1.0, 1.0), 0, FdGrid{0.0, 1.0, 100, 0.0}), UsageError);
}

TEST(FdEigenvalues, Forms) {
  EXPECT_EQ(fd_form(sphere(2, 1.0, 1.0), 0), FdForm::HalfPower);
  EXPECT_EQ(fd_form(sphere(2, 1.0, 1.0), 1), FdForm::Liouville);
  EXPECT_EQ(fd_form(sphere(3, 1.0, 1.0), 0), FdForm::Liouville);
  const FdSystem sys = fd_system(sphere(3, 1.0, 1.0), 0, FdGrid{0.0, kPi / 2, 99, 0.0});
  EXPECT_EQ(sys.matrix.size(), 99);
  EXPECT_EQ(sys.nodes.size(), 99);
  EXPECT_GT(sys.nodes[0], 0.0);
  const FdSystem half = fd_system(sphere(2, 1.0, 1.0), 0, FdGrid{0.0, kPi / 2, 99, 0.0});
  EXPECT_EQ(half.matrix.size(), 100);
  EXPECT_EQ(half.nodes[0], 0.0);
}

TEST(Eigenvector, CorrelatesWithAnalytic) {
  const struct {
    Geometry g;
    int D;
    double w;
    int L;
  } cases[] = {{Geometry::Sphere, 2, 0.5, 0}, {Geometry::Sphere, 3, 1.0, 0}, {Geometry::Sphere, 5, 1.0, 2},
               {Geometry::Hyperboloid, 2, 1.0, 0}, {Geometry::Hyperboloid, 3, 2.0, 1}};
  for (const auto& c : cases) {
    const ModelParams p = make_params(c.g, c.D, 1.0, c.w);
    const FdGrid g = default_fd_grid(p, c.L, 0);
    const FdEigenvector v = fd_radial_eigenvector(p, c.L, g, 0);
    Eigen::VectorXd analytic(v.coordinate.size());
    for (Eigen::Index i = 0; i < analytic.size(); ++i) analytic[i] = radial_curved(p, QuantumState(0, c.L), v.coordinate[i]);
    const double cosine = v.radial.dot(analytic) / analytic.norm();
    EXPECT_GT(cosine, 0.999999) << to_string(c.g) << " D=" << c.D << " L=" << c.L;
  }
}

TEST(OdeResidual, Examples) {
  const ModelParams p = sphere(3, 1.0, 1.0);
  const QuantumState s(1, 1);
  const FdGrid g = residual_grid(p, s, 1e-3);
  const double r1 = ode_residual(p, s, g);
  const double r2 = ode_residual(p, s, g.refined());
  EXPECT_LT(r1, 1e-5);
  EXPECT_GE(r1 / r2, 3.5);
  EXPECT_LE(r1 / r2, 4.5);
  EXPECT_GT(ode_residual(p, s, g, 0.1), 1e-2);

  const ModelParams h = hyper(2, 1.0, 1.0);
  const QuantumState t(1, 0);
  const FdGrid gh = residual_grid(h, t, 1e-3);
  EXPECT_LT(ode_residual(h, t, gh), 1e-5);
  EXPECT_GT(ode_residual(h, t, gh, 0.1), 1e-2);
}

TEST(OdeResidual, RefinementReachesTolerance) {
  const ModelParams p = sphere(3, 1.0, 2.0);
  const QuantumState s(3, 3);
  const auto r = refine_ode_residual(p, s, 1e-3, 1e-5);
  EXPECT_LT(r.residual, 1e-5);
  EXPECT_LT(r.step, 1e-3);
  EXPECT_NEAR(r.ratio, 4.0, 0.5);
}

TEST(Quadrature, SelfConsistency) {
  const ModelParams p = sphere(2, 1.0, 0.5);
  EXPECT_NEAR(normalization_integral(p, QuantumState(0, 0)), 1.0, 1e-10);
  EXPECT_NEAR(flat_normalization_integral(3, 1.0, QuantumState(1, 2)), 1.0, 1e-10);
  EXPECT_THROW(overlap_integral(p, QuantumState(0, 0), QuantumState(0, 1)), UsageError);
  EXPECT_GT(hyperboloid_tau_max(hyper(2, 1.0, 1.0), QuantumState(1, 0)), 8.0);
}

TEST(Verify, PassesAndFails) {
  const ModelParams p = sphere(3, 1.0, 1.0);
  const OracleReport good = verify_state(p, QuantumState(0, 0));
  EXPECT_TRUE(good.all_pass());
  EXPECT_FALSE(good.extrapolated.empty());
  for (std::size_t i = 1; i < good.eigenvalues.size(); ++i) EXPECT_LT(good.eigenvalues[i - 1], good.eigenvalues[i]);

  VerifyOptions strict;
  strict.tolerance_scale = 1e-9;
  EXPECT_FALSE(verify_state(p, QuantumState(0, 0), strict).all_pass());

  const OracleReport hyp = verify_state(hyper(3, 1.0, 2.0), QuantumState(1, 1));
  EXPECT_TRUE(hyp.all_pass());
  EXPECT_THROW(verify_state(hyper(3, 1.0, 0.1), QuantumState(0, 0)), NotBoundStateError);
}
