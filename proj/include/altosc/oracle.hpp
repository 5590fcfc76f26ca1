#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "altosc/model.hpp"
#include "altosc/tridiagonal.hpp"

namespace altosc {

/// Finite-difference grid: `points` interior nodes of a uniform computational variable with
/// spacing (b - a) / (points + 1). With origin_slope > 0 the physical coordinate is the
/// stretched image x(s) = a + k s / (1 - c s) of s in [0, 1], x(1) = b, x'(0) = origin_slope.
struct FdGrid {
  double a = 0.0;
  double b = 1.0;
  int points = 16;
  double origin_slope = 0.0;

  void validate() const;
  double spacing() const { return (b - a) / (points + 1); }
  bool stretched() const { return origin_slope > 0.0; }
  /// Physical coordinate of computational position s in [0, 1].
  double map(double s) const;
  /// dx/ds.
  double map_derivative(double s) const;
  /// Same map with the interior count refined so the computational step halves.
  FdGrid refined() const;
};

/// Singular potential of the Liouville-normal (Z) form in xi = chi/2 (sphere) or rho = tau/2
/// (hyperboloid). The hyperboloid well term is attractive.
double pt_effective_potential(const ModelParams& params, int L, double x);

/// Which discretization the oracle applies to an L channel.
enum class FdForm {
  Liouville,  // Z-form, Dirichlet at both ends
  HalfPower,  // Z = f y with f^2 = sin(xi) or tanh(rho); natural boundary at the origin
};

FdForm fd_form(const ModelParams& params, int L);

/// Assembled discretization, already symmetrized by the diagonal mass.
struct FdSystem {
  SymTridiagonal<double> matrix;
  Eigen::VectorXd nodes;  // physical coordinate (xi or rho) of every unknown
  Eigen::VectorXd mass;   // diagonal mass used for the symmetrization
  FdForm form = FdForm::Liouville;
};

FdSystem fd_system(const ModelParams& params, int L, const FdGrid& grid);

struct FdEigenResult {
  Eigen::VectorXd eigenvalues;  // ascending; hyperboloid: only those below the continuum edge
  bool truncated = false;       // hyperboloid: fewer than `count` bound eigenvalues exist
};

/// Lowest `count` eigenvalues of the discretized Poschl-Teller operator (estimates of epsilon).
FdEigenResult fd_eigenvalues(const ModelParams& params, int L, const FdGrid& grid, int count);

/// Number of discrete eigenvalues below the hyperboloid continuum edge epsilon = 0.
int fd_bound_count(const ModelParams& params, int L, const FdGrid& grid);

/// (2^order * value_h2 - value_h) / (2^order - 1).
double richardson_extrapolate(double value_h, double value_h2, int order);

/// Default FD grid for an L channel. Sphere: uniform on (0, pi/2). Hyperboloid: stretched
/// grid on (0, rho_max) with rho_max from the truncation rule times `growth`.
FdGrid default_fd_grid(const ModelParams& params, int L, int points, double growth = 1.0);

/// rho_max from the truncation rule (tail and well-term bounds, safety factor 1.5).
double hyperboloid_truncation(const ModelParams& params, int L);

struct ExtrapolatedSpectrum {
  Eigen::VectorXd coarse;
  Eigen::VectorXd fine;
  Eigen::VectorXd extrapolated;
  FdGrid coarse_grid;
  FdGrid fine_grid;
  /// Hyperboloid only: largest |shift| of the extrapolated values when rho_max grows by 25%,
  /// relative to max(1, |epsilon|).
  double truncation_shift = 0.0;
};

/// FD eigenvalues at h and h/2 combined by second-order Richardson extrapolation.
/// On the hyperboloid `count` is clipped to the bound channel and the rho_max growth check runs.
ExtrapolatedSpectrum extrapolated_eigenvalues(const ModelParams& params, int L, int count, int points);

/// FD eigenvector for the k-th eigenvalue, mapped back to the quasiradial function R on the
/// chi (or tau) grid and normalized to unit 2-norm on that grid.
struct FdEigenvector {
  Eigen::VectorXd coordinate;  // chi or tau
  Eigen::VectorXd radial;      // R up to normalization
};
FdEigenvector fd_radial_eigenvector(const ModelParams& params, int L, const FdGrid& grid, int k);

/// Max over interior grid nodes (uniform in chi or tau on [grid.a, grid.b]) of the
/// central-difference residual of the quasiradial equation, divided by max |R| on the grid.
/// energy_shift perturbs E (negative control).
double ode_residual(const ModelParams& params, const QuantumState& state, const FdGrid& grid,
                    double energy_shift = 0.0);

/// Interior region used for residual checks, sampled with step h: [0.2 pi, 0.8 pi] in chi on the
/// sphere, [0.3, min(10, tau_max)] in tau on the hyperboloid.
FdGrid residual_grid(const ModelParams& params, const QuantumState& state, double h);

/// ODE residual at h, h/2, h/4, ... (at most 5 halvings) until it drops below `tolerance`.
struct ResidualRefinement {
  double step = 0.0;      // last step used
  double residual = 0.0;  // residual at that step
  double ratio = 0.0;     // residual(h) / residual(h / 2) at the starting step
};
ResidualRefinement refine_ode_residual(const ModelParams& params, const QuantumState& state, double h,
                                       double tolerance);

/// r0^D int |R|^2 (measure) over the whole coordinate range, panel doubling to 1e-12.
double normalization_integral(const ModelParams& params, const QuantumState& state);

/// r0^D int R_a R_b (measure), both states in the same L channel.
double overlap_integral(const ModelParams& params, const QuantumState& a, const QuantumState& b);

/// int_0^inf R^2 r^(D-1) dr for the flat function.
double flat_normalization_integral(int dim, double omega, const QuantumState& state);

/// Upper integration limit on the hyperboloid (tail below 1e-16 of the integral, checked by doubling).
double hyperboloid_tau_max(const ModelParams& params, const QuantumState& state);

/// Interior nodes of R, located by bisection on sign changes over a dense grid.
std::vector<double> locate_nodes(const ModelParams& params, const QuantumState& state, int grid_points = 4000);

/// One pass/fail line of a verification run.
struct OracleCheck {
  std::string label;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct OracleReport {
  std::vector<double> eigenvalues;   // FD epsilon estimates on the fine grid, ascending
  std::vector<double> extrapolated;  // Richardson-extrapolated epsilon
  std::map<std::string, double> quadratures;
  std::map<std::string, double> residuals;
  std::vector<FdGrid> grid_meta;
  std::vector<OracleCheck> checks;

  bool all_pass() const;
};

struct VerifyOptions {
  int fd_points = 0;          // 0 selects the geometry default
  double residual_step = 1e-3;
  double tolerance_scale = 1.0;  // multiplies every tolerance; < 1 forces failures in tests
};

/// Full oracle suite for one state: FD epsilon vs analytic, normalization, orthogonality with
/// the neighbouring n_r in the same channel, node count and ODE residual.
OracleReport verify_state(const ModelParams& params, const QuantumState& state, const VerifyOptions& options = {});

/// Relative FD tolerance for the channel: 1e-6 if the endpoint exponent L + (D-1)/2 >= 3/2,
/// 1e-4 otherwise.
double fd_tolerance(const ModelParams& params, int L);

}  // namespace altosc
