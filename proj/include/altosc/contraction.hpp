#pragma once

#include <optional>
#include <vector>

#include "altosc/model.hpp"

namespace altosc {

/// Flat-limit study of one state along increasing radii.
struct ContractionStudy {
  Geometry geometry = Geometry::Sphere;
  int dim = 2;
  double omega = 1.0;
  QuantumState state{0, 0};
  std::vector<double> radii;
  std::vector<double> energies;       // E(r0)
  std::vector<double> energy_errors;  // |E(r0) - omega (N + D/2)|
  std::vector<double> l2_errors;      // empty unless wavefunction_contraction ran
  /// Least-squares slope of log(error) against log(r0); nullopt if any error is exactly zero.
  std::optional<double> energy_slope;
};

/// omega (N + D/2).
double flat_energy(int dim, double omega, const QuantumState& state);

/// Energies along `radii` (strictly increasing). Every radius must keep the state bound;
/// otherwise NotBoundStateError names the offending r0.
ContractionStudy energy_contraction(Geometry geometry, int dim, double omega, const QuantumState& state,
                                    const std::vector<double>& radii);

/// Energy study plus the L2 distance between R_curved(r / r0) and R_flat(r) on [0, r_max]
/// with measure r^(D-1) dr. r_max <= 0 picks a bound where the flat tail is below 1e-12.
ContractionStudy wavefunction_contraction(Geometry geometry, int dim, double omega, const QuantumState& state,
                                          const std::vector<double>& radii, double r_max = 0.0,
                                          int grid_points = 0);

/// L2 distance of two radial profiles on [0, r_max] with r^(D-1) dr.
template <typename F, typename G>
double radial_l2_distance(F&& f, G&& g, int dim, double r_max, int panels);

/// Flat-support bound: the flat density is below 1e-12 of its peak beyond it.
double flat_support_radius(int dim, double omega, const QuantumState& state);

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Hyperboloid bound-state totals along radii (nondecreasing in the flat limit).
std::vector<int> bound_state_totals(int dim, double omega, const std::vector<double>& radii);

}  // namespace altosc

#include "altosc/quadrature.hpp"

namespace altosc {

template <typename F, typename G>
double radial_l2_distance(F&& f, G&& g, int dim, double r_max, int panels) {
  auto integrand = [&](double r) {
    const double d = f(r) - g(r);
    return d * d * std::pow(r, dim - 1);
  };
  return std::sqrt(gauss_legendre_checked(integrand, 0.0, r_max, panels, 32, 1e-10, 1 << 16, 1e-24).value);
}

}  // namespace altosc
