#include "altosc/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "altosc/errors.hpp"
#include "altosc/wavefunctions.hpp"

namespace altosc {

namespace {

void check_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw DomainError("contraction: radii must not be empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw DomainError("contraction: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("contraction: radii must be strictly increasing");
  }
}

}  // namespace

double flat_energy(int dim, double omega, const QuantumState& state) {
  return omega * (state.principal() + 0.5 * dim);
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("log_log_slope: need two or more matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log_log_slope: values must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ContractionStudy energy_contraction(Geometry geometry, int dim, double omega, const QuantumState& state,
                                    const std::vector<double>& radii) {
  if (!(omega > 0.0)) throw DomainError("contraction: omega must be positive");
  check_radii(radii);
  ContractionStudy study;
  study.geometry = geometry;
  study.dim = dim;
  study.omega = omega;
  study.state = state;
  study.radii = radii;
  const double limit = flat_energy(dim, omega, state);
  bool any_zero = false;
  for (double r0 : radii) {
    const ModelParams params = make_params(geometry, dim, r0, omega);
    if (!is_bound(params, state)) {
      throw NotBoundStateError("contraction: state is not bound at r0 = " + std::to_string(r0));
    }
    const double e = energy(params, state).energy;
    study.energies.push_back(e);
    study.energy_errors.push_back(std::abs(e - limit));
    any_zero = any_zero || study.energy_errors.back() == 0.0;
  }
  if (radii.size() >= 2 && !any_zero) study.energy_slope = log_log_slope(radii, study.energy_errors);
  return study;
}

double flat_support_radius(int dim, double omega, const QuantumState& state) {
  if (!(omega > 0.0)) throw DomainError("flat_support_radius: omega must be positive");
  // Envelope log density (2N + D - 1) ln r - omega r^2; the polynomial factor is covered by the margin.
  const double power = 2.0 * state.principal() + dim - 1.0;
  auto log_density = [&](double r) { return power * std::log(r) - omega * r * r; };
  const double peak = std::sqrt(power / (2.0 * omega));
  const double floor = log_density(peak) - std::log(1e14);
  double r = peak;
  const double step = 0.01 / std::sqrt(omega);
  while (log_density(r) > floor) r += step;
  return r;
}

ContractionStudy wavefunction_contraction(Geometry geometry, int dim, double omega, const QuantumState& state,
                                          const std::vector<double>& radii, double r_max, int grid_points) {
  ContractionStudy study = energy_contraction(geometry, dim, omega, state, radii);
  if (r_max <= 0.0) {
    r_max = flat_support_radius(dim, omega, state);
    // Stay on the smallest sphere; the flat tail beyond pi r0 is then outside the comparison.
    if (geometry == Geometry::Sphere) r_max = std::min(r_max, std::numbers::pi * radii.front() * (1.0 - 1e-9));
  }
  const int panels = grid_points > 0 ? grid_points : 64;
  const ModelParams flat_params = make_params(Geometry::Sphere, dim, 1.0, omega);
  const RadialFunction flat(flat_params, state, SampleKind::FlatR);
  for (double r0 : radii) {
    const ModelParams params = make_params(geometry, dim, r0, omega);
    if (geometry == Geometry::Sphere && r_max >= std::numbers::pi * r0) {
      throw DomainError("wavefunction_contraction: r_max exceeds the sphere at r0 = " + std::to_string(r0));
    }
    const RadialFunction curved(params, state);
    auto scaled = [&](double r) { return curved(r / r0); };
    study.l2_errors.push_back(radial_l2_distance(scaled, flat, dim, r_max, panels));
  }
  return study;
}

std::vector<int> bound_state_totals(int dim, double omega, const std::vector<double>& radii) {
  check_radii(radii);
  std::vector<int> totals;
  for (double r0 : radii) {
    const ModelParams params = make_params(Geometry::Hyperboloid, dim, r0, omega);
    int total = 0;
    const auto l_max = max_bound_L(params);
    if (l_max) {
      for (int L = 0; L <= *l_max; ++L) {
        const auto top = bound_state_max(params, L);
        if (top) total += *top + 1;
      }
    }
    totals.push_back(total);
  }
  return totals;
}

}  // namespace altosc
