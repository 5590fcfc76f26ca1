#include "altosc/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "altosc/errors.hpp"

namespace altosc {

namespace {

constexpr double kIdentityTolerance = 1e-10;

// Strict positivity margin for nu - 2 n_r - L - D/2.
double bound_margin(double gap_scale) { return 1e-12 * std::max(1.0, gap_scale); }

void check_identity(const ModelParams& params, const SpectralData& data) {
  if (!(epsilon_identity_defect(params, data) <= kIdentityTolerance)) {
    throw NumericalError("energy: epsilon form and closed-form energy disagree");
  }
}

}  // namespace

std::string_view to_string(Geometry g) { return g == Geometry::Sphere ? "sphere" : "hyperboloid"; }

Geometry parse_geometry(std::string_view name) {
  if (name == "sphere") return Geometry::Sphere;
  if (name == "hyperboloid") return Geometry::Hyperboloid;
  throw UsageError("unknown geometry '" + std::string(name) + "'");
}

void ModelParams::validate() const {
  if (dim < 2) throw DomainError("dimension must be at least 2");
  if (!std::isfinite(radius) || radius <= 0.0) throw DomainError("radius must be positive and finite");
  if (!std::isfinite(omega) || omega < 0.0) throw DomainError("omega must be non-negative and finite");
}

double ModelParams::well_strength() const {
  const double w = omega * radius * radius;
  return 16.0 * w * w;
}

ModelParams make_params(Geometry geometry, int dim, double radius, double omega) {
  ModelParams p{geometry, dim, radius, omega};
  p.validate();
  return p;
}

QuantumState::QuantumState(int n_r, int L) : n_r_(n_r), L_(L) {
  if (n_r < 0 || L < 0) throw DomainError("quantum numbers must be non-negative");
}

double centrifugal_index(const ModelParams& params, int L) { return L + 0.5 * (params.dim - 2); }

double nu(const ModelParams& params, int L) {
  if (L < 0) throw DomainError("nu: L must be non-negative");
  const double lambda = centrifugal_index(params, L);
  return std::sqrt(lambda * lambda + params.well_strength());
}

double potential(const ModelParams& params, double coordinate) {
  const double height = 2.0 * params.omega * params.omega * params.radius * params.radius;
  if (std::isnan(coordinate) || coordinate < 0.0) throw DomainError("potential: coordinate must be >= 0");
  if (params.geometry == Geometry::Sphere) {
    if (coordinate > std::numbers::pi) throw DomainError("potential: chi outside [0, pi)");
    if (coordinate == std::numbers::pi) throw InfinitePotentialError("potential: pole at chi = pi");
    const double t = std::tan(0.5 * coordinate);
    return height * t * t;
  }
  const double t = std::tanh(0.5 * coordinate);
  return height * t * t;
}

double potential_ambient(const ModelParams& params, double x0) {
  const double r0 = params.radius;
  const double height = 2.0 * params.omega * params.omega * r0 * r0;
  if (std::isnan(x0)) throw DomainError("potential_ambient: x0 is NaN");
  if (params.geometry == Geometry::Sphere) {
    if (std::abs(x0) > r0) throw DomainError("potential_ambient: |x0| must not exceed r0 on the sphere");
    if (x0 == -r0) throw InfinitePotentialError("potential_ambient: pole at the south pole x0 = -r0");
    return height * (r0 - x0) / (r0 + x0);
  }
  if (x0 < r0) throw DomainError("potential_ambient: x0 must be >= r0 on the hyperboloid");
  if (std::isinf(x0)) return height;
  return height * (x0 - r0) / (x0 + r0);
}

SpectralData energy_sphere(const ModelParams& params, const QuantumState& state) {
  params.validate();
  if (params.geometry != Geometry::Sphere) throw UsageError("energy_sphere: geometry is not a sphere");
  const double D = params.dim;
  const double d2 = 0.5 * D;
  const double N = state.principal();
  const double L = state.L();
  const double v = nu(params, state.L());
  const double r0 = params.radius;

  SpectralData out;
  out.nu = v;
  const double root = N + v + d2;
  out.epsilon = root * root;
  out.energy = ((N + 1.0) * (N + D) + (2.0 * v - 1.0) * (N + d2) + L * (L + D - 2.0) - d2 * (D - 1.0)) /
               (8.0 * r0 * r0);
  check_identity(params, out);
  return out;
}

SpectralData energy_hyperboloid(const ModelParams& params, const QuantumState& state) {
  params.validate();
  if (params.geometry != Geometry::Hyperboloid) {
    throw UsageError("energy_hyperboloid: geometry is not a hyperboloid");
  }
  if (!is_bound(params, state)) throw NotBoundStateError("energy_hyperboloid: state is not bound");
  const double D = params.dim;
  const double d2 = 0.5 * D;
  const double N = state.principal();
  const double L = state.L();
  const double v = nu(params, state.L());
  const double r0 = params.radius;

  SpectralData out;
  out.nu = v;
  const double root = N - v + d2;
  out.epsilon = -root * root;
  out.energy = ((2.0 * v - 1.0) * (N + d2) - N * (N + D - 1.0) - L * (L + D - 2.0) + d2 * (D - 1.0)) /
               (8.0 * r0 * r0);
  check_identity(params, out);
  return out;
}

SpectralData energy(const ModelParams& params, const QuantumState& state) {
  return params.geometry == Geometry::Sphere ? energy_sphere(params, state)
                                             : energy_hyperboloid(params, state);
}

std::optional<int> bound_state_max(const ModelParams& params, int L) {
  params.validate();
  if (L < 0) throw DomainError("bound_state_max: L must be non-negative");
  if (params.geometry != Geometry::Hyperboloid) throw UsageError("bound_state_max: hyperboloid only");
  const double gap = nu(params, L) - L - params.half_dim();
  const double margin = bound_margin(gap);
  if (gap <= margin) return std::nullopt;
  int top = static_cast<int>(std::floor(0.5 * gap));
  if (gap - 2.0 * top <= margin) --top;  // edge state with zero norm
  if (top < 0) return std::nullopt;
  return top;
}

bool is_bound(const ModelParams& params, const QuantumState& state) {
  if (params.geometry == Geometry::Sphere) return true;
  const auto top = bound_state_max(params, state.L());
  return top && state.n_r() <= *top;
}

double continuum_threshold(const ModelParams& params) {
  const double r0 = params.radius;
  const double d1 = params.dim - 1.0;
  return 2.0 * params.omega * params.omega * r0 * r0 + d1 * d1 / (8.0 * r0 * r0);
}

std::optional<int> max_bound_L(const ModelParams& params) {
  // nu - L - D/2 decreases in L, so the bound channels form a prefix 0..L_max.
  std::optional<int> best;
  for (int L = 0;; ++L) {
    if (!bound_state_max(params, L)) break;
    best = L;
  }
  return best;
}

std::vector<SpectrumEntry> spectrum_table(const ModelParams& params, int n_max) {
  params.validate();
  if (n_max < 0) throw DomainError("spectrum_table: N_max must be non-negative");
  std::vector<SpectrumEntry> rows;
  for (int L = 0; L <= n_max; ++L) {
    for (int n_r = 0; 2 * n_r + L <= n_max; ++n_r) {
      QuantumState s(n_r, L);
      if (!is_bound(params, s)) continue;
      rows.push_back({s, energy(params, s)});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    return std::tuple(a.data.energy, a.state.L(), a.state.n_r()) <
           std::tuple(b.data.energy, b.state.L(), b.state.n_r());
  });
  return rows;
}

double epsilon_identity_defect(const ModelParams& params, const SpectralData& data) {
  const double r0 = params.radius;
  const double d1 = params.dim - 1.0;
  const double shift = d1 * d1 + params.well_strength();
  const double scaled_energy = 8.0 * r0 * r0 * data.energy;
  const double rhs = params.geometry == Geometry::Sphere ? scaled_energy + shift : scaled_energy - shift;
  const double scale = std::max({std::abs(data.epsilon), std::abs(scaled_energy), shift, 1e-300});
  return std::abs(rhs - data.epsilon) / scale;
}

}  // namespace altosc
