#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace altosc {

enum class Geometry { Sphere, Hyperboloid };

std::string_view to_string(Geometry g);
/// Parses "sphere" / "hyperboloid"; throws UsageError otherwise.
Geometry parse_geometry(std::string_view name);

/// Physical configuration in units with m = hbar = 1.
struct ModelParams {
  Geometry geometry = Geometry::Sphere;
  int dim = 2;          // D >= 2
  double radius = 1.0;  // r0 > 0
  double omega = 0.0;   // >= 0

  /// Throws DomainError if D < 2, r0 <= 0, omega < 0 or anything non-finite.
  void validate() const;

  double half_dim() const { return 0.5 * dim; }
  /// 16 omega^2 r0^4, the well-strength shift inside nu.
  double well_strength() const;
};

ModelParams make_params(Geometry geometry, int dim, double radius, double omega);

/// Quasiradial number n_r and angular momentum L; N = 2 n_r + L is derived.
class QuantumState {
 public:
  QuantumState(int n_r, int L);

  int n_r() const { return n_r_; }
  int L() const { return L_; }
  int principal() const { return 2 * n_r_ + L_; }

  friend bool operator==(const QuantumState&, const QuantumState&) = default;

 private:
  int n_r_;
  int L_;
};

struct SpectralData {
  double nu = 0.0;
  double epsilon = 0.0;
  double energy = 0.0;
};

/// lambda = L + (D-2)/2, the centrifugal index of the Poschl-Teller forms.
double centrifugal_index(const ModelParams& params, int L);

/// nu = sqrt((L + (D-2)/2)^2 + 16 omega^2 r0^4), shared by both geometries.
double nu(const ModelParams& params, int L);

/// V = 2 omega^2 r0^2 tan^2(chi/2) on the sphere, 2 omega^2 r0^2 tanh^2(tau/2) on the hyperboloid.
double potential(const ModelParams& params, double coordinate);

/// The same potential in terms of the ambient coordinate x0.
double potential_ambient(const ModelParams& params, double x0);

SpectralData energy_sphere(const ModelParams& params, const QuantumState& state);
SpectralData energy_hyperboloid(const ModelParams& params, const QuantumState& state);
/// Dispatches on params.geometry.
SpectralData energy(const ModelParams& params, const QuantumState& state);

/// Largest bound n_r in the L channel of the hyperboloid, or nullopt if the channel is empty.
/// States with nu - 2 n_r - L - D/2 == 0 are not bound (their norm constant vanishes).
std::optional<int> bound_state_max(const ModelParams& params, int L);

/// True if the state belongs to the discrete spectrum (always true on the sphere).
bool is_bound(const ModelParams& params, const QuantumState& state);

/// Energy of the hyperboloid continuum edge (epsilon = 0): 2 omega^2 r0^2 + (D-1)^2 / (8 r0^2).
double continuum_threshold(const ModelParams& params);

/// Largest L with a non-empty bound channel on the hyperboloid, nullopt if there is none.
std::optional<int> max_bound_L(const ModelParams& params);

struct SpectrumEntry {
  QuantumState state;
  SpectralData data;
};

/// All (n_r, L) with N <= n_max (bound states only on the hyperboloid), ascending in E,
/// ties broken by (L, n_r).
std::vector<SpectrumEntry> spectrum_table(const ModelParams& params, int n_max);

/// Relative mismatch of the epsilon identity, scaled by the largest term in it.
double epsilon_identity_defect(const ModelParams& params, const SpectralData& data);

}  // namespace altosc
