#pragma once

#include <Eigen/Dense>
#include <string_view>

#include "altosc/model.hpp"
#include "altosc/specfun.hpp"

namespace altosc {

enum class SampleKind { SphereChi, HyperboloidTau, FlatR };

std::string_view to_string(SampleKind kind);

/// Normalization constant C of the sphere quasiradial function,
/// r0^D * int_0^pi |R|^2 (sin chi)^(D-1) dchi = 1.
double normalization_sphere(const ModelParams& params, const QuantumState& state);

/// Logarithm of the full Gamma-ratio prefactor of the hyperboloid quasiradial function.
double log_prefactor_hyperboloid(const ModelParams& params, const QuantumState& state);

/// R(chi) on the sphere, chi in [0, pi].
double radial_sphere(const ModelParams& params, const QuantumState& state, double chi);

/// R(tau) on the hyperboloid for a bound state, tau >= 0.
double radial_hyperboloid(const ModelParams& params, const QuantumState& state, double tau);

/// Flat-space D-dimensional oscillator radial function, normalized with r^(D-1) dr.
double radial_flat(int dim, double omega, const QuantumState& state, double r);

/// Quasiradial function with its Gamma-ratio constants precomputed; a callable of the
/// coordinate (chi, tau or r according to kind).
class RadialFunction {
 public:
  RadialFunction(const ModelParams& params, const QuantumState& state, SampleKind kind);
  /// Curved function matching params.geometry.
  RadialFunction(const ModelParams& params, const QuantumState& state);

  double operator()(double coordinate) const { return log_value(coordinate).value(); }
  /// sign and log|R|; stays representable where R itself under- or overflows.
  LogValue log_value(double coordinate) const;

  SampleKind kind() const { return kind_; }
  const QuantumState& state() const { return state_; }

 private:
  LogValue sphere(double chi) const;
  LogValue hyperboloid(double tau) const;
  LogValue flat(double r) const;

  ModelParams params_;
  QuantumState state_;
  SampleKind kind_;
  double nu_ = 0.0;
  double log_prefactor_ = 0.0;
};

/// Evaluates the curved function matching params.geometry at the coordinate c.
double radial_curved(const ModelParams& params, const QuantumState& state, double coordinate);

struct RadialSample {
  ModelParams params;  // for FlatR only dim and omega are meaningful
  QuantumState state{0, 0};
  SampleKind kind = SampleKind::SphereChi;
  Eigen::VectorXd grid;
  Eigen::VectorXd values;
};

/// Element-wise evaluation on a strictly increasing grid inside the kind's domain.
RadialSample sample(const ModelParams& params, const QuantumState& state, SampleKind kind,
                    const Eigen::Ref<const Eigen::VectorXd>& grid);

/// Sample kind matching the curved geometry.
SampleKind curved_kind(Geometry g);

}  // namespace altosc
