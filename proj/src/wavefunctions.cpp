#include "altosc/wavefunctions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "altosc/errors.hpp"
#include "altosc/specfun.hpp"

namespace altosc {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// sign(poly) * exp(log_scale) * |poly|, with exact zeros preserved.
LogValue assemble(double log_scale, double poly) {
  if (poly == 0.0 || std::isinf(log_scale)) return LogValue::zero();
  return {log_scale + std::log(std::abs(poly)), poly < 0.0 ? -1 : 1};
}

// exponent * log(base) with 0^0 = 1 and 0^p = 0 for p > 0 (signalled by -inf).
double log_power(double base, double exponent) {
  if (exponent == 0.0) return 0.0;
  if (base == 0.0) return -std::numeric_limits<double>::infinity();
  return exponent * std::log(base);
}

// log cosh(x) and log sinh(x) for x >= 0 without overflow.
double log_cosh(double x) {
  if (x < 20.0) return std::log(std::cosh(x));
  return x - kLn2 + std::log1p(std::exp(-2.0 * x));
}

double log_sinh(double x) {
  if (x < 20.0) return std::log(std::sinh(x));
  return x - kLn2 + std::log1p(-std::exp(-2.0 * x));
}

void require_geometry(const ModelParams& params, Geometry g, const char* who) {
  params.validate();
  if (params.geometry != g) throw UsageError(std::string(who) + ": wrong geometry");
}

}  // namespace

std::string_view to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::SphereChi: return "chi";
    case SampleKind::HyperboloidTau: return "tau";
    case SampleKind::FlatR: return "r";
  }
  return "?";
}

SampleKind curved_kind(Geometry g) {
  return g == Geometry::Sphere ? SampleKind::SphereChi : SampleKind::HyperboloidTau;
}

namespace {

double log_normalization_sphere(const ModelParams& params, const QuantumState& state) {
  const double n = state.n_r();
  const double L = state.L();
  const double d2 = params.half_dim();
  const double v = nu(params, state.L());
  const LogValue gammas = log_ratio_product({n + L + v + d2, n + L + d2}, {n + 1.0, n + v + 1.0, L + d2, L + d2});
  const double log_sq = std::log(2.0 * n + L + v + d2) + gammas.log_magnitude - (params.dim - 1) * kLn2 -
                        params.dim * std::log(params.radius);
  return 0.5 * log_sq;
}

}  // namespace

double normalization_sphere(const ModelParams& params, const QuantumState& state) {
  require_geometry(params, Geometry::Sphere, "normalization_sphere");
  return std::exp(log_normalization_sphere(params, state));
}

double log_prefactor_hyperboloid(const ModelParams& params, const QuantumState& state) {
  require_geometry(params, Geometry::Hyperboloid, "log_prefactor_hyperboloid");
  if (!is_bound(params, state)) throw NotBoundStateError("radial_hyperboloid: state is not bound");
  const double n = state.n_r();
  const double L = state.L();
  const double d2 = params.half_dim();
  const double v = nu(params, state.L());
  const double gap = v - 2.0 * n - L - d2;
  const LogValue gammas = log_ratio_product({v - n, n + L + d2}, {n + 1.0, gap + n + 1.0});
  const double log_sq =
      std::log(gap) + gammas.log_magnitude - (params.dim - 1) * kLn2 - params.dim * std::log(params.radius);
  return 0.5 * log_sq - log_gamma(L + d2);
}

RadialFunction::RadialFunction(const ModelParams& params, const QuantumState& state, SampleKind kind)
    : params_(params), state_(state), kind_(kind) {
  switch (kind) {
    case SampleKind::SphereChi:
      require_geometry(params, Geometry::Sphere, "radial_sphere");
      nu_ = nu(params, state.L());
      log_prefactor_ = log_normalization_sphere(params, state);
      break;
    case SampleKind::HyperboloidTau:
      nu_ = nu(params, state.L());
      log_prefactor_ = log_prefactor_hyperboloid(params, state);
      break;
    case SampleKind::FlatR: {
      if (params.dim < 2) throw DomainError("radial_flat: dimension must be at least 2");
      if (!(params.omega > 0.0) || !std::isfinite(params.omega)) {
        throw DomainError("radial_flat: omega must be positive");
      }
      const double n = state.n_r();
      const double L = state.L();
      const double d2 = params.half_dim();
      const LogValue gammas = log_ratio_product({n + L + d2}, {n + 1.0});
      log_prefactor_ = (0.5 * L + 0.25 * params.dim) * std::log(params.omega) - log_gamma(L + d2) +
                       0.5 * (kLn2 + gammas.log_magnitude);
      break;
    }
  }
}

RadialFunction::RadialFunction(const ModelParams& params, const QuantumState& state)
    : RadialFunction(params, state, curved_kind(params.geometry)) {}

LogValue RadialFunction::log_value(double coordinate) const {
  switch (kind_) {
    case SampleKind::SphereChi: return sphere(coordinate);
    case SampleKind::HyperboloidTau: return hyperboloid(coordinate);
    case SampleKind::FlatR: return flat(coordinate);
  }
  return LogValue::zero();
}

LogValue RadialFunction::sphere(double chi) const {
  if (!(chi >= 0.0 && chi <= std::numbers::pi)) throw DomainError("radial_sphere: chi outside [0, pi]");
  const double L = state_.L();
  const double d2 = params_.half_dim();
  const double half = 0.5 * chi;
  const double s = std::sin(half);
  const double c = chi == std::numbers::pi ? 0.0 : std::cos(half);

  const double log_scale = log_prefactor_ + log_power(s, L) + log_power(c, nu_ - d2 + 1.0);
  if (std::isinf(log_scale)) return LogValue::zero();
  const double poly = hyp2f1_terminating(state_.n_r(), state_.n_r() + L + nu_ + d2, L + d2, s * s);
  return assemble(log_scale, poly);
}

LogValue RadialFunction::hyperboloid(double tau) const {
  if (!(tau >= 0.0)) throw DomainError("radial_hyperboloid: tau must be >= 0");
  if (std::isinf(tau)) return LogValue::zero();
  const double n = state_.n_r();
  const double L = state_.L();
  const double d2 = params_.half_dim();
  const double half = 0.5 * tau;

  double log_sinh_part = 0.0;
  if (state_.L() > 0) {
    if (half == 0.0) return LogValue::zero();
    log_sinh_part = L * log_sinh(half);
  }
  const double log_scale = log_prefactor_ + log_sinh_part + (2.0 * n - nu_ - d2 + 1.0) * log_cosh(half);
  const double t = std::tanh(half);
  const double poly = hyp2f1_terminating(state_.n_r(), -n + nu_, L + d2, t * t);
  return assemble(log_scale, poly);
}

LogValue RadialFunction::flat(double r) const {
  if (!(r >= 0.0)) throw DomainError("radial_flat: r must be >= 0");
  if (std::isinf(r)) return LogValue::zero();
  if (state_.L() > 0 && r == 0.0) return LogValue::zero();
  const double L = state_.L();
  const double w = params_.omega;
  const double log_scale = log_prefactor_ + log_power(r, L) - 0.5 * w * r * r;
  const double poly = hyp1f1_terminating(state_.n_r(), L + params_.half_dim(), w * r * r);
  return assemble(log_scale, poly);
}

double radial_sphere(const ModelParams& params, const QuantumState& state, double chi) {
  return RadialFunction(params, state, SampleKind::SphereChi)(chi);
}

double radial_hyperboloid(const ModelParams& params, const QuantumState& state, double tau) {
  require_geometry(params, Geometry::Hyperboloid, "radial_hyperboloid");
  return RadialFunction(params, state, SampleKind::HyperboloidTau)(tau);
}

double radial_flat(int dim, double omega, const QuantumState& state, double r) {
  ModelParams flat{Geometry::Sphere, dim, 1.0, omega};
  return RadialFunction(flat, state, SampleKind::FlatR)(r);
}

double radial_curved(const ModelParams& params, const QuantumState& state, double coordinate) {
  return params.geometry == Geometry::Sphere ? radial_sphere(params, state, coordinate)
                                             : radial_hyperboloid(params, state, coordinate);
}

RadialSample sample(const ModelParams& params, const QuantumState& state, SampleKind kind,
                    const Eigen::Ref<const Eigen::VectorXd>& grid) {
  RadialSample out;
  out.params = params;
  out.state = state;
  out.kind = kind;
  out.grid = grid;
  out.values.resize(grid.size());

  const double upper = kind == SampleKind::SphereChi ? std::numbers::pi : std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= upper)) throw DomainError("sample: grid point outside the domain");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("sample: grid must be strictly increasing");
  }
  if (grid.size() == 0) return out;
  const RadialFunction radial(params, state, kind);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double v = radial(grid[i]);
    if (!std::isfinite(v)) throw NumericalError("sample: non-finite wavefunction value");
    out.values[i] = v;
  }
  return out;
}

}  // namespace altosc
