#include "altosc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "altosc/errors.hpp"
#include "altosc/quadrature.hpp"
#include "altosc/wavefunctions.hpp"

namespace altosc {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kQuadratureTolerance = 1e-12;
constexpr int kSpherePoints = 1999;
constexpr int kHyperboloidPoints = 8000;
constexpr double kHyperboloidOriginSlope = 0.5;

std::string state_label(const QuantumState& s) {
  return "n_r=" + std::to_string(s.n_r()) + ",L=" + std::to_string(s.L());
}

// Coefficients of -(p u')' + q u = eps w u in the physical variable.
struct SlCoefficients {
  double p;
  double q;
  double w;
};

SlCoefficients sl_coefficients(const ModelParams& params, int L, FdForm form, double x) {
  const double v = nu(params, L);
  const double lambda = centrifugal_index(params, L);
  if (form == FdForm::Liouville) return {1.0, pt_effective_potential(params, L, x), 1.0};
  if (params.geometry == Geometry::Sphere) {
    const double s = std::sin(x);
    const double c = std::cos(x);
    double u = (v * v - 0.25) / (c * c) + 0.25;
    if (lambda != 0.0) u += lambda * lambda / (s * s);
    return {s, s * u, s};
  }
  const double t = std::tanh(x);
  const double ch = std::cosh(x);
  double u = -(v * v - 1.0) / (ch * ch);
  if (lambda != 0.0) {
    const double sh = std::sinh(x);
    u += lambda * lambda / (sh * sh);
  }
  return {t, t * u, t};
}

}  // namespace

void FdGrid::validate() const {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw DomainError("FdGrid: need finite a < b");
  if (points < 16) throw DomainError("FdGrid: at least 16 interior points required");
  if (origin_slope < 0.0) throw DomainError("FdGrid: origin slope must be non-negative");
}

double FdGrid::map(double s) const {
  const double span = b - a;
  if (!stretched()) return a + span * s;
  const double c = 1.0 - origin_slope / span;
  return a + origin_slope * s / (1.0 - c * s);
}

double FdGrid::map_derivative(double s) const {
  const double span = b - a;
  if (!stretched()) return span;
  const double c = 1.0 - origin_slope / span;
  const double d = 1.0 - c * s;
  return origin_slope / (d * d);
}

FdGrid FdGrid::refined() const {
  FdGrid g = *this;
  g.points = 2 * points + 1;
  return g;
}

double pt_effective_potential(const ModelParams& params, int L, double x) {
  params.validate();
  const double v = nu(params, L);
  const double lambda = centrifugal_index(params, L);
  const double well = v * v - 0.25;
  const double centrifugal = lambda * lambda - 0.25;
  if (params.geometry == Geometry::Sphere) {
    if (!(x > 0.0 && x < kHalfPi)) throw DomainError("pt_effective_potential: xi must lie in (0, pi/2)");
    const double s = std::sin(x);
    const double c = std::cos(x);
    return well / (c * c) + (centrifugal == 0.0 ? 0.0 : centrifugal / (s * s));
  }
  if (!(x > 0.0)) throw DomainError("pt_effective_potential: rho must be positive");
  if (std::isinf(x)) return 0.0;
  const double ch = std::cosh(x);
  const double sh = std::sinh(x);
  return -well / (ch * ch) + (centrifugal == 0.0 ? 0.0 : centrifugal / (sh * sh));
}

FdForm fd_form(const ModelParams& params, int L) {
  return centrifugal_index(params, L) < 0.5 ? FdForm::HalfPower : FdForm::Liouville;
}

FdSystem fd_system(const ModelParams& params, int L, const FdGrid& grid) {
  params.validate();
  grid.validate();
  const FdForm form = fd_form(params, L);
  const bool natural = form == FdForm::HalfPower;
  const double hs = 1.0 / (grid.points + 1);
  const int first = natural ? 0 : 1;
  const Eigen::Index n = grid.points + 1 - first;

  auto computational = [&](double s) {
    const double x = grid.map(s);
    const double dx = grid.map_derivative(s);
    const SlCoefficients c = sl_coefficients(params, L, form, x);
    return SlCoefficients{c.p / dx, c.q * dx, c.w * dx};
  };

  Eigen::VectorXd diag(n), off(std::max<Eigen::Index>(n - 1, 0)), mass(n), nodes(n);
  Eigen::VectorXd flux_right(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double s = (k + first) * hs;
    flux_right[k] = computational(s + 0.5 * hs).p;
    nodes[k] = grid.map(s);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double s = (k + first) * hs;
    if (natural && k == 0) {
      // Half cell [0, hs/2] with zero flux through the origin.
      const GaussLegendreRule& rule = gauss_legendre_rule(8);
      double q_cell = 0.0;
      double w_cell = 0.0;
      for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
        const double sj = 0.25 * hs * (1.0 + rule.nodes[j]);
        const SlCoefficients c = computational(sj);
        q_cell += rule.weights[j] * c.q;
        w_cell += rule.weights[j] * c.w;
      }
      q_cell *= 0.25;  // (hs/4) / hs
      w_cell *= 0.25;
      diag[k] = flux_right[k] / (hs * hs) + q_cell;
      mass[k] = w_cell;
    } else {
      const SlCoefficients c = computational(s);
      const double flux_left = computational(s - 0.5 * hs).p;
      diag[k] = (flux_left + flux_right[k]) / (hs * hs) + c.q;
      mass[k] = c.w;
    }
    if (k + 1 < n) off[k] = -flux_right[k] / (hs * hs);
  }

  FdSystem sys;
  sys.form = form;
  sys.nodes = nodes;
  sys.mass = mass;
  const Eigen::VectorXd inv_sqrt = mass.cwiseSqrt().cwiseInverse();
  sys.matrix.diag = diag.cwiseProduct(inv_sqrt).cwiseProduct(inv_sqrt);
  sys.matrix.off = off.cwiseProduct(inv_sqrt.head(n - 1)).cwiseProduct(inv_sqrt.tail(n - 1));
  if (!sys.matrix.diag.allFinite() || !sys.matrix.off.allFinite()) {
    throw NumericalError("fd_system: non-finite matrix entry");
  }
  return sys;
}

FdEigenResult fd_eigenvalues(const ModelParams& params, int L, const FdGrid& grid, int count) {
  if (count < 0) throw DomainError("fd_eigenvalues: count must be non-negative");
  const FdSystem sys = fd_system(params, L, grid);
  FdEigenResult out;
  Eigen::Index available = std::min<Eigen::Index>(count, sys.matrix.size());
  if (params.geometry == Geometry::Hyperboloid) {
    const Eigen::Index below = sys.matrix.count_below(0.0);
    if (below < count) out.truncated = true;
    available = std::min(available, below);
  }
  out.eigenvalues = sys.matrix.lowest_eigenvalues(available);
  if (!out.eigenvalues.allFinite()) throw NumericalError("fd_eigenvalues: non-finite eigenvalue");
  return out;
}

int fd_bound_count(const ModelParams& params, int L, const FdGrid& grid) {
  if (params.geometry != Geometry::Hyperboloid) throw UsageError("fd_bound_count: hyperboloid only");
  return static_cast<int>(fd_system(params, L, grid).matrix.count_below(0.0));
}

double richardson_extrapolate(double value_h, double value_h2, int order) {
  if (order < 1) throw DomainError("richardson_extrapolate: order must be >= 1");
  const double factor = std::ldexp(1.0, order);
  return (factor * value_h2 - value_h) / (factor - 1.0);
}

double hyperboloid_truncation(const ModelParams& params, int L) {
  const double v = nu(params, L);
  const auto top = bound_state_max(params, L);
  double kappa = 1.0;
  if (top) kappa = v - 2.0 * *top - L - params.half_dim();
  const double eps_target = kappa * kappa;
  // Well term (nu^2 - 1/4) / cosh^2 rho below 1e-12 |eps|.
  double rho_well = 0.0;
  const double well = v * v - 0.25;
  if (well > 0.0) rho_well = std::acosh(std::sqrt(std::max(1.0, well / (1e-12 * eps_target))));
  // Slowest bound tail exp(-kappa rho) below 1e-12 of its peak.
  const double rho_tail = std::log(1e12) / kappa;
  return 1.5 * std::max(rho_well, rho_tail);
}

FdGrid default_fd_grid(const ModelParams& params, int L, int points, double growth) {
  params.validate();
  if (params.geometry == Geometry::Sphere) {
    return FdGrid{0.0, kHalfPi, points > 0 ? points : kSpherePoints, 0.0};
  }
  const double rho_max = growth * hyperboloid_truncation(params, L);
  return FdGrid{0.0, rho_max, points > 0 ? points : kHyperboloidPoints, kHyperboloidOriginSlope};
}

ExtrapolatedSpectrum extrapolated_eigenvalues(const ModelParams& params, int L, int count, int points) {
  ExtrapolatedSpectrum out;
  out.coarse_grid = default_fd_grid(params, L, points);
  out.fine_grid = out.coarse_grid.refined();

  auto run = [&](const FdGrid& coarse, const FdGrid& fine, int wanted, Eigen::VectorXd& c, Eigen::VectorXd& f) {
    c = fd_eigenvalues(params, L, coarse, wanted).eigenvalues;
    f = fd_eigenvalues(params, L, fine, static_cast<int>(c.size())).eigenvalues;
    const Eigen::Index m = std::min(c.size(), f.size());
    Eigen::VectorXd r(m);
    for (Eigen::Index k = 0; k < m; ++k) r[k] = richardson_extrapolate(c[k], f[k], 2);
    c.conservativeResize(m);
    f.conservativeResize(m);
    return r;
  };

  int wanted = count;
  if (params.geometry == Geometry::Hyperboloid) {
    const auto top = bound_state_max(params, L);
    wanted = std::min(count, top ? *top + 1 : 0);
  }
  out.extrapolated = run(out.coarse_grid, out.fine_grid, wanted, out.coarse, out.fine);

  if (params.geometry == Geometry::Hyperboloid && out.extrapolated.size() > 0) {
    const FdGrid grown = default_fd_grid(params, L, out.coarse_grid.points, 1.25);
    Eigen::VectorXd c2, f2;
    const Eigen::VectorXd r2 = run(grown, grown.refined(), static_cast<int>(out.extrapolated.size()), c2, f2);
    const Eigen::Index m = std::min(r2.size(), out.extrapolated.size());
    double shift = r2.size() == out.extrapolated.size() ? 0.0 : std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < m; ++k) {
      shift = std::max(shift, std::abs(r2[k] - out.extrapolated[k]) / std::max(1.0, std::abs(out.extrapolated[k])));
    }
    out.truncation_shift = shift;
  }
  return out;
}

FdEigenvector fd_radial_eigenvector(const ModelParams& params, int L, const FdGrid& grid, int k) {
  const FdSystem sys = fd_system(params, L, grid);
  if (k < 0 || k >= sys.matrix.size()) throw DomainError("fd_radial_eigenvector: index out of range");
  const double lambda = sys.matrix.eigenvalue(k);
  const Eigen::VectorXd y = sys.matrix.eigenvector(lambda);
  const double power = 0.5 * (params.dim - 1);

  FdEigenvector out;
  out.coordinate = 2.0 * sys.nodes;
  out.radial.resize(y.size());
  const bool sphere = params.geometry == Geometry::Sphere;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double x = sys.nodes[i];
    const double u = y[i] / std::sqrt(sys.mass[i]);
    if (sys.form == FdForm::HalfPower) {
      // D = 2, L = 0: R = sqrt(f^2 / S) u with f^2 / S = 1 / (2 cos xi) or 1 / (2 cosh^2 rho).
      out.radial[i] = sphere ? u / std::sqrt(2.0 * std::cos(x)) : u / (std::numbers::sqrt2 * std::cosh(x));
    } else if (sphere) {
      out.radial[i] = u / std::pow(std::sin(2.0 * x), power);
    } else {
      const double log_sinh = 2.0 * x < 20.0 ? std::log(std::sinh(2.0 * x)) : 2.0 * x - std::numbers::ln2;
      out.radial[i] = u * std::exp(-power * log_sinh);
    }
  }
  out.radial /= out.radial.norm();
  return out;
}

double ode_residual(const ModelParams& params, const QuantumState& state, const FdGrid& grid, double energy_shift) {
  params.validate();
  grid.validate();
  const SpectralData data = energy(params, state);
  const double E = data.energy + energy_shift;
  const double r0 = params.radius;
  const double D = params.dim;
  const double L = state.L();
  const double h = grid.spacing();
  const RadialFunction radial(params, state);

  const int total = grid.points + 2;
  Eigen::VectorXd x(total), R(total);
  for (int i = 0; i < total; ++i) {
    x[i] = grid.a + i * h;
    R[i] = radial(x[i]);
  }
  const double scale = R.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) throw NumericalError("ode_residual: wavefunction vanishes on the grid");

  const double w2r4 = 4.0 * params.omega * params.omega * r0 * r0 * r0 * r0;
  double worst = 0.0;
  for (int i = 1; i + 1 < total; ++i) {
    const double d2 = (R[i + 1] - 2.0 * R[i] + R[i - 1]) / (h * h);
    const double d1 = (R[i + 1] - R[i - 1]) / (2.0 * h);
    double friction = 0.0;
    double centrifugal = 0.0;
    double pot = 0.0;
    if (params.geometry == Geometry::Sphere) {
      const double s = std::sin(x[i]);
      const double t = std::tan(0.5 * x[i]);
      friction = (D - 1.0) * std::cos(x[i]) / s;
      centrifugal = L * (L + D - 2.0) / (s * s);
      pot = w2r4 * t * t;
    } else {
      const double s = std::sinh(x[i]);
      const double t = std::tanh(0.5 * x[i]);
      friction = (D - 1.0) / std::tanh(x[i]);
      centrifugal = L * (L + D - 2.0) / (s * s);
      pot = w2r4 * t * t;
    }
    const double res = d2 + friction * d1 + (2.0 * r0 * r0 * E - centrifugal - pot) * R[i];
    worst = std::max(worst, std::abs(res));
  }
  return worst / scale;
}

FdGrid residual_grid(const ModelParams& params, const QuantumState& state, double h) {
  if (!(h > 0.0)) throw DomainError("residual_grid: step must be positive");
  const bool sphere = params.geometry == Geometry::Sphere;
  const double lo = sphere ? 0.2 * std::numbers::pi : 0.5;
  const double hi = sphere ? 0.8 * std::numbers::pi : std::min(10.0, hyperboloid_tau_max(params, state));
  const int intervals = std::max(17, static_cast<int>(std::round((hi - lo) / h)));
  return FdGrid{lo, hi, intervals - 1, 0.0};
}

ResidualRefinement refine_ode_residual(const ModelParams& params, const QuantumState& state, double h,
                                       double tolerance) {
  ResidualRefinement out;
  FdGrid grid = residual_grid(params, state, h);
  out.residual = ode_residual(params, state, grid);
  // Order from the first halving; much finer steps reach the evaluation roundoff floor.
  out.ratio = out.residual / ode_residual(params, state, grid.refined());
  for (int i = 0; i < 5 && out.residual >= tolerance; ++i) {
    grid = grid.refined();
    out.residual = ode_residual(params, state, grid);
  }
  out.step = grid.spacing();
  return out;
}

double hyperboloid_tau_max(const ModelParams& params, const QuantumState& state) {
  const RadialFunction radial(params, state);
  const double gap = nu(params, state.L()) - state.principal() - params.half_dim();
  const double rD = std::pow(params.radius, params.dim);
  auto density = [&](double tau) {
    const LogValue r = radial.log_value(tau);
    if (r.sign == 0) return 0.0;
    const double log_sinh = tau < 40.0 ? std::log(std::sinh(tau)) : tau - std::numbers::ln2;
    return rD * std::exp(2.0 * r.log_magnitude + (params.dim - 1) * log_sinh);
  };
  // The density decays like exp(-gap * tau); its tail integral is about density / gap.
  double tau = std::max(8.0, 4.0 / gap);
  for (int i = 0; i < 200 && density(tau) / gap >= 1e-16; ++i) tau *= 1.25;
  return tau;
}

double normalization_integral(const ModelParams& params, const QuantumState& state) {
  return overlap_integral(params, state, state);
}

double overlap_integral(const ModelParams& params, const QuantumState& a, const QuantumState& b) {
  params.validate();
  if (a.L() != b.L()) throw UsageError("overlap_integral: states must share L");
  const RadialFunction ra(params, a);
  const RadialFunction rb(params, b);
  const double rD = std::pow(params.radius, params.dim);
  const int power = params.dim - 1;

  if (params.geometry == Geometry::Sphere) {
    auto f = [&](double chi) { return rD * ra(chi) * rb(chi) * std::pow(std::sin(chi), power); };
    return gauss_legendre_checked(f, 0.0, std::numbers::pi, 8, 32, kQuadratureTolerance, 1 << 16, 1.0).value;
  }
  auto f = [&](double tau) {
    const double log_sinh = tau < 40.0 ? std::log(std::sinh(tau)) : tau - std::numbers::ln2;
    const LogValue prod = ra.log_value(tau) * rb.log_value(tau);
    if (prod.sign == 0) return 0.0;
    return prod.sign * rD * std::exp(prod.log_magnitude + power * log_sinh);
  };
  const double tau_max = std::max(hyperboloid_tau_max(params, a), hyperboloid_tau_max(params, b));
  const int panels = std::max(8, static_cast<int>(std::ceil(tau_max)));
  const double value = gauss_legendre_checked(f, 0.0, tau_max, panels, 32, kQuadratureTolerance, 1 << 20, 1.0).value;
  const double tail = gauss_legendre_checked(f, tau_max, 2.0 * tau_max, panels, 32, kQuadratureTolerance, 1 << 20, 1.0).value;
  if (std::abs(tail) >= 1e-12) throw AccuracyError("overlap_integral: doubling tau_max changed the integral");
  return value + tail;
}

double flat_normalization_integral(int dim, double omega, const QuantumState& state) {
  const ModelParams flat{Geometry::Sphere, dim, 1.0, omega};
  const RadialFunction radial(flat, state, SampleKind::FlatR);
  // Support bound: exp(-omega r^2) r^(2N + D - 1) below 1e-16 of its peak.
  const double peak = std::sqrt((state.principal() + 0.5 * dim) / omega);
  const double r_max = peak + std::sqrt(2.0 * 40.0 / omega) + 1.0;
  auto f = [&](double r) {
    const double v = radial(r);
    return v * v * std::pow(r, dim - 1);
  };
  return gauss_legendre_checked(f, 0.0, r_max, 8, 32, kQuadratureTolerance, 1 << 16, 1.0).value;
}

std::vector<double> locate_nodes(const ModelParams& params, const QuantumState& state, int grid_points) {
  const RadialFunction radial(params, state);
  const double lo = 0.0;
  const double hi = params.geometry == Geometry::Sphere ? std::numbers::pi : hyperboloid_tau_max(params, state);
  std::vector<double> nodes;
  // Open interval: skip the endpoints where R may vanish identically.
  const double h = (hi - lo) / grid_points;
  double x_prev = lo + 0.5 * h;
  double f_prev = radial(x_prev);
  for (int i = 1; i < grid_points; ++i) {
    const double x = lo + (i + 0.5) * h;
    const double f = radial(x);
    if (f == 0.0 && f_prev == 0.0) {
      x_prev = x;
      continue;
    }
    if ((f_prev < 0.0 && f > 0.0) || (f_prev > 0.0 && f < 0.0)) {
      double a = x_prev;
      double b = x;
      double fa = f_prev;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = radial(m);
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      nodes.push_back(0.5 * (a + b));
    }
    x_prev = x;
    f_prev = f;
  }
  return nodes;
}

double fd_tolerance(const ModelParams& params, int L) {
  const double exponent = L + 0.5 * (params.dim - 1);
  return exponent >= 1.5 ? 1e-6 : 1e-4;
}

bool OracleReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.pass; });
}

OracleReport verify_state(const ModelParams& params, const QuantumState& state, const VerifyOptions& options) {
  params.validate();
  if (!is_bound(params, state)) throw NotBoundStateError("verify: state is not bound");
  OracleReport report;
  const double scale = options.tolerance_scale;
  auto add = [&](std::string label, double value, double tolerance) {
    report.checks.push_back({std::move(label), value, tolerance, value <= tolerance});
  };
  const SpectralData analytic = energy(params, state);

  // Spectrum: FD epsilon vs the quantization rule.
  const ExtrapolatedSpectrum fd = extrapolated_eigenvalues(params, state.L(), state.n_r() + 1, options.fd_points);
  report.grid_meta = {fd.coarse_grid, fd.fine_grid};
  report.eigenvalues.assign(fd.fine.data(), fd.fine.data() + fd.fine.size());
  report.extrapolated.assign(fd.extrapolated.data(), fd.extrapolated.data() + fd.extrapolated.size());
  double eps_error = std::numeric_limits<double>::infinity();
  if (fd.extrapolated.size() > state.n_r()) {
    eps_error = std::abs(fd.extrapolated[state.n_r()] - analytic.epsilon) / std::abs(analytic.epsilon);
  }
  report.residuals["epsilon_relative_error"] = eps_error;
  add("fd_epsilon", eps_error, scale * fd_tolerance(params, state.L()));
  if (params.geometry == Geometry::Hyperboloid) {
    report.residuals["truncation_shift"] = fd.truncation_shift;
    add("rho_max growth shift", fd.truncation_shift, scale * 1e-8);
    const int fd_count = fd_bound_count(params, state.L(), fd.fine_grid);
    const auto top = bound_state_max(params, state.L());
    const int expected = top ? *top + 1 : 0;
    report.quadratures["fd_bound_count"] = fd_count;
    add("bound count", std::abs(fd_count - expected), 0.0);
  }

  // Normalization and orthogonality.
  const double norm = normalization_integral(params, state);
  report.quadratures["normalization " + state_label(state)] = norm;
  add("normalization", std::abs(norm - 1.0), scale * 1e-9);

  const QuantumState neighbour(state.n_r() > 0 ? state.n_r() - 1 : state.n_r() + 1, state.L());
  if (is_bound(params, neighbour)) {
    const double overlap = overlap_integral(params, state, neighbour);
    report.quadratures["overlap " + state_label(state) + " | " + state_label(neighbour)] = overlap;
    add("orthogonality", std::abs(overlap), scale * 1e-9);
  }

  // Nodes.
  const auto nodes = locate_nodes(params, state);
  report.quadratures["node_count"] = static_cast<double>(nodes.size());
  add("node count", std::abs(static_cast<double>(nodes.size()) - state.n_r()), 0.0);

  // ODE residual on a smooth interior region; the step halves until the tolerance is met.
  const ResidualRefinement ode = refine_ode_residual(params, state, options.residual_step, scale * 1e-5);
  report.residuals["ode_residual"] = ode.residual;
  report.residuals["ode_residual_step"] = ode.step;
  report.grid_meta.push_back(residual_grid(params, state, ode.step));
  add("ode residual", ode.residual, scale * 1e-5);
  if (ode.ratio > 0.0) {
    report.residuals["ode_residual_ratio"] = ode.ratio;
    add("ode residual order", std::abs(ode.ratio - 4.0), 0.5);
  }

  return report;
}

}  // namespace altosc
