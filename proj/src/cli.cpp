#include "altosc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <variant>
#include <vector>

#include "altosc/contraction.hpp"
#include "altosc/errors.hpp"
#include "altosc/oracle.hpp"
#include "altosc/wavefunctions.hpp"

namespace altosc::cli {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<long long, double, std::string, bool>;

constexpr int kDefaultNmax = 3;
constexpr int kDefaultSamples = 201;
constexpr double kIdentityTolerance = 1e-10;

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Wavefn: return "wavefn";
    case Command::Verify: return "verify";
    case Command::Contract: return "contract";
    case Command::BoundCount: return "bound-count";
  }
  return "";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json to_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return to_json(v);
        } else {
          return Json(v);
        }
      },
      c);
}

std::string csv_field(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char ch : v) {
            if (ch == '"') quoted += '"';
            quoted += ch;
          }
          return quoted + "\"";
        }
      },
      c);
}

struct Document {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  Json meta = Json::object();
  int status = kExitOk;
};

Json grid_json(const FdGrid& g) {
  Json j;
  j["a"] = to_json(g.a);
  j["b"] = to_json(g.b);
  j["points"] = g.points;
  j["origin_slope"] = to_json(g.origin_slope);
  return j;
}

std::string render(const RunConfig& config, const Document& doc) {
  if (config.format == Format::Csv) {
    std::string out;
    for (std::size_t i = 0; i < doc.columns.size(); ++i) out += (i ? "," : "") + doc.columns[i];
    out += '\n';
    for (const auto& row : doc.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
      out += '\n';
    }
    return out;
  }
  Json j;
  j["command"] = command_name(config.command);
  j["params"] = {{"geometry", to_string(config.params.geometry)},
                 {"dim", config.params.dim},
                 {"radius", to_json(config.params.radius)},
                 {"omega", to_json(config.params.omega)}};
  Json rows = Json::array();
  for (const auto& row : doc.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[doc.columns[i]] = to_json(row[i]);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["meta"] = doc.meta;
  return j.dump(2) + "\n";
}

Document spectrum(const RunConfig& config) {
  Document doc;
  doc.columns = {"n_r", "L", "N", "nu", "epsilon", "E"};
  for (const auto& entry : spectrum_table(config.params, config.n_max.value_or(kDefaultNmax))) {
    doc.rows.push_back({static_cast<long long>(entry.state.n_r()), static_cast<long long>(entry.state.L()),
                        static_cast<long long>(entry.state.principal()), entry.data.nu, entry.data.epsilon,
                        entry.data.energy});
  }
  doc.meta["tolerances"] = {{"epsilon_identity", kIdentityTolerance}};
  doc.meta["grid"] = nullptr;
  return doc;
}

Document wavefn(const RunConfig& config) {
  const QuantumState state(config.n_r, config.L);
  const SampleKind kind = curved_kind(config.params.geometry);
  double hi = config.coord_max;
  if (hi == 0.0) {
    hi = config.params.geometry == Geometry::Sphere ? std::numbers::pi : hyperboloid_tau_max(config.params, state);
  }
  const int n = config.grid_points > 0 ? config.grid_points : kDefaultSamples;
  const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(n, 0.0, hi);
  const RadialSample s = sample(config.params, state, kind, grid);
  Document doc;
  doc.columns = {std::string(to_string(kind)), "R"};
  for (Eigen::Index i = 0; i < s.grid.size(); ++i) doc.rows.push_back({s.grid[i], s.values[i]});
  doc.meta["state"] = {{"n_r", config.n_r}, {"L", config.L}};
  doc.meta["tolerances"] = Json::object();
  doc.meta["grid"] = {{"a", 0.0}, {"b", to_json(hi)}, {"points", n}};
  return doc;
}

Document verify(const RunConfig& config) {
  std::vector<QuantumState> states;
  if (config.n_max) {
    for (const auto& e : spectrum_table(config.params, *config.n_max)) states.push_back(e.state);
  } else {
    states.emplace_back(config.n_r, config.L);
  }
  VerifyOptions options;
  options.fd_points = config.grid_points;

  Document doc;
  doc.columns = {"n_r", "L", "check", "value", "tolerance", "pass"};
  Json per_state = Json::array();
  bool all_pass = true;
  for (const auto& state : states) {
    const OracleReport report = verify_state(config.params, state, options);
    all_pass = all_pass && report.all_pass();
    for (const auto& c : report.checks) {
      doc.rows.push_back({static_cast<long long>(state.n_r()), static_cast<long long>(state.L()), c.label, c.value,
                          c.tolerance, c.pass});
    }
    Json s;
    s["n_r"] = state.n_r();
    s["L"] = state.L();
    s["eigenvalues"] = Json::array();
    for (double v : report.eigenvalues) s["eigenvalues"].push_back(to_json(v));
    s["extrapolated"] = Json::array();
    for (double v : report.extrapolated) s["extrapolated"].push_back(to_json(v));
    s["quadratures"] = Json::object();
    for (const auto& [k, v] : report.quadratures) s["quadratures"][k] = to_json(v);
    s["residuals"] = Json::object();
    for (const auto& [k, v] : report.residuals) s["residuals"][k] = to_json(v);
    s["grid"] = Json::array();
    for (const auto& g : report.grid_meta) s["grid"].push_back(grid_json(g));
    per_state.push_back(std::move(s));
  }
  doc.meta["tolerances"] = {{"fd_epsilon_strict", 1e-6}, {"fd_epsilon_relaxed", 1e-4}, {"normalization", 1e-9},
                            {"orthogonality", 1e-9},     {"ode_residual", 1e-5},      {"truncation_shift", 1e-8}};
  // Per-state grids are under meta.states.
  doc.meta["grid"] = {{"fd_points", config.grid_points > 0 ? Json(config.grid_points) : Json(nullptr)}};
  doc.meta["states"] = std::move(per_state);
  doc.meta["pass"] = all_pass;
  doc.status = all_pass ? kExitOk : kExitAccuracy;
  return doc;
}

Document contract(const RunConfig& config) {
  const QuantumState state(config.n_r, config.L);
  std::vector<double> radii;
  for (int k = 0; k < 4; ++k) radii.push_back(std::ldexp(config.params.radius, k));
  const ContractionStudy study = wavefunction_contraction(config.params.geometry, config.params.dim,
                                                          config.params.omega, state, radii, config.coord_max,
                                                          config.grid_points);
  Document doc;
  doc.columns = {"r0", "E", "energy_error", "l2_error"};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    doc.rows.push_back({radii[i], study.energies[i], study.energy_errors[i], study.l2_errors[i]});
  }
  doc.meta["state"] = {{"n_r", config.n_r}, {"L", config.L}};
  doc.meta["flat_energy"] = to_json(flat_energy(config.params.dim, config.params.omega, state));
  doc.meta["energy_slope"] = study.energy_slope ? to_json(*study.energy_slope) : Json(nullptr);
  doc.meta["tolerances"] = {{"quadrature", 1e-10}};
  const double r_max = config.coord_max > 0.0 ? config.coord_max
                                              : flat_support_radius(config.params.dim, config.params.omega, state);
  doc.meta["grid"] = {{"r_max", to_json(r_max)}, {"panels", config.grid_points > 0 ? config.grid_points : 64}};
  return doc;
}

Document bound_count(const RunConfig& config) {
  Document doc;
  doc.columns = {"L", "max_n_r", "count"};
  long long total = 0;
  if (const auto l_max = max_bound_L(config.params)) {
    for (int L = 0; L <= *l_max; ++L) {
      const auto top = bound_state_max(config.params, L);
      if (!top) continue;
      doc.rows.push_back({static_cast<long long>(L), static_cast<long long>(*top), static_cast<long long>(*top + 1)});
      total += *top + 1;
    }
  }
  doc.meta["total"] = total;
  doc.meta["continuum_threshold"] = to_json(continuum_threshold(config.params));
  doc.meta["tolerances"] = Json::object();
  doc.meta["grid"] = nullptr;
  return doc;
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  if (n_r < 0 || L < 0) throw DomainError("n_r and L must be non-negative");
  if (n_max && *n_max < 0) throw DomainError("nmax must be non-negative");
  if (grid_points < 0) throw DomainError("grid-points must be non-negative");
  if (!(coord_max >= 0.0) || !std::isfinite(coord_max)) throw DomainError("coord-max must be finite and >= 0");
  switch (command) {
    case Command::Wavefn:
      if (grid_points == 1) throw DomainError("wavefn: grid-points must be at least 2");
      if (params.geometry == Geometry::Sphere && coord_max > std::numbers::pi) {
        throw DomainError("wavefn: coord-max must not exceed pi on the sphere");
      }
      [[fallthrough]];
    case Command::Verify:
      if (command == Command::Verify && grid_points > 0 && grid_points < 16) {
        throw DomainError("verify: grid-points must be at least 16");
      }
      if (!n_max && !is_bound(params, QuantumState(n_r, L))) throw NotBoundStateError("state is not bound");
      break;
    case Command::Contract:
      if (!(params.omega > 0.0)) throw DomainError("contract: omega must be positive");
      break;
    case Command::BoundCount:
      if (params.geometry != Geometry::Hyperboloid) throw UsageError("bound-count: hyperboloid only");
      break;
    case Command::Spectrum:
      break;
  }
}

RunResult execute(const RunConfig& config) {
  Document doc;
  switch (config.command) {
    case Command::Spectrum: doc = spectrum(config); break;
    case Command::Wavefn: doc = wavefn(config); break;
    case Command::Verify: doc = verify(config); break;
    case Command::Contract: doc = contract(config); break;
    case Command::BoundCount: doc = bound_count(config); break;
  }
  return {render(config, doc), doc.status};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunResult result;
  try {
    config.validate();
    result = execute(config);
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitAccuracy;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAccuracy;
  }
  if (config.output.empty()) {
    out << result.document;
    out.flush();
    return result.status;
  }
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  file << result.document;
  file.flush();
  if (!file) {
    err << "error: cannot write " << config.output << '\n';
    return kExitValidation;
  }
  return result.status;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oscillator spectra, wavefunctions and numerical checks on the sphere and hyperboloid"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string geometry;
  int dim = 0;
  double radius = 0.0;
  double omega = 0.0;
  int n_r = 0;
  int L = 0;
  int n_max = -1;
  RunConfig config;
  std::string format = "csv";

  app.add_option("--geometry", geometry, "sphere or hyperboloid")->required();
  app.add_option("--dim", dim, "dimension D >= 2")->required();
  app.add_option("--radius", radius, "curvature radius r0 > 0")->required();
  app.add_option("--omega", omega, "oscillator frequency >= 0")->required();
  app.add_option("--nr", n_r, "quasiradial quantum number");
  app.add_option("--L", L, "angular momentum");
  auto* nmax_opt = app.add_option("--nmax", n_max, "largest principal number N");
  app.add_option("--grid-points", config.grid_points, "sample, FD or quadrature-panel count");
  app.add_option("--coord-max", config.coord_max, "upper coordinate (chi, tau or r)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", config.output, "output path (default standard output)");

  const std::pair<const char*, Command> commands[] = {{"spectrum", Command::Spectrum},
                                                      {"wavefn", Command::Wavefn},
                                                      {"verify", Command::Verify},
                                                      {"contract", Command::Contract},
                                                      {"bound-count", Command::BoundCount}};
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (const auto& [name, cmd] : commands) subs.emplace_back(app.add_subcommand(name), cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    for (const auto& [sub, cmd] : subs) {
      if (sub->parsed()) config.command = cmd;
    }
    config.params = ModelParams{parse_geometry(geometry), dim, radius, omega};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  config.n_r = n_r;
  config.L = L;
  if (nmax_opt->count() > 0) config.n_max = n_max;
  config.format = format == "json" ? Format::Json : Format::Csv;
  return run(config, out, err);
}

}  // namespace altosc::cli
