// harness.hpp
//
// Experiment configuration, initial conditions, time loops and the
// convergence / asymptotic-preserving studies driven by the CLI.

#pragma once

#include "maxglm/diagnostics.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace maxglm {

enum class Scheme { Htc, Simm };
enum class InitialCondition { Planar, GaussT1, GaussT2, GaussAp };

std::string to_string(Scheme s);
std::string to_string(InitialCondition ic);
Scheme scheme_from_string(const std::string& s);
InitialCondition initial_condition_from_string(const std::string& s);

/// Plain-text config: `key = value` lines, `#` starts a comment.
struct RunConfig
{
  Scheme scheme = Scheme::Htc;
  EnergyKind energy = EnergyKind::Quadratic;
  double c0 = 1.0;
  double ch = 1.0;
  int nx = 20;
  int ny = 20;
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;
  std::optional<double> cfl;  // defaults to 0.9 when dt is unset
  std::optional<double> dt;
  CflMode cfl_mode = CflMode::Light;
  double t_end = 1.4142135623730951;
  InitialCondition ic = InitialCondition::Planar;
  double sigma = 0.2;
  std::string rk = "rk_high";
  double cg_tol = 1e-12;
  int cg_maxiter = 0;
  std::string output_dir;
  int snapshot_every = 0;  // steps between field snapshots, 0 disables
  unsigned seed = 1;

  /// Applies one key/value pair; throws std::invalid_argument on unknown keys
  /// or malformed values.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  Grid2D<double> grid() const;
  ModelParams<double> params() const { return {c0, ch}; }
  EnergyModel<double> energy_model() const { return {energy, params()}; }
  CGConfig cg() const { return {cg_tol, cg_maxiter}; }
  double time_step() const;

  /// Canonical `key = value` listing, stable across runs.
  std::string serialize() const;
  std::string hash() const;
};

RunConfig parse_config(std::istream& is, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path);

/// Applies `key=value` override strings on top of a config.
void apply_overrides(RunConfig& cfg, const std::vector<std::string>& overrides);

/// Field values at one point.
struct PointValues
{
  Vector3<double> B = Vector3<double>::Zero();
  double phi = 0.0;
  Vector3<double> E = Vector3<double>::Zero();
  double psi = 0.0;

  State<double> state() const { return make_state(B, phi, E, psi); }
};

using InitialData = std::function<PointValues(double, double)>;

/// Planar wave along (1, 1, 0): amplitudes times sin(pi (x - y)).
PointValues planar_wave(double x, double y);

/// Gaussian pulse exp(-|x|^2 / (2 sigma^2)) with per-variant amplitudes.
PointValues gaussian_pulse(InitialCondition variant, double sigma, double x,
                           double y);

InitialData initial_data(InitialCondition ic, double sigma);

/// Samples initial data at cell centers.
FVState<double> initial_collocated(const Grid2D<double>& g,
                                   const EnergyModel<double>& m,
                                   const InitialData& f);

/// Samples B, psi at cell centers and E, phi at vertices.
StaggeredState<double> initial_staggered(const Grid2D<double>& g,
                                         const ModelParams<double>& m,
                                         const InitialData& f);

struct RunResult
{
  DiagnosticsSeries series;
  std::optional<FVState<double>> collocated;
  std::optional<StaggeredState<double>> staggered;
  int steps = 0;
  std::vector<std::filesystem::path> written;
};

/// Runs one configuration to t_end. Writes energy.csv, divergence.csv,
/// summary.txt and optional snapshots when cfg.output_dir is non-empty.
RunResult run(const RunConfig& cfg);

/// Per-component L2 errors at t_end against the initial data (one period of
/// the planar wave).
ErrorTable study_convergence(Scheme scheme, const std::vector<int>& resolutions,
                             const std::string& rk = "rk_high");

struct ApRow
{
  double ch = 0.0;
  double epsilon = 0.0;
  double div_B = 0.0;
  double div_E = 0.0;
};

/// 40x40 grid, dt = 1e-2, t_end = 0.1, c0 = 1, well-prepared Gaussian data.
/// Divergences are taken at the final step's half-time level.
std::vector<ApRow> study_ap(const std::vector<double>& ch_values,
                            const CGConfig& cg = {});

/// Orders in epsilon between consecutive rows for (div_B, div_E).
std::vector<std::pair<double, double>> ap_orders(const std::vector<ApRow>& rows);

void write_ap_csv(std::ostream& os, const std::vector<ApRow>& rows);

struct CheckResult
{
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Property suites: "ops", "flux", "matrices" or "all".
std::vector<CheckResult> run_checks(const std::string& suite,
                                    unsigned seed = 1);

// Published reference values for the studies.
namespace reference {

/// Component order: B1, B2, B3, phi, E1, E2, psi.
extern const std::vector<std::string> kConvergenceComponents;
extern const std::vector<int> kConvergenceResolutions;
extern const std::vector<std::vector<double>> kHtcErrors;   // [row][component]
extern const std::vector<std::vector<double>> kSimmErrors;  // [row][component]

struct ApReference
{
  double ch;
  double div_B;
  double div_E;
};
extern const std::vector<ApReference> kApTable;

}  // namespace reference

}  // namespace maxglm
