// harness.cpp

#include "maxglm/harness.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace maxglm {

PointValues planar_wave(double x, double y)
{
  const double b = std::sqrt(2.0) / 2.0;
  const double s = std::sin(M_PI * (x - y));
  PointValues v;
  v.B = Vector3<double>(0.25 * b, -0.25 * b, 1.0) * s;
  v.phi = 0.25 * s;
  v.E = Vector3<double>(1.5 * b, 0.5 * b, 0.0) * s;
  v.psi = 0.5 * s;
  return v;
}

PointValues gaussian_pulse(InitialCondition variant, double sigma, double x,
                           double y)
{
  Vector3<double> B0;
  double scalar0 = 0.0;
  switch (variant)
  {
  case InitialCondition::GaussT1:
    B0 = Vector3<double>(0.0, 0.0, 1e-2);
    break;
  case InitialCondition::GaussT2:
    B0 = Vector3<double>(0.25e-2, 0.0, 1e-2);
    scalar0 = 0.5e-2;
    break;
  case InitialCondition::GaussAp:
    B0 = Vector3<double>(1e-4, 0.0, 1e-2);
    break;
  default:
    throw std::invalid_argument("gaussian_pulse: not a Gaussian variant");
  }
  const double w = std::exp(-0.5 * (x * x + y * y) / (sigma * sigma));
  PointValues v;
  v.B = B0 * w;
  v.E = B0 * w;
  v.phi = scalar0 * w;
  v.psi = scalar0 * w;
  return v;
}

InitialData initial_data(InitialCondition ic, double sigma)
{
  if (ic == InitialCondition::Planar)
    return planar_wave;
  return [ic, sigma](double x, double y) {
    return gaussian_pulse(ic, sigma, x, y);
  };
}

FVState<double> initial_collocated(const Grid2D<double>& g,
                                   const EnergyModel<double>& m,
                                   const InitialData& f)
{
  FVState<double> s(g, m);
  s.q = sample(
            g, [&](double x, double y) { return f(x, y).state(); },
            Location::Cells, kNumVars)
            .values;
  return s;
}

StaggeredState<double> initial_staggered(const Grid2D<double>& g,
                                         const ModelParams<double>& m,
                                         const InitialData& f)
{
  StaggeredState<double> s(g, m);
  s.B_c = sample(
      g, [&](double x, double y) { return f(x, y).B; }, Location::Cells, 3);
  s.psi_c = sample(
      g, [&](double x, double y) { return f(x, y).psi; }, Location::Cells, 1);
  s.E_p = sample(
      g, [&](double x, double y) { return f(x, y).E; }, Location::Vertices, 3);
  s.phi_p = sample(
      g, [&](double x, double y) { return f(x, y).phi; }, Location::Vertices,
      1);
  return s;
}

namespace {

namespace fs = std::filesystem;

int step_count(double t_end, double dt)
{
  if (t_end <= 0.0)
    return 0;
  return std::max(1, static_cast<int>(std::ceil(t_end / dt - 1e-9)));
}

/// Time of the end of step k (1-based); the last step lands on t_end.
double step_end_time(int k, int n, double dt, double t_end)
{
  return k == n ? t_end : k * dt;
}

void write_text(const fs::path& p, const std::string& text,
                std::vector<fs::path>& written)
{
  std::ofstream out(p);
  if (!out)
    throw std::runtime_error("cannot write " + p.string());
  out << text;
  written.push_back(p);
}

template <typename Writer>
void write_file(const fs::path& p, Writer&& w, std::vector<fs::path>& written)
{
  std::ofstream out(p);
  if (!out)
    throw std::runtime_error("cannot write " + p.string());
  w(out);
  written.push_back(p);
}

Field<double> component_rows(const Grid2D<double>& g,
                             const StateMatrix<double>& q, int first, int count)
{
  Field<double> f(g, Location::Cells, count);
  f.values = q.middleRows(first, count);
  return f;
}

void write_snapshots(const fs::path& dir, int step, const RunResult& r,
                     std::vector<fs::path>& written)
{
  std::ostringstream tag;
  tag << std::setw(6) << std::setfill('0') << step;
  auto dump = [&](const std::string& name, const Grid2D<double>& g,
                  const Field<double>& f, double t) {
    write_file(
        dir / ("snapshot_" + name + "_" + tag.str() + ".txt"),
        [&](std::ostream& os) { write_snapshot(os, g, f, t); }, written);
  };
  if (r.collocated)
  {
    const auto& s = *r.collocated;
    dump("B", s.grid, component_rows(s.grid, s.q, var::B1, 3), s.t);
    dump("phi", s.grid, component_rows(s.grid, s.q, var::Phi, 1), s.t);
    dump("E", s.grid, component_rows(s.grid, s.q, var::E1, 3), s.t);
    dump("psi", s.grid, component_rows(s.grid, s.q, var::Psi, 1), s.t);
  }
  else if (r.staggered)
  {
    const auto& s = *r.staggered;
    dump("B", s.grid, s.B_c, s.t);
    dump("phi", s.grid, s.phi_p, s.t);
    dump("E", s.grid, s.E_p, s.t);
    dump("psi", s.grid, s.psi_c, s.t);
  }
}

std::string summarize(const RunConfig& cfg, const RunResult& r)
{
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific;
  os << "scheme            " << to_string(cfg.scheme) << '\n'
     << "initial condition " << to_string(cfg.ic) << '\n'
     << "grid              " << cfg.nx << " x " << cfg.ny << '\n'
     << "c0, ch            " << cfg.c0 << ", " << cfg.ch << '\n'
     << "steps             " << r.steps << '\n'
     << "final time        " << (r.series.rows.empty() ? 0.0 : r.series.rows.back().t)
     << '\n'
     << "max |E^n/E^0 - 1| " << r.series.max_abs_rel_energy_error() << '\n'
     << "max div B         " << r.series.max_div_B() << '\n'
     << "max div E         " << r.series.max_div_E() << '\n'
     << "config hash       " << cfg.hash() << '\n';
  return os.str();
}

}  // namespace

RunResult run(const RunConfig& cfg)
{
  cfg.validate();
  const auto g = cfg.grid();
  const double dt = cfg.time_step();
  const int n = step_count(cfg.t_end, dt);
  const auto f = initial_data(cfg.ic, cfg.sigma);

  RunResult result;
  auto& series = result.series;
  series.scheme = to_string(cfg.scheme);
  series.grid = std::to_string(cfg.nx) + "x" + std::to_string(cfg.ny);
  {
    std::ostringstream p;
    p << std::setprecision(17) << "c0=" << cfg.c0 << " ch=" << cfg.ch;
    series.params = p.str();
  }
  series.config_hash = cfg.hash();

  const bool write = !cfg.output_dir.empty();
  const fs::path dir(cfg.output_dir);
  if (write)
    fs::create_directories(dir);
  auto maybe_snapshot = [&](int step) {
    if (write && cfg.snapshot_every > 0 &&
        (step % cfg.snapshot_every == 0 || step == n))
      write_snapshots(dir, step, result, result.written);
  };

  if (cfg.scheme == Scheme::Htc)
  {
    const auto tab = tableau_by_name(cfg.rk);
    result.collocated = initial_collocated(g, cfg.energy_model(), f);
    auto& s = *result.collocated;
    series.append(0.0, total_energy_collocated(s),
                  collocated_divergence(s, VectorField::B),
                  collocated_divergence(s, VectorField::E));
    maybe_snapshot(0);
    for (int k = 1; k <= n; ++k)
    {
      const double t_next = step_end_time(k, n, dt, cfg.t_end);
      s = rk_step(s, t_next - s.t, tab);
      s.t = t_next;
      series.append(s.t, total_energy_collocated(s),
                    collocated_divergence(s, VectorField::B),
                    collocated_divergence(s, VectorField::E));
      ++result.steps;
      maybe_snapshot(k);
    }
  }
  else
  {
    const auto cg = cfg.cg();
    result.staggered = initial_staggered(g, cfg.params(), f);
    auto& s = *result.staggered;
    const auto [dB0, dE0] = staggered_divergences(s, s);
    series.append(0.0, total_energy_staggered(s), dB0, dE0);
    maybe_snapshot(0);
    for (int k = 1; k <= n; ++k)
    {
      const double t_next = step_end_time(k, n, dt, cfg.t_end);
      StaggeredState<double> next;
      try
      {
        next = simm_step(s, t_next - s.t, cg);
      }
      catch (const NonConvergence& e)
      {
        throw std::runtime_error("step " + std::to_string(k) + " (t = " +
                                 std::to_string(s.t) + "): " + e.what());
      }
      next.t = t_next;
      const auto [dB, dE] = staggered_divergences(s, next);
      s = std::move(next);
      series.append(s.t, total_energy_staggered(s), dB, dE);
      ++result.steps;
      maybe_snapshot(k);
    }
  }

  if (write)
  {
    write_file(
        dir / "energy.csv",
        [&](std::ostream& os) { write_energy_csv(os, series); },
        result.written);
    write_file(
        dir / "divergence.csv",
        [&](std::ostream& os) { write_divergence_csv(os, series); },
        result.written);
    write_text(dir / "config.txt", cfg.serialize(), result.written);
    write_text(dir / "summary.txt", summarize(cfg, result), result.written);
  }
  return result;
}

ErrorTable study_convergence(Scheme scheme, const std::vector<int>& resolutions,
                             const std::string& rk)
{
  ErrorTable table;
  table.components = reference::kConvergenceComponents;
  for (int N : resolutions)
  {
    RunConfig cfg;
    cfg.scheme = scheme;
    cfg.nx = cfg.ny = N;
    cfg.cfl = 0.9;
    cfg.t_end = std::sqrt(2.0);
    cfg.ic = InitialCondition::Planar;
    cfg.rk = rk;
    const auto result = run(cfg);
    const auto g = cfg.grid();

    std::vector<double> errs;
    if (scheme == Scheme::Htc)
    {
      const auto exact = initial_collocated(g, cfg.energy_model(), planar_wave);
      const auto& s = *result.collocated;
      for (int row : {var::B1, var::B2, var::B3, var::Phi, var::E1, var::E2,
                      var::Psi})
      {
        Field<double> d(g, Location::Cells, 1);
        d.values = s.q.row(row) - exact.q.row(row);
        errs.push_back(l2_norm(g, d));
      }
    }
    else
    {
      const auto exact = initial_staggered(g, cfg.params(), planar_wave);
      const auto& s = *result.staggered;
      auto err = [&](const Field<double>& a, const Field<double>& b, int c) {
        Field<double> d(g, a.location, 1);
        d.values = a.values.row(c) - b.values.row(c);
        return l2_norm(g, d);
      };
      errs = {err(s.B_c, exact.B_c, 0),     err(s.B_c, exact.B_c, 1),
              err(s.B_c, exact.B_c, 2),     err(s.phi_p, exact.phi_p, 0),
              err(s.E_p, exact.E_p, 0),     err(s.E_p, exact.E_p, 1),
              err(s.psi_c, exact.psi_c, 0)};
    }
    table.resolutions.push_back(N);
    table.errors.push_back(errs);
  }
  return table;
}

std::vector<ApRow> study_ap(const std::vector<double>& ch_values,
                            const CGConfig& cg)
{
  std::vector<ApRow> rows;
  for (double ch : ch_values)
  {
    RunConfig cfg;
    cfg.scheme = Scheme::Simm;
    cfg.c0 = 1.0;
    cfg.ch = ch;
    cfg.nx = cfg.ny = 40;
    cfg.dt = 1e-2;
    cfg.t_end = 0.1;
    cfg.ic = InitialCondition::GaussAp;
    cfg.cg_tol = cg.tol;
    cfg.cg_maxiter = cg.max_iterations;
    const auto result = run(cfg);
    const auto& last = result.series.rows.back();
    rows.push_back({ch, cfg.c0 / ch, last.div_B, last.div_E});
  }
  return rows;
}

std::vector<std::pair<double, double>> ap_orders(const std::vector<ApRow>& rows)
{
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 1; i < rows.size(); ++i)
  {
    const double le = std::log(rows[i - 1].epsilon / rows[i].epsilon);
    out.emplace_back(std::log(rows[i - 1].div_B / rows[i].div_B) / le,
                     std::log(rows[i - 1].div_E / rows[i].div_E) / le);
  }
  return out;
}

void write_ap_csv(std::ostream& os, const std::vector<ApRow>& rows)
{
  const auto old = os.precision(17);
  const auto orders = ap_orders(rows);
  os << "ch,epsilon,divB,divE,order_divB,order_divE\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    const auto& r = rows[i];
    os << r.ch << ',' << r.epsilon << ',' << r.div_B << ',' << r.div_E << ',';
    if (i > 0)
      os << orders[i - 1].first << ',' << orders[i - 1].second;
    else
      os << ',';
    os << '\n';
  }
  os.precision(old);
}

namespace reference {

const std::vector<std::string> kConvergenceComponents = {
    "B1", "B2", "B3", "phi", "E1", "E2", "psi"};

const std::vector<int> kConvergenceResolutions = {20, 40, 80, 160};

// clang-format off
const std::vector<std::vector<double>> kHtcErrors = {
    {2.57e-2, 2.57e-2, 1.45e-1, 3.63e-2, 1.54e-1, 5.14e-2, 7.27e-2},
    {6.45e-3, 6.45e-3, 3.65e-2, 9.12e-3, 3.87e-2, 1.29e-2, 1.82e-2},
    {1.61e-3, 1.61e-3, 9.13e-3, 2.28e-3, 9.69e-3, 3.23e-3, 4.57e-3},
    {4.04e-4, 4.04e-4, 2.28e-3, 5.71e-4, 2.42e-3, 8.07e-4, 1.14e-3},
};

const std::vector<std::vector<double>> kSimmErrors = {
    {3.06e-2, 3.06e-2, 1.73e-1, 4.33e-2, 1.84e-1, 6.12e-2, 8.65e-2},
    {7.74e-3, 7.74e-3, 4.38e-2, 1.09e-2, 4.64e-2, 1.55e-2, 2.19e-2},
    {1.94e-3, 1.94e-3, 1.10e-2, 2.74e-3, 1.16e-2, 3.88e-3, 5.49e-3},
    {4.85e-4, 4.85e-4, 2.75e-3, 6.86e-4, 2.91e-3, 9.71e-4, 1.37e-3},
};

const std::vector<ApReference> kApTable = {
    {1e2, 3.831380e-5, 3.831579e-5},
    {1e3, 3.569500e-6, 3.569623e-6},
    {1e4, 4.351311e-8, 4.351523e-8},
    {1e5, 4.368280e-10, 4.358525e-10},
};
// clang-format on

}  // namespace reference

}  // namespace maxglm
