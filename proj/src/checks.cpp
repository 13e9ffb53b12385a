// checks.cpp

#include "maxglm/harness.hpp"
#include "maxglm/properties.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace maxglm {

namespace {

CheckResult make(std::string name, double value, double threshold)
{
  return {std::move(name), value, threshold, value <= threshold};
}

State<double> random_state(std::mt19937_64& rng, double scale)
{
  std::uniform_real_distribution<double> d(-scale, scale);
  State<double> q;
  for (int i = 0; i < kNumVars; ++i)
    q[i] = d(rng);
  return q;
}

void ops_suite(std::vector<CheckResult>& out, unsigned seed)
{
  double worst = 0.0;
  for (auto [nx, ny] : {std::pair{8, 8}, std::pair{33, 17}, std::pair{64, 64}})
    worst = std::max(worst,
                     double(check_identities(
                         Grid2D<double>(nx, ny, 0.0, nx, 0.0, ny), 100, seed)));
  out.push_back(make("ops: curl(grad) and div(curl) residual, unit spacing",
                     worst, 1e-13));

  std::mt19937_64 rng(seed);
  double adj = 0.0;
  for (int t = 0; t < 20; ++t)
  {
    const auto r = adjointness_residuals(Grid2D<double>(33, 17), rng);
    adj = std::max({adj, r.grad_c2v_div_v2c, r.grad_v2c_div_c2v, r.curl_pair});
  }
  out.push_back(make("ops: summation by parts residual", adj, 1e-12));

  const Grid2D<double> g(16, 16);
  for (auto [dt, ch] : {std::pair{1e-2, 1e2}, std::pair{1e-2, 1e5}})
  {
    const ModelParams<double> m{1.0, ch};
    const auto phi = spd_check(
        g, Location::Vertices, 1,
        [&](const Field<double>& f) { return apply_phi_operator(g, m, dt, f); },
        100, rng);
    const auto E = spd_check(
        g, Location::Vertices, 3,
        [&](const Field<double>& f) { return apply_E_operator(g, m, dt, f); },
        100, rng);
    const std::string tag = " (ch=" + std::to_string(int(ch)) + ")";
    out.push_back(make("ops: phi operator symmetry" + tag,
                       phi.symmetry_residual, 1e-13));
    out.push_back(make("ops: E operator symmetry" + tag, E.symmetry_residual,
                       1e-13));
    // Positivity: the Rayleigh quotient is bounded below by one.
    out.push_back(make("ops: phi operator 1 - min Rayleigh" + tag,
                       1.0 - phi.min_rayleigh, 1e-12));
    out.push_back(make("ops: E operator 1 - min Rayleigh" + tag,
                       1.0 - E.min_rayleigh, 1e-12));
  }
}

void flux_suite(std::vector<CheckResult>& out, unsigned seed)
{
  std::mt19937_64 rng(seed);
  const ModelParams<double> params{1.0, 1.0};
  const auto mats = assemble_matrices(params);
  for (auto kind : {EnergyKind::Quadratic, EnergyKind::Exponential})
  {
    const EnergyModel<double> m{kind, params};
    const std::string tag =
        kind == EnergyKind::Quadratic ? " (quadratic)" : " (exponential)";
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t)
    {
      const auto qL = random_state(rng, 1.0);
      const auto qR = random_state(rng, 1.0);
      const Eigen::Vector2d n =
          t % 2 ? Eigen::Vector2d(1.0, 0.0) : Eigen::Vector2d(0.0, 1.0);
      worst = std::max(worst,
                       std::abs(compatibility_residual(qL, qR, n, m, mats)));
    }
    out.push_back(make("flux: compatibility residual" + tag, worst, 1e-13));

    double production = 0.0;
    for (int t = 0; t < 20; ++t)
    {
      FVState<double> s(Grid2D<double>(16, 16), m);
      for (Eigen::Index k = 0; k < s.q.cols(); ++k)
        s.q.col(k) = random_state(rng, 1.0);
      production = std::max(production, std::abs(energy_production(s)));
    }
    out.push_back(make("flux: semi-discrete energy production" + tag,
                       production, 1e-12));

    double fd = 0.0;
    const double h = 1e-5;
    for (int t = 0; t < 100; ++t)
    {
      const auto q = random_state(rng, 1.0);
      const auto p = main_field(q, m);
      for (int i = 0; i < kNumVars; ++i)
      {
        State<double> a = q, b = q;
        a[i] += h;
        b[i] -= h;
        const double d = (energy_density(a, m) - energy_density(b, m)) / (2 * h);
        fd = std::max(fd, std::abs(d - p[i]) / std::max(1.0, std::abs(p[i])));
      }
    }
    out.push_back(make("flux: main field vs finite differences" + tag, fd, 1e-7));
  }
}

void matrices_suite(std::vector<CheckResult>& out)
{
  double asym = 0.0;
  double eig = 0.0;
  for (auto [c0, ch] : {std::pair{1.0, 1.0}, std::pair{1.0, 2.0},
                        std::pair{2.0, 5.0}, std::pair{1.0, 10.0},
                        std::pair{0.5, 0.5}, std::pair{10.0, 10.0}})
  {
    const auto s = assemble_matrices(ModelParams<double>{c0, ch});
    for (const auto& h : s.H)
      asym = std::max(asym, (h - h.transpose()).cwiseAbs().maxCoeff());
    eig = std::max(eig, (s.H[0] * s.R - s.R * s.lambda.asDiagonal())
                            .cwiseAbs()
                            .maxCoeff());
  }
  out.push_back(make("matrices: H_k - H_k^T", asym, 0.0));
  out.push_back(make("matrices: H_1 R - R Lambda", eig, 1e-12));
}

}  // namespace

std::vector<CheckResult> run_checks(const std::string& suite, unsigned seed)
{
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (!all && suite != "ops" && suite != "flux" && suite != "matrices")
    throw std::invalid_argument("unknown check suite '" + suite + "'");
  if (all || suite == "matrices")
    matrices_suite(out);
  if (all || suite == "ops")
    ops_suite(out, seed);
  if (all || suite == "flux")
    flux_suite(out, seed);
  return out;
}

}  // namespace maxglm
