#include "maxglm/cg.hpp"
#include "maxglm/diagnostics.hpp"
#include "maxglm/harness.hpp"
#include "maxglm/properties.hpp"
#include "maxglm/simm.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace maxglm;

namespace {

StaggeredState<double> random_staggered(const Grid2D<double>& g,
                                        const ModelParams<double>& m,
                                        std::mt19937_64& rng)
{
  StaggeredState<double> s(g, m);
  s.B_c = random_field(g, Location::Cells, 3, rng);
  s.psi_c = random_field(g, Location::Cells, 1, rng);
  s.E_p = random_field(g, Location::Vertices, 3, rng);
  s.phi_p = random_field(g, Location::Vertices, 1, rng);
  return s;
}

}  // namespace

TEST_CASE("cg on simple operators")
{
  const Grid2D<double> g(8, 6);
  std::mt19937_64 rng(53);
  const auto b = random_field(g, Location::Vertices, 3, rng);

  CGReport rep;
  const auto x = cg_solve(g, [](const Field<double>& f) { return f; }, b, CGConfig{}, &rep);
  CHECK(rep.iterations == 1);
  CHECK((x.values - b.values).cwiseAbs().maxCoeff() <= 1e-15);

  const auto z = cg_solve(g, [](const Field<double>& f) { return f; },
                          zero_field(g, Location::Vertices, 3), CGConfig{}, &rep);
  CHECK(z.values.isZero(0.0));
  CHECK(rep.iterations == 0);

  // diagonal SPD operator against componentwise division
  Eigen::MatrixXd d = Eigen::MatrixXd::Random(3, g.size()).array().abs() + 0.5;
  const auto diag = [&](const Field<double>& f) {
    Field<double> o = f;
    o.values = f.values.cwiseProduct(d);
    return o;
  };
  const auto y = cg_solve(g, diag, b, CGConfig{1e-14, 0}, &rep);
  CHECK((y.values - b.values.cwiseQuotient(d)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(rep.relative_residual <= 1e-14);

  CHECK_THROWS_AS(cg_solve(g, diag, b, CGConfig{0.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(cg_solve(g, diag, b, zero_field(g, Location::Cells, 3), CGConfig{}),
                  std::invalid_argument);
}

TEST_CASE("cg reports non-convergence")
{
  const Grid2D<double> g(16, 16);
  const ModelParams<double> m{1.0, 1e3};
  std::mt19937_64 rng(59);
  const auto b = random_field(g, Location::Vertices, 1, rng);
  try
  {
    cg_solve(g, [&](const Field<double>& f) { return apply_phi_operator(g, m, 0.1, f); },
             b, CGConfig{1e-12, 2});
    FAIL("expected NonConvergence");
  }
  catch (const NonConvergence& e)
  {
    CHECK(e.iterations() == 2);
    CHECK(e.residual() > 1e-12);
  }
}

TEST_CASE("implicit operators")
{
  const Grid2D<double> g(10, 12);
  const ModelParams<double> m{1.0, 50.0};
  const auto c1 = sample(g, [](double, double) { return 1.5; }, Location::Vertices);
  const auto c3 = sample(
      g, [](double, double) { return Eigen::Vector3d(1.0, -1.0, 2.0); },
      Location::Vertices, 3);
  CHECK((apply_phi_operator(g, m, 0.1, c1).values - c1.values).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((apply_E_operator(g, m, 0.1, c3).values - c3.values).cwiseAbs().maxCoeff() <= 1e-10);

  std::mt19937_64 rng(61);
  const auto r = random_field(g, Location::Vertices, 3, rng);
  CHECK((apply_E_operator(g, m, 1e-9, r).values - r.values).cwiseAbs().maxCoeff() <= 1e-10);
  const auto r1 = random_field(g, Location::Vertices, 1, rng);
  CHECK((apply_phi_operator(g, m, 1e-9, r1).values - r1.values).cwiseAbs().maxCoeff() <= 1e-10);

  for (auto [dt, ch] : {std::pair{1e-2, 1e2}, std::pair{1e-2, 1e5}, std::pair{0.3, 1.0}})
  {
    const ModelParams<double> p{1.0, ch};
    const auto phi = spd_check(
        g, Location::Vertices, 1,
        [&](const Field<double>& f) { return apply_phi_operator(g, p, dt, f); }, 20, rng);
    const auto E = spd_check(
        g, Location::Vertices, 3,
        [&](const Field<double>& f) { return apply_E_operator(g, p, dt, f); }, 20, rng);
    CHECK(phi.symmetry_residual <= 1e-13);
    CHECK(E.symmetry_residual <= 1e-13);
    CHECK(phi.min_rayleigh >= 1.0 - 1e-12);
    CHECK(E.min_rayleigh >= 1.0 - 1e-12);
  }
}

TEST_CASE("simm step on uniform state")
{
  const Grid2D<double> g(8, 8);
  StaggeredState<double> s(g, {1.0, 3.0});
  s.B_c.values.colwise() = Eigen::Vector3d(0.1, -0.2, 0.3);
  s.psi_c.values.setConstant(0.4);
  s.E_p.values.colwise() = Eigen::Vector3d(0.5, 0.6, -0.7);
  s.phi_p.values.setConstant(-0.8);
  const auto n = simm_step(s, 0.05, CGConfig{});
  CHECK((n.B_c.values - s.B_c.values).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((n.E_p.values - s.E_p.values).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((n.psi_c.values - s.psi_c.values).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((n.phi_p.values - s.phi_p.values).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(n.t == 0.05);
  CHECK_THROWS_AS(simm_step(s, -1.0, CGConfig{}), std::invalid_argument);
}

TEST_CASE("simm conserves energy for any time step")
{
  const Grid2D<double> g(12, 10);
  std::mt19937_64 rng(67);
  for (auto [dt, ch] : {std::pair{0.01, 1.0}, std::pair{0.5, 2.0}, std::pair{2.0, 10.0}})
  {
    auto s = random_staggered(g, {1.0, ch}, rng);
    const double e0 = total_energy_staggered(s);
    for (int n = 0; n < 5; ++n)
      s = simm_step(s, dt, CGConfig{1e-13, 0});
    CHECK(std::abs(total_energy_staggered(s) / e0 - 1.0) <= 1e-10);
  }
}

TEST_CASE("simm energy drift follows the linear solver tolerance")
{
  // very stiff rough data: conservation is exact up to the CG residual
  const Grid2D<double> g(12, 10);
  std::mt19937_64 rng(71);
  const auto s0 = random_staggered(g, {1.0, 1e3}, rng);
  const double e0 = total_energy_staggered(s0);
  double previous = std::numeric_limits<double>::infinity();
  for (double tol : {1e-6, 1e-9, 1e-12})
  {
    auto s = s0;
    for (int n = 0; n < 5; ++n)
      s = simm_step(s, 2.0, CGConfig{tol, 0});
    const double drift = std::abs(total_energy_staggered(s) / e0 - 1.0);
    CHECK(drift < previous);
    previous = drift;
  }
  CHECK(previous <= 1e-6);
}

TEST_CASE("simm keeps divergence-free data divergence free")
{
  const Grid2D<double> g(24, 24);
  const ModelParams<double> m{1.0, 1.0};
  auto s = initial_staggered(g, m, initial_data(InitialCondition::GaussT1, 0.2));
  const double dt = cfl_dt(g, m, 0.9);
  for (int n = 0; n < 20; ++n)
  {
    const auto next = simm_step(s, dt, CGConfig{});
    const auto [dB, dE] = staggered_divergences(s, next);
    CHECK(dB <= 1e-12);
    CHECK(dE <= 1e-12);
    s = next;
  }
}

TEST_CASE("staggered total energy")
{
  const Grid2D<double> g(10, 10);
  StaggeredState<double> s(g, {1.0, 1.0});
  CHECK(total_energy_staggered(s) == 0.0);
  s.B_c.values.row(2).setOnes();
  CHECK(total_energy_staggered(s) == doctest::Approx(2.0).epsilon(1e-14));

  const Grid2D<double> h(30, 30);
  const auto t2 = initial_staggered(h, {1.0, 1.0}, initial_data(InitialCondition::GaussT2, 0.2));
  double sum = 0.0;
  for (int j = 0; j < h.ny; ++j)
    for (int i = 0; i < h.nx; ++i)
    {
      const double xc = h.x(i, Location::Cells), yc = h.y(j, Location::Cells);
      const double xv = h.x(i, Location::Vertices), yv = h.y(j, Location::Vertices);
      const double wc = std::exp(-(xc * xc + yc * yc) / 0.08);
      const double wv = std::exp(-(xv * xv + yv * yv) / 0.08);
      // |B0|^2 = 1.0625e-4, psi0^2 = phi0^2 = 0.25e-4, |E0|^2 = 1.0625e-4
      sum += 0.5 * ((1.0625e-4 + 0.25e-4) * wc * wc + (1.0625e-4 + 0.25e-4) * wv * wv);
    }
  CHECK(total_energy_staggered(t2) == doctest::Approx(sum * h.cell_volume()).epsilon(1e-13));
}
