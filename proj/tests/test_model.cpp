#include "oracles.hpp"

#include "maxglm/model.hpp"

#include <doctest.h>

#include <random>

using namespace maxglm;
using oracle::Q;
using oracle::V3;

namespace {

Q random_state(std::mt19937_64& rng, double scale = 1.0)
{
  std::uniform_real_distribution<double> d(-scale, scale);
  Q q;
  for (int i = 0; i < 8; ++i)
    q[i] = d(rng);
  return q;
}

Q unit(int slot) { return Q::Unit(slot); }

}  // namespace

TEST_CASE("model params validation")
{
  CHECK_NOTHROW(ModelParams<double>{1.0, 2.0}.validate());
  CHECK_THROWS_AS((ModelParams<double>{0.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams<double>{1.0, -1.0}.validate()), std::invalid_argument);
}

TEST_CASE("energy density examples")
{
  const EnergyModel<double> quad{EnergyKind::Quadratic, {1.0, 1.0}};
  const EnergyModel<double> expo{EnergyKind::Exponential, {1.0, 1.0}};
  CHECK(energy_density(Q::Zero().eval(), quad) == 0.0);
  const Q q = make_state<double>(V3(1, 0, 0), 0.0, V3(0, 1, 0), 0.0);
  CHECK(energy_density(q, quad) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(energy_density(Q::Zero().eval(), expo) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("main field")
{
  std::mt19937_64 rng(7);
  const EnergyModel<double> quad{EnergyKind::Quadratic, {1.0, 1.0}};
  for (int t = 0; t < 20; ++t)
  {
    const Q q = random_state(rng);
    CHECK((main_field(q, quad) - q).norm() == 0.0);
  }

  for (auto [c0, ch] : {std::pair{1.0, 1.0}, std::pair{1.0, 3.0}, std::pair{2.0, 0.5}})
  {
    const EnergyModel<double> expo{EnergyKind::Exponential, {c0, ch}};
    CHECK(main_field(Q::Zero().eval(), expo).norm() == 0.0);
    for (int t = 0; t < 50; ++t)
    {
      const Q q = random_state(rng);
      const Q fd = oracle::fd_gradient(
          [&](const Q& x) { return energy_density(x, expo); }, q, 1e-5);
      const Q p = main_field(q, expo);
      CHECK((p - fd).norm() <= 1e-7 * p.norm());
    }
  }
}

TEST_CASE("system matrices")
{
  const auto m11 = assemble_matrices(ModelParams<double>{1.0, 1.0});
  // 1-based (B, phi, E, psi) ordering as printed
  CHECK(m11.H[0](0, 3) == 1.0);
  CHECK(m11.H[0](1, 6) == -1.0);
  CHECK(m11.H[0](2, 5) == 1.0);

  for (auto [c0, ch] : {std::pair{1.0, 1.0}, std::pair{1.0, 2.0}, std::pair{2.0, 5.0},
                        std::pair{1.0, 10.0}, std::pair{0.3, 7.1}})
  {
    const auto m = assemble_matrices(ModelParams<double>{c0, ch});
    for (int k = 0; k < 3; ++k)
      CHECK((m.H[k] - m.H[k].transpose()).cwiseAbs().maxCoeff() == 0.0);
    const SystemMatrix<double> res = m.H[0] * m.R - m.R * m.lambda.asDiagonal().toDenseMatrix();
    CHECK(res.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(m.R.determinant()) > 1e-8);
  }

  const auto m25 = assemble_matrices(ModelParams<double>{2.0, 5.0});
  const std::array<double, 8> expected = {-5, -5, -2, -2, 2, 2, 5, 5};
  for (int i = 0; i < 8; ++i)
    CHECK(m25.lambda[i] == expected[i]);
  Eigen::SelfAdjointEigenSolver<SystemMatrix<double>> es(m25.H[0]);
  for (int i = 0; i < 8; ++i)
    CHECK(es.eigenvalues()[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("max signal speed")
{
  CHECK(max_signal_speed(ModelParams<double>{1.0, 1.0}) == 1.0);
  CHECK(max_signal_speed(ModelParams<double>{1.0, 10.0}) == 10.0);
  CHECK(max_signal_speed(ModelParams<double>{2.0, 5.0}) == 5.0);
}

TEST_CASE("physical flux examples")
{
  const EnergyModel<double> quad{EnergyKind::Quadratic, {1.0, 1.0}};
  for (int k = 0; k < 3; ++k)
    CHECK(physical_flux(Q::Zero().eval(), quad, k).norm() == 0.0);
  CHECK((physical_flux(unit(var::Phi), quad, 0) - unit(var::B1)).norm() == 0.0);
  CHECK((physical_flux(unit(var::E3), quad, 0) + unit(var::B2)).norm() == 0.0);
}

TEST_CASE("physical flux matches the conservation law")
{
  std::mt19937_64 rng(11);
  for (auto kind : {EnergyKind::Quadratic, EnergyKind::Exponential})
  {
    const EnergyModel<double> m{kind, {1.3, 2.7}};
    for (int t = 0; t < 200; ++t)
    {
      const Q q = random_state(rng);
      const Q p = main_field(q, m);
      for (int k = 0; k < 3; ++k)
        CHECK((physical_flux(q, m, k) - oracle::pde_flux(p, 1.3, 2.7, k)).norm() <=
              1e-14 * (1 + p.norm()));
    }
  }
}

TEST_CASE("energy flux examples")
{
  const EnergyModel<double> m11{EnergyKind::Quadratic, {1.0, 1.0}};
  CHECK(energy_flux(Q::Zero().eval(), m11, 0) == 0.0);
  const Q a = make_state<double>(V3(0, 0, 1), 0.0, V3(0, 1, 0), 0.0);
  CHECK(energy_flux(a, m11, 0) == doctest::Approx(1.0).epsilon(1e-15));

  const EnergyModel<double> m12{EnergyKind::Quadratic, {1.0, 2.0}};
  const Q b = make_state<double>(V3(1, 0, 0), 1.0, V3::Zero(), 0.0);
  CHECK(energy_flux(b, m12, 0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("energy flux matches the componentwise formula")
{
  std::mt19937_64 rng(13);
  const EnergyModel<double> m{EnergyKind::Quadratic, {1.5, 3.0}};
  for (int t = 0; t < 1000; ++t)
  {
    const Q q = random_state(rng);
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(energy_flux(q, m, k) - oracle::pde_energy_flux(q, 1.5, 3.0, k)) <=
            1e-13);
  }
}

TEST_CASE("flux compatibility: grad F = (grad p)^T f")
{
  // dF_k/dq = (dp/dq)^T H_k p = (dp/dq) f_k since dp/dq is symmetric.
  std::mt19937_64 rng(17);
  for (auto kind : {EnergyKind::Quadratic, EnergyKind::Exponential})
  {
    const EnergyModel<double> m{kind, {1.0, 2.0}};
    for (int t = 0; t < 50; ++t)
    {
      const Q q = random_state(rng, 0.8);
      for (int k = 0; k < 3; ++k)
      {
        const Q dF = oracle::fd_gradient(
            [&](const Q& x) { return energy_flux(x, m, k); }, q, 1e-5);
        const Q f = physical_flux(q, m, k);
        Q lhs;
        for (int i = 0; i < 8; ++i)
        {
          const Q dp = oracle::fd_gradient(
              [&](const Q& x) { return main_field(x, m)[i]; }, q, 1e-5);
          lhs[i] = dp.dot(f);
        }
        CHECK((dF - lhs).norm() <= 1e-6 * (1 + dF.norm()));
      }
    }
  }
}

TEST_CASE("energy is convex")
{
  std::mt19937_64 rng(19);
  for (auto kind : {EnergyKind::Quadratic, EnergyKind::Exponential})
  {
    const EnergyModel<double> m{kind, {1.0, 2.0}};
    for (int t = 0; t < 200; ++t)
    {
      const Q a = random_state(rng), b = random_state(rng);
      const double mid = energy_density(Q(0.5 * (a + b)), m);
      CHECK(mid <= 0.5 * (energy_density(a, m) + energy_density(b, m)) + 1e-14);
    }
  }
}
