#include "oracles.hpp"

#include "maxglm/harness.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace maxglm;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name)
{
  const fs::path p = fs::temp_directory_path() / ("maxglm_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing")
{
  std::istringstream in(
      "# comment\n"
      "scheme = simm\n"
      "nx = 32   # trailing comment\n"
      "ny=16\n"
      "\n"
      "dt = 0.01\n"
      "ic = gauss_t1\n"
      "cg_tol = 1e-10\n");
  const RunConfig c = parse_config(in);
  CHECK(c.scheme == Scheme::Simm);
  CHECK(c.nx == 32);
  CHECK(c.ny == 16);
  CHECK(c.dt.value() == 0.01);
  CHECK_FALSE(c.cfl.has_value());
  CHECK(c.ic == InitialCondition::GaussT1);
  CHECK(c.cg_tol == 1e-10);
  CHECK_NOTHROW(c.validate());
  CHECK(c.time_step() == 0.01);

  RunConfig o = c;
  apply_overrides(o, {"nx=64", "t_end = 2"});
  CHECK(o.nx == 64);
  CHECK(o.t_end == 2.0);
  CHECK(o.hash() != c.hash());
  CHECK(c.hash() == RunConfig(c).hash());

  // serialization round trip
  std::istringstream again(c.serialize());
  CHECK(parse_config(again).serialize() == c.serialize());

  std::istringstream unknown("foo = 1\n");
  CHECK_THROWS_AS(parse_config(unknown), std::invalid_argument);
  std::istringstream malformed("nx 10\n");
  CHECK_THROWS_AS(parse_config(malformed), std::invalid_argument);
  std::istringstream notnum("nx = ten\n");
  CHECK_THROWS_AS(parse_config(notnum), std::invalid_argument);
  CHECK_THROWS_AS(apply_overrides(o, {"nx"}), std::invalid_argument);
  CHECK_THROWS_AS(apply_overrides(o, {"rk=euler"}), std::invalid_argument);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), std::runtime_error);
}

TEST_CASE("config validation")
{
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.time_step() == doctest::Approx(0.045));

  RunConfig both = c;
  both.cfl = 0.5;
  both.dt = 0.01;
  CHECK_THROWS_AS(both.validate(), std::invalid_argument);

  RunConfig simm_exp = c;
  simm_exp.scheme = Scheme::Simm;
  simm_exp.energy = EnergyKind::Exponential;
  CHECK_THROWS_AS(simm_exp.validate(), std::invalid_argument);

  RunConfig bad_cfl = c;
  bad_cfl.cfl = 1.5;
  CHECK_THROWS_AS(bad_cfl.validate(), std::invalid_argument);

  RunConfig small = c;
  small.nx = 1;
  CHECK_THROWS_AS(small.validate(), std::invalid_argument);
}

TEST_CASE("shipped configs load")
{
  const fs::path dir = fs::path(MAXGLM_SOURCE_DIR) / "configs";
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".cfg")
    {
      CHECK_NOTHROW(load_config(e.path()).validate());
      ++n;
    }
  CHECK(n >= 4);
}

TEST_CASE("planar wave initial data")
{
  for (double x : {-0.7, 0.0, 0.3})
    CHECK(planar_wave(x, x).state().norm() == 0.0);
  const auto v = planar_wave(0.5, 0.0);
  const double b = std::sqrt(2.0) / 2.0;
  CHECK(v.B[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v.B[0] == doctest::Approx(0.25 * b));
  CHECK(v.B[1] == doctest::Approx(-0.25 * b));
  CHECK(v.phi == doctest::Approx(0.25));
  CHECK(v.E[0] == doctest::Approx(1.5 * b));
  CHECK(v.E[1] == doctest::Approx(0.5 * b));
  CHECK(v.E[2] == 0.0);
  CHECK(v.psi == doctest::Approx(0.5));

  const Grid2D<double> g(8, 8);
  const auto s = initial_collocated(g, {EnergyKind::Quadratic, {1.0, 1.0}}, planar_wave);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
    {
      const double x = -1.0 + (i + 0.5) * 0.25, y = -1.0 + (j + 0.5) * 0.25;
      CHECK(s.q(var::B3, i + 8 * j) == doctest::Approx(std::sin(M_PI * (x - y))));
    }
}

TEST_CASE("gaussian initial data")
{
  const auto t1 = gaussian_pulse(InitialCondition::GaussT1, 0.2, 0.0, 0.0);
  CHECK((t1.B - Eigen::Vector3d(0, 0, 1e-2)).norm() == 0.0);
  CHECK((t1.E - Eigen::Vector3d(0, 0, 1e-2)).norm() == 0.0);
  CHECK(t1.phi == 0.0);
  const auto t2 = gaussian_pulse(InitialCondition::GaussT2, 0.2, 0.0, 0.0);
  CHECK(t2.B[0] == 0.25e-2);
  CHECK(t2.phi == 0.5e-2);
  CHECK(t2.psi == 0.5e-2);
  const auto ap = gaussian_pulse(InitialCondition::GaussAp, 0.2, 0.0, 0.0);
  CHECK(ap.B[0] == 1e-4);
  CHECK(ap.phi == 0.0);
  CHECK(gaussian_pulse(InitialCondition::GaussT2, 0.2, 0.95, -0.95).state().norm() < 1e-10);

  const auto half = gaussian_pulse(InitialCondition::GaussT1, 0.2, 0.1, 0.2);
  CHECK(half.B[2] == doctest::Approx(1e-2 * std::exp(-0.05 / 0.08)).epsilon(1e-14));
  CHECK_THROWS_AS(gaussian_pulse(InitialCondition::Planar, 0.2, 0.0, 0.0),
                  std::invalid_argument);

  const Grid2D<double> g(6, 6);
  const auto s = initial_staggered(g, {1.0, 1.0}, initial_data(InitialCondition::GaussT2, 0.2));
  const double xv = g.x(2, Location::Vertices), yv = g.y(3, Location::Vertices);
  CHECK(s.phi_p(0, g.index(2, 3)) ==
        doctest::Approx(0.5e-2 * std::exp(-(xv * xv + yv * yv) / 0.08)).epsilon(1e-14));
}

TEST_CASE("zero end time gives one row")
{
  for (Scheme sc : {Scheme::Htc, Scheme::Simm})
  {
    RunConfig c;
    c.scheme = sc;
    c.nx = c.ny = 8;
    c.t_end = 0.0;
    const auto r = run(c);
    CHECK(r.steps == 0);
    CHECK(r.series.rows.size() == 1);
    CHECK(r.written.empty());
  }
}

TEST_CASE("htc planar wave run")
{
  RunConfig c;
  c.nx = c.ny = 20;
  const auto r = run(c);
  CHECK(r.series.rows.back().t == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.series.max_abs_rel_energy_error() <= 1e-11);
  const auto& s = *r.collocated;
  const auto exact = initial_collocated(s.grid, s.model, planar_wave);
  Field<double> err(s.grid, Location::Cells, 1);
  err.values = (s.q - exact.q).row(var::B1);
  const double e = l2_norm(s.grid, err);
  CHECK(e <= 2 * oracle::kHtcErrors[0][0]);
  CHECK(e >= 0.5 * oracle::kHtcErrors[0][0]);
}

TEST_CASE("simm planar wave run")
{
  RunConfig c;
  c.scheme = Scheme::Simm;
  c.nx = c.ny = 20;
  const auto r = run(c);
  CHECK(r.series.max_abs_rel_energy_error() <= 1e-12);
  const auto table = study_convergence(Scheme::Simm, {20});
  CHECK(table.errors[0][0] <= 2 * oracle::kSimmErrors[0][0]);
  CHECK(table.errors[0][0] >= 0.5 * oracle::kSimmErrors[0][0]);
}

TEST_CASE("outputs are deterministic")
{
  for (Scheme sc : {Scheme::Htc, Scheme::Simm})
  {
    RunConfig c;
    c.scheme = sc;
    c.nx = c.ny = 10;
    c.ic = InitialCondition::GaussT2;
    c.t_end = 0.3;
    c.snapshot_every = 2;
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    c.output_dir = a.string();
    run(c);
    c.output_dir = b.string();
    const auto r = run(c);
    for (const char* f : {"energy.csv", "divergence.csv"})
    {
      CHECK(fs::exists(a / f));
      CHECK(slurp(a / f) == slurp(b / f));
    }
    CHECK(fs::exists(b / "summary.txt"));
    CHECK(fs::exists(b / "config.txt"));

    int snaps = 0;
    for (const auto& p : r.written)
      if (p.filename().string().rfind("snapshot_", 0) == 0)
      {
        std::ifstream in(p);
        const auto snap = read_snapshot<double>(in);
        CHECK(snap.grid == c.grid());
        ++snaps;
      }
    CHECK(snaps > 0);
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST_CASE("ap study on a reduced set")
{
  const auto rows = study_ap({1e4, 1e5});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].epsilon == doctest::Approx(1e-4));
  for (std::size_t i = 0; i < 2; ++i)
  {
    const auto& ref = oracle::kAp[i + 2];
    CHECK(rows[i].div_B <= 2 * ref.div_B);
    CHECK(rows[i].div_B >= 0.5 * ref.div_B);
  }
  const auto o = ap_orders(rows);
  CHECK(o[0].first == doctest::Approx(2.0).epsilon(0.05));
  std::ostringstream os;
  write_ap_csv(os, rows);
  CHECK(os.str().find("ch") == 0);
}

TEST_CASE("check suites")
{
  for (const auto& r : run_checks("matrices"))
    CHECK_MESSAGE(r.pass, r.name);
  CHECK_THROWS_AS(run_checks("nope"), std::invalid_argument);
}

TEST_CASE("enum names")
{
  CHECK(scheme_from_string(to_string(Scheme::Simm)) == Scheme::Simm);
  for (auto ic : {InitialCondition::Planar, InitialCondition::GaussT1,
                  InitialCondition::GaussT2, InitialCondition::GaussAp})
    CHECK(initial_condition_from_string(to_string(ic)) == ic);
  CHECK_THROWS_AS(scheme_from_string("yee"), std::invalid_argument);
}
