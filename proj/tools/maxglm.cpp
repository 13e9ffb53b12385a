// maxglm.cpp
//
// Command-line driver:
//   maxglm run --config <file> [--override key=value ...]
//   maxglm convergence --scheme htc|simm --n 20,40,80,160
//   maxglm ap --ch 1e2,1e3,1e4,1e5
//   maxglm check [--suite all|ops|flux|matrices]
//
// Output goes below $MAXGLM_OUTPUT_ROOT (default ./out) unless a run config
// names its own output_dir.

#include "maxglm/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace maxglm;

namespace {

fs::path output_root()
{
  const char* env = std::getenv("MAXGLM_OUTPUT_ROOT");
  return env && *env ? fs::path(env) : fs::path("out");
}

bool within_factor(double value, double ref, double factor)
{
  return value <= ref * factor && value >= ref / factor;
}

int cmd_run(const std::string& config_path,
            const std::vector<std::string>& overrides)
{
  RunConfig cfg = load_config(config_path);
  apply_overrides(cfg, overrides);
  if (cfg.output_dir.empty())
    cfg.output_dir = (output_root() / ("run_" + cfg.hash())).string();
  const auto result = run(cfg);
  std::cout << std::ifstream(fs::path(cfg.output_dir) / "summary.txt").rdbuf();
  for (const auto& p : result.written)
    if (p.extension() == ".csv")
      std::cout << "wrote " << p.string() << '\n';
  return 0;
}

int cmd_convergence(const std::string& scheme_name, const std::vector<int>& ns,
                    const std::string& rk)
{
  const Scheme scheme = scheme_from_string(scheme_name);
  const auto table = study_convergence(scheme, ns, rk);
  const fs::path dir = output_root() / ("convergence_" + scheme_name);
  fs::create_directories(dir);
  {
    std::ofstream csv(dir / "errors.csv");
    write_errors_csv(csv, table);
  }

  const auto& ref = scheme == Scheme::Htc ? reference::kHtcErrors
                                          : reference::kSimmErrors;
  const auto orders = table.orders();
  bool ok = true;
  std::ostringstream os;
  os << std::scientific << std::setprecision(3);
  os << "L2 errors, scheme " << scheme_name << " (reference in brackets)\n";
  for (std::size_t r = 0; r < table.resolutions.size(); ++r)
  {
    const int N = table.resolutions[r];
    os << "N=" << std::setw(4) << N;
    const auto& refs = reference::kConvergenceResolutions;
    const auto it = std::find(refs.begin(), refs.end(), N);
    for (std::size_t c = 0; c < table.components.size(); ++c)
    {
      const double e = table.errors[r][c];
      os << "  " << table.components[c] << " " << e;
      if (it != refs.end())
      {
        const double rv = ref[it - refs.begin()][c];
        const bool pass = within_factor(e, rv, 2.0);
        ok = ok && pass;
        os << " [" << rv << (pass ? "" : " FAIL") << "]";
      }
    }
    os << '\n';
    if (r > 0)
    {
      os << std::fixed << std::setprecision(2) << "  orders:";
      for (double o : orders[r - 1])
      {
        os << ' ' << o;
        ok = ok && o >= 1.9;
      }
      os << std::scientific << std::setprecision(3) << '\n';
    }
  }
  os << (ok ? "PASS" : "FAIL")
     << ": errors within a factor of 2 of the reference and orders >= 1.9\n";
  std::ofstream(dir / "summary.txt") << os.str();
  std::cout << os.str() << "wrote " << (dir / "errors.csv").string() << '\n';
  return ok ? 0 : 1;
}

int cmd_ap(const std::vector<double>& chs)
{
  const auto rows = study_ap(chs);
  const auto orders = ap_orders(rows);
  const fs::path dir = output_root() / "ap";
  fs::create_directories(dir);
  {
    std::ofstream csv(dir / "ap.csv");
    write_ap_csv(csv, rows);
  }
  bool ok = true;
  std::ostringstream os;
  os << std::scientific << std::setprecision(6);
  os << "half-time divergence norms, 40x40, dt=1e-2, t=0.1\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    const auto& r = rows[i];
    os << "ch=" << std::setprecision(1) << r.ch << std::setprecision(6)
       << "  divB " << r.div_B << "  divE " << r.div_E;
    for (const auto& ref : reference::kApTable)
      if (std::abs(ref.ch - r.ch) <= 1e-9 * ref.ch)
      {
        const bool pass = within_factor(r.div_B, ref.div_B, 2.0) &&
                          within_factor(r.div_E, ref.div_E, 2.0);
        ok = ok && pass;
        os << "  [ref " << ref.div_B << ", " << ref.div_E
           << (pass ? "" : " FAIL") << "]";
      }
    if (i > 0)
      os << std::fixed << std::setprecision(2) << "  order " << orders[i - 1].first
         << ", " << orders[i - 1].second << std::scientific << std::setprecision(6);
    os << '\n';
  }
  if (rows.size() >= 2 && std::abs(rows.back().ch - 1e5) < 1 &&
      std::abs(rows[rows.size() - 2].ch - 1e4) < 1)
  {
    const auto [oB, oE] = orders.back();
    const bool pass = std::abs(oB - 2.0) <= 0.1 && std::abs(oE - 2.0) <= 0.1;
    ok = ok && pass;
    os << "order between ch=1e4 and 1e5 is 2.0 +- 0.1: "
       << (pass ? "yes" : "no") << '\n';
  }
  os << (ok ? "PASS" : "FAIL") << '\n';
  std::ofstream(dir / "summary.txt") << os.str();
  std::cout << os.str() << "wrote " << (dir / "ap.csv").string() << '\n';
  return ok ? 0 : 1;
}

int cmd_check(const std::string& suite, unsigned seed)
{
  const auto results = run_checks(suite, seed);
  bool ok = true;
  for (const auto& r : results)
  {
    std::cout << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(56)
              << r.name << std::right << std::scientific << std::setprecision(3)
              << r.value << "  (<= " << r.threshold << ")\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Maxwell-GLM structure-preserving solvers"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto* run_cmd = app.add_subcommand("run", "run one configuration");
  run_cmd->add_option("--config", config_path, "config file")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--override", overrides, "key=value overrides");

  std::string scheme = "htc";
  std::vector<int> ns = {20, 40, 80, 160};
  std::string rk = "rk_high";
  auto* conv_cmd =
      app.add_subcommand("convergence", "planar-wave convergence study");
  conv_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"htc", "simm"}));
  conv_cmd->add_option("--n", ns)->delimiter(',');
  conv_cmd->add_option("--rk", rk)->check(CLI::IsMember({"rk4", "rk_high"}));

  std::vector<double> chs = {1e2, 1e3, 1e4, 1e5};
  auto* ap_cmd = app.add_subcommand("ap", "asymptotic-preserving study");
  ap_cmd->add_option("--ch", chs)->delimiter(',');

  std::string suite = "all";
  unsigned seed = 1;
  auto* check_cmd = app.add_subcommand("check", "structural property suites");
  check_cmd->add_option("--suite", suite)
      ->check(CLI::IsMember({"all", "ops", "flux", "matrices"}));
  check_cmd->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (*run_cmd)
      return cmd_run(config_path, overrides);
    if (*conv_cmd)
      return cmd_convergence(scheme, ns, rk);
    if (*ap_cmd)
      return cmd_ap(chs);
    if (*check_cmd)
      return cmd_check(suite, seed);
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
