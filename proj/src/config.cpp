// config.cpp

#include "maxglm/harness.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace maxglm {

std::string to_string(Scheme s) { return s == Scheme::Htc ? "htc" : "simm"; }

std::string to_string(InitialCondition ic)
{
  switch (ic)
  {
  case InitialCondition::Planar:
    return "planar";
  case InitialCondition::GaussT1:
    return "gauss_t1";
  case InitialCondition::GaussT2:
    return "gauss_t2";
  case InitialCondition::GaussAp:
    return "gauss_ap";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s)
{
  if (s == "htc")
    return Scheme::Htc;
  if (s == "simm")
    return Scheme::Simm;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

InitialCondition initial_condition_from_string(const std::string& s)
{
  if (s == "planar")
    return InitialCondition::Planar;
  if (s == "gauss_t1")
    return InitialCondition::GaussT1;
  if (s == "gauss_t2")
    return InitialCondition::GaussT2;
  if (s == "gauss_ap")
    return InitialCondition::GaussAp;
  throw std::invalid_argument("unknown initial condition '" + s + "'");
}

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
  std::size_t pos = 0;
  double out = 0.0;
  try
  {
    out = std::stod(v, &pos);
  }
  catch (const std::exception&)
  {
    pos = 0;
  }
  if (pos == 0 || pos != v.size())
    throw std::invalid_argument("config: '" + key + "' expects a number, got '" +
                                v + "'");
  return out;
}

int to_int(const std::string& key, const std::string& v)
{
  const double d = to_double(key, v);
  if (d != static_cast<double>(static_cast<long long>(d)))
    throw std::invalid_argument("config: '" + key + "' expects an integer");
  return static_cast<int>(d);
}

std::optional<double> to_optional(const std::string& key, const std::string& v)
{
  if (v.empty() || v == "none")
    return std::nullopt;
  return to_double(key, v);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& raw)
{
  const std::string v = trim(raw);
  if (key == "scheme")
    scheme = scheme_from_string(v);
  else if (key == "energy")
  {
    if (v == "quadratic")
      energy = EnergyKind::Quadratic;
    else if (v == "exponential")
      energy = EnergyKind::Exponential;
    else
      throw std::invalid_argument("unknown energy model '" + v + "'");
  }
  else if (key == "c0")
    c0 = to_double(key, v);
  else if (key == "ch")
    ch = to_double(key, v);
  else if (key == "nx")
    nx = to_int(key, v);
  else if (key == "ny")
    ny = to_int(key, v);
  else if (key == "x_min")
    x_min = to_double(key, v);
  else if (key == "x_max")
    x_max = to_double(key, v);
  else if (key == "y_min")
    y_min = to_double(key, v);
  else if (key == "y_max")
    y_max = to_double(key, v);
  else if (key == "cfl")
    cfl = to_optional(key, v);
  else if (key == "dt")
    dt = to_optional(key, v);
  else if (key == "cfl_mode")
  {
    if (v == "light")
      cfl_mode = CflMode::Light;
    else if (v == "strict")
      cfl_mode = CflMode::Strict;
    else
      throw std::invalid_argument("unknown cfl_mode '" + v + "'");
  }
  else if (key == "t_end")
    t_end = to_double(key, v);
  else if (key == "ic")
    ic = initial_condition_from_string(v);
  else if (key == "sigma")
    sigma = to_double(key, v);
  else if (key == "rk")
  {
    tableau_by_name(v);
    rk = v;
  }
  else if (key == "cg_tol")
    cg_tol = to_double(key, v);
  else if (key == "cg_maxiter")
    cg_maxiter = to_int(key, v);
  else if (key == "output_dir")
    output_dir = v;
  else if (key == "snapshot_every")
    snapshot_every = to_int(key, v);
  else if (key == "seed")
    seed = static_cast<unsigned>(to_int(key, v));
  else
    throw std::invalid_argument("config: unknown key '" + key + "'");
}

void RunConfig::validate() const
{
  auto require = [](bool ok, const std::string& what) {
    if (!ok)
      throw std::invalid_argument("config: " + what);
  };
  require(c0 > 0.0 && ch > 0.0, "c0 and ch must be positive");
  require(nx >= 2 && ny >= 2, "nx and ny must be at least 2");
  require(x_max > x_min && y_max > y_min, "empty domain");
  require(!(cfl && dt), "set exactly one of cfl and dt");
  if (cfl)
    require(*cfl > 0.0 && *cfl <= 1.0, "cfl must lie in (0, 1]");
  if (dt)
    require(*dt > 0.0, "dt must be positive");
  require(t_end >= 0.0, "t_end must be non-negative");
  require(sigma > 0.0, "sigma must be positive");
  require(!(scheme == Scheme::Simm && energy != EnergyKind::Quadratic),
          "the staggered scheme supports only the quadratic energy");
  require(cg_tol > 0.0 && cg_maxiter >= 0, "invalid linear solver settings");
  require(snapshot_every >= 0, "snapshot_every must be >= 0");
}

Grid2D<double> RunConfig::grid() const
{
  return Grid2D<double>(nx, ny, x_min, x_max, y_min, y_max);
}

double RunConfig::time_step() const
{
  if (dt)
    return *dt;
  return cfl_dt(grid(), params(), cfl.value_or(0.9), cfl_mode);
}

std::string RunConfig::serialize() const
{
  std::ostringstream os;
  os << std::setprecision(17);
  os << "scheme = " << to_string(scheme) << '\n'
     << "energy = "
     << (energy == EnergyKind::Quadratic ? "quadratic" : "exponential") << '\n'
     << "c0 = " << c0 << '\n'
     << "ch = " << ch << '\n'
     << "nx = " << nx << '\n'
     << "ny = " << ny << '\n'
     << "x_min = " << x_min << '\n'
     << "x_max = " << x_max << '\n'
     << "y_min = " << y_min << '\n'
     << "y_max = " << y_max << '\n';
  if (cfl)
    os << "cfl = " << *cfl << '\n';
  if (dt)
    os << "dt = " << *dt << '\n';
  os << "cfl_mode = " << (cfl_mode == CflMode::Light ? "light" : "strict")
     << '\n'
     << "t_end = " << t_end << '\n'
     << "ic = " << to_string(ic) << '\n'
     << "sigma = " << sigma << '\n'
     << "rk = " << rk << '\n'
     << "cg_tol = " << cg_tol << '\n'
     << "cg_maxiter = " << cg_maxiter << '\n'
     << "output_dir = " << output_dir << '\n'
     << "snapshot_every = " << snapshot_every << '\n'
     << "seed = " << seed << '\n';
  return os.str();
}

std::string RunConfig::hash() const
{
  // FNV-1a over the canonical listing.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize())
  {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

RunConfig parse_config(std::istream& is, RunConfig base)
{
  std::string line;
  int lineno = 0;
  while (std::getline(is, line))
  {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    base.set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config file " + path.string());
  return parse_config(in);
}

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& overrides)
{
  for (const auto& o : overrides)
  {
    const auto eq = o.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("override '" + o + "' is not key=value");
    cfg.set(trim(o.substr(0, eq)), o.substr(eq + 1));
  }
}

}  // namespace maxglm
