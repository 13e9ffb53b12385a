// diagnostics.cpp

#include "maxglm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxglm {

void DiagnosticsSeries::append(double t, double energy, double div_B,
                               double div_E)
{
  if (!rows.empty() && !(t > rows.back().t))
    throw std::invalid_argument("DiagnosticsSeries: time must increase");
  DiagnosticsRow row{t, energy, 0.0, div_B, div_E};
  if (!rows.empty())
    row.rel_energy_error = energy / rows.front().energy - 1.0;
  rows.push_back(row);
}

double DiagnosticsSeries::max_abs_rel_energy_error() const
{
  double m = 0.0;
  for (const auto& r : rows)
    m = std::max(m, std::abs(r.rel_energy_error));
  return m;
}

double DiagnosticsSeries::max_div_B() const
{
  double m = 0.0;
  for (const auto& r : rows)
    m = std::max(m, r.div_B);
  return m;
}

double DiagnosticsSeries::max_div_E() const
{
  double m = 0.0;
  for (const auto& r : rows)
    m = std::max(m, r.div_E);
  return m;
}

std::vector<double> convergence_order(
    const std::vector<std::pair<int, double>>& errors)
{
  std::vector<double> orders;
  for (std::size_t i = 0; i < errors.size(); ++i)
  {
    if (!(errors[i].second > 0.0))
      throw std::invalid_argument("convergence_order: errors must be positive");
    if (i == 0)
      continue;
    const auto [n0, e0] = errors[i - 1];
    const auto [n1, e1] = errors[i];
    if (n1 <= n0)
      throw std::invalid_argument(
          "convergence_order: resolutions must increase");
    orders.push_back(std::log(e0 / e1) / std::log(double(n1) / double(n0)));
  }
  return orders;
}

namespace {

struct PrecisionGuard
{
  std::ostream& os;
  std::streamsize old;
  explicit PrecisionGuard(std::ostream& o) : os(o), old(o.precision(17)) {}
  ~PrecisionGuard() { os.precision(old); }
};

}  // namespace

void write_energy_csv(std::ostream& os, const DiagnosticsSeries& s)
{
  PrecisionGuard guard(os);
  os << "t,energy,rel_err\n";
  for (const auto& r : s.rows)
    os << r.t << ',' << r.energy << ',' << r.rel_energy_error << '\n';
}

void write_divergence_csv(std::ostream& os, const DiagnosticsSeries& s)
{
  PrecisionGuard guard(os);
  os << "t,divB,divE\n";
  for (const auto& r : s.rows)
    os << r.t << ',' << r.div_B << ',' << r.div_E << '\n';
}

std::vector<double> ErrorTable::column(std::size_t component) const
{
  std::vector<double> out;
  for (const auto& row : errors)
    out.push_back(row.at(component));
  return out;
}

std::vector<std::vector<double>> ErrorTable::orders() const
{
  std::vector<std::vector<double>> out(
      resolutions.empty() ? 0 : resolutions.size() - 1,
      std::vector<double>(components.size()));
  for (std::size_t c = 0; c < components.size(); ++c)
  {
    std::vector<std::pair<int, double>> col;
    for (std::size_t r = 0; r < resolutions.size(); ++r)
      col.emplace_back(resolutions[r], errors[r][c]);
    const auto o = convergence_order(col);
    for (std::size_t r = 0; r < o.size(); ++r)
      out[r][c] = o[r];
  }
  return out;
}

void write_errors_csv(std::ostream& os, const ErrorTable& table)
{
  PrecisionGuard guard(os);
  const auto orders = table.orders();
  os << "N";
  for (const auto& c : table.components)
    os << ",err_" << c;
  for (const auto& c : table.components)
    os << ",order_" << c;
  os << '\n';
  for (std::size_t r = 0; r < table.resolutions.size(); ++r)
  {
    os << table.resolutions[r];
    for (double e : table.errors[r])
      os << ',' << e;
    for (std::size_t c = 0; c < table.components.size(); ++c)
    {
      os << ',';
      if (r > 0)
        os << orders[r - 1][c];
    }
    os << '\n';
  }
}

}  // namespace maxglm
