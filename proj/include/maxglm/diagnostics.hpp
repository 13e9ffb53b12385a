// diagnostics.hpp
//
// Energy, divergence and error measurements plus their CSV writers.

#pragma once

#include "maxglm/htc.hpp"
#include "maxglm/simm.hpp"

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace maxglm {

struct DiagnosticsRow
{
  double t = 0.0;
  double energy = 0.0;
  double rel_energy_error = 0.0;
  double div_B = 0.0;
  double div_E = 0.0;
};

struct DiagnosticsSeries
{
  std::string scheme;
  std::string grid;
  std::string params;
  std::string config_hash;
  std::vector<DiagnosticsRow> rows;

  /// Appends a row; the relative energy error is taken against the first row.
  void append(double t, double energy, double div_B, double div_E);
  double max_abs_rel_energy_error() const;
  double max_div_B() const;
  double max_div_E() const;
};

template <typename Scalar>
Scalar total_energy_collocated(const FVState<Scalar>& s)
{
  Scalar sum = Scalar(0);
  for (Eigen::Index k = 0; k < s.q.cols(); ++k)
    sum += energy_density<Scalar>(s.q.col(k), s.model);
  return s.grid.cell_volume() * sum;
}

enum class VectorField { B, E };

/// L2 norm of the central-difference divergence of B or E on the collocated
/// grid. Reporting only; the collocated scheme does not preserve it.
template <typename Scalar>
Scalar collocated_divergence(const FVState<Scalar>& s, VectorField which)
{
  const auto& g = s.grid;
  const int off = which == VectorField::B ? var::B1 : var::E1;
  const Scalar wx = Scalar(1) / (Scalar(2) * g.dx());
  const Scalar wy = Scalar(1) / (Scalar(2) * g.dy());
  Scalar sum = Scalar(0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
    {
      const Scalar d =
          wx * (s.q(off, g.index(i + 1, j)) - s.q(off, g.index(i - 1, j))) +
          wy * (s.q(off + 1, g.index(i, j + 1)) -
                s.q(off + 1, g.index(i, j - 1)));
      sum += d * d;
    }
  using std::sqrt;
  return sqrt(g.cell_volume() * sum);
}

/// L2 norms of div_c2v(B^{n+1/2}) and div_v2c(E^{n+1/2}) for consecutive
/// states.
template <typename Scalar>
std::pair<Scalar, Scalar> staggered_divergences(const StaggeredState<Scalar>& s,
                                                const StaggeredState<Scalar>& next)
{
  const auto& g = s.grid;
  Field<Scalar> B_half = s.B_c;
  B_half.values = Scalar(0.5) * (s.B_c.values + next.B_c.values);
  Field<Scalar> E_half = s.E_p;
  E_half.values = Scalar(0.5) * (s.E_p.values + next.E_p.values);
  return {l2_norm(g, div_c2v(g, B_half)), l2_norm(g, div_v2c(g, E_half))};
}

/// Observed orders between consecutive refinements:
/// log(e_i / e_{i+1}) / log(N_{i+1} / N_i).
std::vector<double> convergence_order(
    const std::vector<std::pair<int, double>>& errors);

void write_energy_csv(std::ostream& os, const DiagnosticsSeries& s);
void write_divergence_csv(std::ostream& os, const DiagnosticsSeries& s);

/// One row per resolution: N, one error column per component, then one order
/// column per component (empty on the first row).
struct ErrorTable
{
  std::vector<std::string> components;
  std::vector<int> resolutions;
  std::vector<std::vector<double>> errors;  // [row][component]

  std::vector<double> column(std::size_t component) const;
  std::vector<std::vector<double>> orders() const;  // [row-1][component]
};

void write_errors_csv(std::ostream& os, const ErrorTable& table);

}  // namespace maxglm
