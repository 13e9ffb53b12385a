// htc.hpp
//
// Energy-conserving collocated finite volume scheme: Abgrall-type compatible
// flux, semi-discrete right-hand side and explicit Runge-Kutta integration.

#pragma once

#include "maxglm/grid.hpp"
#include "maxglm/model.hpp"

#include <string>
#include <vector>

namespace maxglm {

/// Explicit Runge-Kutta coefficients. Coefficients are kept in double and
/// cast to the solver scalar at use.
struct ButcherTableau
{
  std::string name;
  int order = 0;
  Eigen::MatrixXd a;  // stages x stages, strictly lower triangular
  Eigen::VectorXd b;
  Eigen::VectorXd c;

  int stages() const { return static_cast<int>(b.size()); }

  /// Throws std::invalid_argument when the tableau is not explicit or not
  /// consistent (sum b = 1, c_i = sum_j a_ij) to within `tol`.
  void validate(double tol = 1e-14) const;
};

ButcherTableau rk4_tableau();

/// Dormand-Prince 8(5,3): twelve-stage explicit method of order eight.
ButcherTableau dop853_tableau();

/// "rk4" or "rk_high".
ButcherTableau tableau_by_name(const std::string& name);

template <typename Scalar>
using StateMatrix = Eigen::Matrix<Scalar, kNumVars, Eigen::Dynamic>;

template <typename Scalar>
struct FVState
{
  Grid2D<Scalar> grid;
  EnergyModel<Scalar> model;
  StateMatrix<Scalar> q;  // one column per cell
  Scalar t = Scalar(0);

  FVState() = default;
  FVState(const Grid2D<Scalar>& g, const EnergyModel<Scalar>& m)
      : grid(g), model(m), q(StateMatrix<Scalar>::Zero(kNumVars, g.size()))
  {
  }
};

namespace detail {

/// Per-cell quantities reused by all faces touching the cell.
template <typename Scalar>
struct CellFluxData
{
  State<Scalar> p;
  State<Scalar> f[2];
  Scalar F[2];
};

template <typename Scalar>
CellFluxData<Scalar> cell_flux_data(const State<Scalar>& q,
                                    const EnergyModel<Scalar>& m,
                                    const SystemMatrices<Scalar>& mats)
{
  CellFluxData<Scalar> d;
  d.p = main_field(q, m);
  for (int k = 0; k < 2; ++k)
  {
    d.f[k].noalias() = mats[k] * d.p;
    d.F[k] = Scalar(0.5) * d.p.dot(d.f[k]);
  }
  return d;
}

inline constexpr double kAlphaGuard = 1e-28;

/// Compatible flux from precomputed normal fluxes fL.n, fR.n and energy fluxes.
template <typename Scalar>
State<Scalar> abgrall_flux(const State<Scalar>& pL, const State<Scalar>& pR,
                           const State<Scalar>& fnL, const State<Scalar>& fnR,
                           Scalar FnL, Scalar FnR)
{
  const State<Scalar> dp = pR - pL;
  const Scalar dp2 = dp.squaredNorm();
  State<Scalar> flux = Scalar(0.5) * (fnL + fnR);
  if (dp2 >= Scalar(kAlphaGuard))
  {
    const Scalar num =
        (FnR - FnL) + Scalar(0.5) * (pR + pL).dot(fnL - fnR);
    flux -= (num / dp2) * dp;
  }
  return flux;
}

}  // namespace detail

/// Thermodynamically compatible numerical flux across a face with unit normal
/// n = (n1, n2) pointing from the left to the right state.
template <typename Scalar>
State<Scalar> abgrall_flux(const State<Scalar>& qL, const State<Scalar>& qR,
                           const Eigen::Matrix<Scalar, 2, 1>& n,
                           const EnergyModel<Scalar>& m,
                           const SystemMatrices<Scalar>& mats)
{
  const auto L = detail::cell_flux_data(qL, m, mats);
  const auto R = detail::cell_flux_data(qR, m, mats);
  const State<Scalar> fnL = n[0] * L.f[0] + n[1] * L.f[1];
  const State<Scalar> fnR = n[0] * R.f[0] + n[1] * R.f[1];
  const Scalar FnL = n[0] * L.F[0] + n[1] * L.F[1];
  const Scalar FnR = n[0] * R.F[0] + n[1] * R.F[1];
  return detail::abgrall_flux(L.p, R.p, fnL, fnR, FnL, FnR);
}

template <typename Scalar>
State<Scalar> abgrall_flux(const State<Scalar>& qL, const State<Scalar>& qR,
                           const Eigen::Matrix<Scalar, 2, 1>& n,
                           const EnergyModel<Scalar>& m)
{
  return abgrall_flux(qL, qR, n, m, assemble_matrices(m.params));
}

/// dq/dt for every cell: -(1/|cell|) * sum over the four faces of
/// |face| * flux, periodic neighbours.
template <typename Scalar>
StateMatrix<Scalar> semidiscrete_rhs(const Grid2D<Scalar>& g,
                                     const EnergyModel<Scalar>& m,
                                     const SystemMatrices<Scalar>& mats,
                                     const StateMatrix<Scalar>& q)
{
  const int nx = g.nx;
  const int ny = g.ny;
  const int n = g.size();
  std::vector<detail::CellFluxData<Scalar>> cells(n);
  for (int k = 0; k < n; ++k)
    cells[k] = detail::cell_flux_data<Scalar>(q.col(k), m, mats);

  const Scalar inv_dx = Scalar(1) / g.dx();
  const Scalar inv_dy = Scalar(1) / g.dy();
  StateMatrix<Scalar> rhs = StateMatrix<Scalar>::Zero(kNumVars, n);
  for (int j = 0; j < ny; ++j)
  {
    const int jp = j + 1 == ny ? 0 : j + 1;
    for (int i = 0; i < nx; ++i)
    {
      const int ip = i + 1 == nx ? 0 : i + 1;
      const int k = i + nx * j;
      const auto& c = cells[k];

      const int kx = ip + nx * j;
      const auto& cx = cells[kx];
      const State<Scalar> fx =
          detail::abgrall_flux(c.p, cx.p, c.f[0], cx.f[0], c.F[0], cx.F[0]);
      rhs.col(k) -= inv_dx * fx;
      rhs.col(kx) += inv_dx * fx;

      const int ky = i + nx * jp;
      const auto& cy = cells[ky];
      const State<Scalar> fy =
          detail::abgrall_flux(c.p, cy.p, c.f[1], cy.f[1], c.F[1], cy.F[1]);
      rhs.col(k) -= inv_dy * fy;
      rhs.col(ky) += inv_dy * fy;
    }
  }
  return rhs;
}

template <typename Scalar>
StateMatrix<Scalar> semidiscrete_rhs(const FVState<Scalar>& s)
{
  return semidiscrete_rhs(s.grid, s.model, assemble_matrices(s.model.params),
                          s.q);
}

/// One explicit Runge-Kutta step of an autonomous system dq/dt = rhs(q).
template <typename Scalar, typename Mat, typename Rhs>
Mat rk_advance(const Mat& q, Scalar dt, const ButcherTableau& tab, Rhs&& rhs)
{
  const int s = tab.stages();
  std::vector<Mat> k(s);
  for (int i = 0; i < s; ++i)
  {
    Mat stage = q;
    for (int j = 0; j < i; ++j)
      if (tab.a(i, j) != 0.0)
        stage += (dt * Scalar(tab.a(i, j))) * k[j];
    k[i] = rhs(stage);
  }
  Mat out = q;
  for (int i = 0; i < s; ++i)
    if (tab.b[i] != 0.0)
      out += (dt * Scalar(tab.b[i])) * k[i];
  return out;
}

template <typename Scalar>
FVState<Scalar> rk_step(const FVState<Scalar>& s, Scalar dt,
                        const ButcherTableau& tab)
{
  if (!(dt > Scalar(0)))
    throw std::invalid_argument("rk_step: dt must be positive");
  const auto mats = assemble_matrices(s.model.params);
  FVState<Scalar> out = s;
  out.q = rk_advance(s.q, dt, tab, [&](const StateMatrix<Scalar>& q) {
    return semidiscrete_rhs(s.grid, s.model, mats, q);
  });
  out.t = s.t + dt;
  return out;
}

enum class CflMode { Light, Strict };

/// Default: cfl / (c0/dx + c0/dy). Strict: uses max(c0, ch) instead of c0.
template <typename Scalar>
Scalar cfl_dt(const Grid2D<Scalar>& g, const ModelParams<Scalar>& m,
              Scalar cfl, CflMode mode = CflMode::Light)
{
  if (!(cfl > Scalar(0)) || cfl > Scalar(1))
    throw std::invalid_argument("cfl_dt: cfl must lie in (0, 1]");
  const Scalar s = mode == CflMode::Light ? m.c0 : max_signal_speed(m);
  return cfl / (s / g.dx() + s / g.dy());
}

}  // namespace maxglm
