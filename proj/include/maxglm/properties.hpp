// properties.hpp
//
// Residuals of the structural identities the schemes rely on. Used by the
// `check` command and the test suites.

#pragma once

#include "maxglm/htc.hpp"
#include "maxglm/simm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace maxglm {

/// p^L.(f - f^L.n) + p^R.(f^R.n - f) - (F^R - F^L).n for the compatible flux f.
template <typename Scalar>
Scalar compatibility_residual(const State<Scalar>& qL, const State<Scalar>& qR,
                              const Eigen::Matrix<Scalar, 2, 1>& n,
                              const EnergyModel<Scalar>& m,
                              const SystemMatrices<Scalar>& mats)
{
  const State<Scalar> flux = abgrall_flux(qL, qR, n, m, mats);
  const State<Scalar> pL = main_field(qL, m);
  const State<Scalar> pR = main_field(qR, m);
  const State<Scalar> fnL = n[0] * physical_flux(qL, m, mats, 0) +
                            n[1] * physical_flux(qL, m, mats, 1);
  const State<Scalar> fnR = n[0] * physical_flux(qR, m, mats, 0) +
                            n[1] * physical_flux(qR, m, mats, 1);
  const Scalar FnL = n[0] * energy_flux(qL, m, mats, 0) +
                     n[1] * energy_flux(qL, m, mats, 1);
  const Scalar FnR = n[0] * energy_flux(qR, m, mats, 0) +
                     n[1] * energy_flux(qR, m, mats, 1);
  return pL.dot(flux - fnL) + pR.dot(fnR - flux) - (FnR - FnL);
}

/// sum_cells |cell| p . rhs: the semi-discrete rate of change of total energy.
template <typename Scalar>
Scalar energy_production(const FVState<Scalar>& s)
{
  const StateMatrix<Scalar> rhs = semidiscrete_rhs(s);
  Scalar sum = Scalar(0);
  for (Eigen::Index k = 0; k < s.q.cols(); ++k)
    sum += main_field<Scalar>(s.q.col(k), s.model).dot(rhs.col(k));
  return s.grid.cell_volume() * sum;
}

struct AdjointnessResiduals
{
  double grad_c2v_div_v2c = 0.0;  // <grad_c2v phi, A_p> + <phi, div_v2c A_p>
  double grad_v2c_div_c2v = 0.0;  // <grad_v2c phi, A_c> + <phi, div_c2v A_c>
  double curl_pair = 0.0;         // <curl_c2v A_c, A_p> - <A_c, curl_v2c A_p>
};

template <typename Scalar, typename Rng>
AdjointnessResiduals adjointness_residuals(const Grid2D<Scalar>& g, Rng& rng)
{
  const auto phi_c = random_field(g, Location::Cells, 1, rng);
  const auto phi_p = random_field(g, Location::Vertices, 1, rng);
  const auto A_c = random_field(g, Location::Cells, 3, rng);
  const auto A_p = random_field(g, Location::Vertices, 3, rng);
  AdjointnessResiduals r;
  r.grad_c2v_div_v2c = std::abs(
      double(inner(g, grad_c2v(g, phi_c), A_p) + inner(g, phi_c, div_v2c(g, A_p))));
  r.grad_v2c_div_c2v = std::abs(
      double(inner(g, grad_v2c(g, phi_p), A_c) + inner(g, phi_p, div_c2v(g, A_c))));
  r.curl_pair = std::abs(
      double(inner(g, curl_c2v(g, A_c), A_p) - inner(g, A_c, curl_v2c(g, A_p))));
  return r;
}

struct SpdResult
{
  double symmetry_residual = 0.0;  // |<u, Av> - <Au, v>| / (|u| |Av| + |Au| |v|)
  double min_rayleigh = 0.0;       // min <v, Av> / <v, v>
};

/// Symmetry and positivity of a linear field operator over random fields.
template <typename Scalar, typename Op, typename Rng>
SpdResult spd_check(const Grid2D<Scalar>& g, Location loc, int components,
                    Op&& apply, int trials, Rng& rng)
{
  using std::sqrt;
  SpdResult res;
  res.min_rayleigh = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t)
  {
    const auto u = random_field(g, loc, components, rng);
    const auto v = random_field(g, loc, components, rng);
    const auto Au = apply(u);
    const auto Av = apply(v);
    const Scalar scale = sqrt(inner(g, u, u) * inner(g, Av, Av)) +
                         sqrt(inner(g, Au, Au) * inner(g, v, v));
    res.symmetry_residual =
        std::max(res.symmetry_residual,
                 double(std::abs(inner(g, u, Av) - inner(g, Au, v)) / scale));
    res.min_rayleigh =
        std::min(res.min_rayleigh, double(inner(g, v, Av) / inner(g, v, v)));
  }
  return res;
}

}  // namespace maxglm
