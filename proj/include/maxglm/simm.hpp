// simm.hpp
//
// Staggered semi-implicit mimetic scheme. B and psi live at cell centers,
// E and phi at vertices. Each step solves two decoupled SPD wave equations
// (for phi^{n+1} and E^{n+1}) and then updates B and psi explicitly with the
// half-time averages. Total energy is conserved exactly up to the linear
// solver tolerance.

#pragma once

#include "maxglm/cg.hpp"
#include "maxglm/mimetic.hpp"
#include "maxglm/model.hpp"

namespace maxglm {

template <typename Scalar>
struct StaggeredState
{
  Grid2D<Scalar> grid;
  ModelParams<Scalar> params;
  Field<Scalar> B_c;    // cells, 3 components
  Field<Scalar> psi_c;  // cells, 1 component
  Field<Scalar> E_p;    // vertices, 3 components
  Field<Scalar> phi_p;  // vertices, 1 component
  Scalar t = Scalar(0);

  StaggeredState() = default;
  StaggeredState(const Grid2D<Scalar>& g, const ModelParams<Scalar>& m)
      : grid(g), params(m), B_c(g, Location::Cells, 3),
        psi_c(g, Location::Cells, 1), E_p(g, Location::Vertices, 3),
        phi_p(g, Location::Vertices, 1)
  {
  }
};

/// phi - 1/4 dt^2 ch^2 div_c2v(grad_v2c(phi)).
template <typename Scalar>
Field<Scalar> apply_phi_operator(const Grid2D<Scalar>& g,
                                 const ModelParams<Scalar>& m, Scalar dt,
                                 const Field<Scalar>& phi_p)
{
  const Scalar w = Scalar(0.25) * dt * dt * m.ch * m.ch;
  Field<Scalar> out = phi_p;
  out.values -= w * div_c2v(g, grad_v2c(g, phi_p)).values;
  return out;
}

/// E + 1/4 dt^2 c0^2 curl_c2v(curl_v2c E) - 1/4 dt^2 ch^2 grad_c2v(div_v2c E).
template <typename Scalar>
Field<Scalar> apply_E_operator(const Grid2D<Scalar>& g,
                               const ModelParams<Scalar>& m, Scalar dt,
                               const Field<Scalar>& E_p)
{
  const Scalar wc = Scalar(0.25) * dt * dt * m.c0 * m.c0;
  const Scalar wh = Scalar(0.25) * dt * dt * m.ch * m.ch;
  Field<Scalar> out = E_p;
  out.values += wc * curl_c2v(g, curl_v2c(g, E_p)).values;
  out.values -= wh * grad_c2v(g, div_v2c(g, E_p)).values;
  return out;
}

/// Iteration counts of the two linear solves of the last step.
struct SimmStepReport
{
  CGReport phi;
  CGReport E;
};

template <typename Scalar>
StaggeredState<Scalar> simm_step(const StaggeredState<Scalar>& s, Scalar dt,
                                 const CGConfig& cfg,
                                 SimmStepReport* report = nullptr)
{
  if (!(dt > Scalar(0)))
    throw std::invalid_argument("simm_step: dt must be positive");
  const auto& g = s.grid;
  const Scalar c0 = s.params.c0;
  const Scalar ch = s.params.ch;
  const Scalar q = Scalar(0.25) * dt * dt;

  // Wave equation for phi^{n+1}.
  Field<Scalar> phi_rhs = s.phi_p;
  phi_rhs.values -= dt * ch * div_c2v(g, s.B_c).values;
  phi_rhs.values += q * ch * ch * div_c2v(g, grad_v2c(g, s.phi_p)).values;
  const Field<Scalar> phi_new = cg_solve(
      g,
      [&](const Field<Scalar>& x) { return apply_phi_operator(g, s.params, dt, x); },
      phi_rhs, s.phi_p, cfg, report ? &report->phi : nullptr);

  // Vector wave equation for E^{n+1}.
  Field<Scalar> r = s.E_p;
  r.values += dt * c0 * curl_c2v(g, s.B_c).values;
  r.values -= q * c0 * c0 * curl_c2v(g, curl_v2c(g, s.E_p)).values;
  r.values -= dt * ch * grad_c2v(g, s.psi_c).values;
  r.values += q * ch * ch * grad_c2v(g, div_v2c(g, s.E_p)).values;
  const Field<Scalar> E_new = cg_solve(
      g,
      [&](const Field<Scalar>& x) { return apply_E_operator(g, s.params, dt, x); },
      r, s.E_p, cfg, report ? &report->E : nullptr);

  Field<Scalar> E_half = s.E_p;
  E_half.values = Scalar(0.5) * (s.E_p.values + E_new.values);
  Field<Scalar> phi_half = s.phi_p;
  phi_half.values = Scalar(0.5) * (s.phi_p.values + phi_new.values);

  StaggeredState<Scalar> out = s;
  out.phi_p = phi_new;
  out.E_p = E_new;
  out.B_c.values -= dt * c0 * curl_v2c(g, E_half).values;
  out.B_c.values -= dt * ch * grad_v2c(g, phi_half).values;
  out.psi_c.values -= dt * ch * div_v2c(g, E_half).values;
  out.t = s.t + dt;
  return out;
}

template <typename Scalar>
Scalar total_energy_staggered(const StaggeredState<Scalar>& s)
{
  const Scalar vol = s.grid.cell_volume();
  return Scalar(0.5) * vol *
         (s.B_c.values.squaredNorm() + s.psi_c.values.squaredNorm() +
          s.phi_p.values.squaredNorm() + s.E_p.values.squaredNorm());
}

}  // namespace maxglm
