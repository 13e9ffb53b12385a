// model.hpp
//
// Continuous Maxwell-GLM model: state layout, energy potentials, main field,
// symmetric system matrices and the physical / energy fluxes.
//
// State ordering is (B1, B2, B3, phi, E1, E2, E3, psi) throughout the library.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxglm {

inline constexpr int kNumVars = 8;

/// Slot indices into a state vector.
namespace var {
inline constexpr int B1 = 0;
inline constexpr int B2 = 1;
inline constexpr int B3 = 2;
inline constexpr int Phi = 3;
inline constexpr int E1 = 4;
inline constexpr int E2 = 5;
inline constexpr int E3 = 6;
inline constexpr int Psi = 7;
}  // namespace var

template <typename Scalar>
using State = Eigen::Matrix<Scalar, kNumVars, 1>;

template <typename Scalar>
using SystemMatrix = Eigen::Matrix<Scalar, kNumVars, kNumVars>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
State<Scalar> make_state(const Vector3<Scalar>& B, Scalar phi,
                         const Vector3<Scalar>& E, Scalar psi)
{
  State<Scalar> q;
  q << B, phi, E, psi;
  return q;
}

template <typename Scalar>
struct ModelParams
{
  Scalar c0 = Scalar(1);  // vacuum light speed
  Scalar ch = Scalar(1);  // cleaning speed

  void validate() const
  {
    if (!(c0 > Scalar(0)) || !(ch > Scalar(0)))
      throw std::invalid_argument("ModelParams: c0 and ch must be positive");
  }
};

enum class EnergyKind { Quadratic, Exponential };

template <typename Scalar>
struct EnergyModel
{
  EnergyKind kind = EnergyKind::Quadratic;
  ModelParams<Scalar> params;
};

template <typename Scalar>
Scalar max_signal_speed(const ModelParams<Scalar>& m)
{
  return std::max(m.c0, m.ch);
}

/// Total energy density of a single state.
template <typename Scalar>
Scalar energy_density(const State<Scalar>& q, const EnergyModel<Scalar>& m)
{
  const Scalar B2 = q.template segment<3>(var::B1).squaredNorm();
  const Scalar E2 = q.template segment<3>(var::E1).squaredNorm();
  const Scalar phi2 = q[var::Phi] * q[var::Phi];
  const Scalar psi2 = q[var::Psi] * q[var::Psi];
  if (m.kind == EnergyKind::Quadratic)
    return Scalar(0.5) * (E2 + B2) + Scalar(0.5) * (psi2 + phi2);

  using std::exp;
  const Scalar c0 = m.params.c0;
  const Scalar scalar_weight = m.params.ch * m.params.ch / c0;
  return c0 * exp(Scalar(0.5) * B2) + c0 * exp(Scalar(0.5) * E2) +
         scalar_weight * exp(Scalar(0.5) * phi2) +
         scalar_weight * exp(Scalar(0.5) * psi2);
}

/// Main field p = dE/dq.
template <typename Scalar>
State<Scalar> main_field(const State<Scalar>& q, const EnergyModel<Scalar>& m)
{
  if (m.kind == EnergyKind::Quadratic)
    return q;

  using std::exp;
  const Scalar c0 = m.params.c0;
  const Scalar scalar_weight = m.params.ch * m.params.ch / c0;
  const Scalar B2 = q.template segment<3>(var::B1).squaredNorm();
  const Scalar E2 = q.template segment<3>(var::E1).squaredNorm();

  State<Scalar> p;
  p.template segment<3>(var::B1) =
      c0 * exp(Scalar(0.5) * B2) * q.template segment<3>(var::B1);
  p[var::Phi] = scalar_weight * exp(Scalar(0.5) * q[var::Phi] * q[var::Phi]) *
                q[var::Phi];
  p.template segment<3>(var::E1) =
      c0 * exp(Scalar(0.5) * E2) * q.template segment<3>(var::E1);
  p[var::Psi] = scalar_weight * exp(Scalar(0.5) * q[var::Psi] * q[var::Psi]) *
                q[var::Psi];
  return p;
}

/// The three symmetric flux matrices H_k together with the eigen-decomposition
/// of H_1. Eigenvalue order: (-ch, -ch, -c0, -c0, +c0, +c0, +ch, +ch).
template <typename Scalar>
struct SystemMatrices
{
  SystemMatrix<Scalar> H[3];
  SystemMatrix<Scalar> R;
  State<Scalar> lambda;

  const SystemMatrix<Scalar>& operator[](int axis) const { return H[axis]; }
};

template <typename Scalar>
SystemMatrices<Scalar> assemble_matrices(const ModelParams<Scalar>& m)
{
  m.validate();
  const Scalar c0 = m.c0;
  const Scalar ch = m.ch;
  SystemMatrices<Scalar> s;
  for (auto& h : s.H)
    h.setZero();

  // Each entry is set together with its mirror so symmetry holds bitwise.
  auto set = [](SystemMatrix<Scalar>& h, int r, int c, Scalar v) {
    h(r, c) = v;
    h(c, r) = v;
  };

  // x-direction: grad/div along x and the x-part of both curls.
  set(s.H[0], var::B1, var::Phi, ch);
  set(s.H[0], var::B2, var::E3, -c0);
  set(s.H[0], var::B3, var::E2, c0);
  set(s.H[0], var::E1, var::Psi, ch);

  set(s.H[1], var::B1, var::E3, c0);
  set(s.H[1], var::B2, var::Phi, ch);
  set(s.H[1], var::B3, var::E1, -c0);
  set(s.H[1], var::E2, var::Psi, ch);

  set(s.H[2], var::B1, var::E2, -c0);
  set(s.H[2], var::B2, var::E1, c0);
  set(s.H[2], var::B3, var::Phi, ch);
  set(s.H[2], var::E3, var::Psi, ch);

  // clang-format off
  s.R <<
    -1,  0,  0,  0,  0,  0,  0,  1,
     0,  0,  1,  0,  0, -1,  0,  0,
     0,  0,  0, -1,  1,  0,  0,  0,
     1,  0,  0,  0,  0,  0,  0,  1,
     0, -1,  0,  0,  0,  0,  1,  0,
     0,  0,  0,  1,  1,  0,  0,  0,
     0,  0,  1,  0,  0,  1,  0,  0,
     0,  1,  0,  0,  0,  0,  1,  0;
  // clang-format on
  s.lambda << -ch, -ch, -c0, -c0, c0, c0, ch, ch;
  return s;
}

/// f_k(q) = H_k p(q), axis in {0, 1, 2}.
template <typename Scalar>
State<Scalar> physical_flux(const State<Scalar>& q,
                            const EnergyModel<Scalar>& m,
                            const SystemMatrices<Scalar>& mats, int axis)
{
  return mats[axis] * main_field(q, m);
}

template <typename Scalar>
State<Scalar> physical_flux(const State<Scalar>& q,
                            const EnergyModel<Scalar>& m, int axis)
{
  return physical_flux(q, m, assemble_matrices(m.params), axis);
}

/// F_k(q) = 1/2 p^T H_k p. For the quadratic energy this is the k-component of
/// c0 E x B + ch (psi E + phi B).
template <typename Scalar>
Scalar energy_flux(const State<Scalar>& q, const EnergyModel<Scalar>& m,
                   const SystemMatrices<Scalar>& mats, int axis)
{
  const State<Scalar> p = main_field(q, m);
  return Scalar(0.5) * p.dot(mats[axis] * p);
}

template <typename Scalar>
Scalar energy_flux(const State<Scalar>& q, const EnergyModel<Scalar>& m,
                   int axis)
{
  return energy_flux(q, m, assemble_matrices(m.params), axis);
}

}  // namespace maxglm
