// mimetic.hpp
//
// Dual discrete nabla operators between cell-centered and vertex fields on a
// periodic 2D grid (d/dz = 0, vectors keep three components).
//
//   *_c2v : cell field   -> vertex field   (uses the four cells around a node)
//   *_v2c : vertex field -> cell field     (uses the four corners of a cell)
//
// Every operator is the same 2x2 stencil with weights +-1/(2dx), +-1/(2dy):
//   Dx u = (u_11 + u_10 - u_01 - u_00) / (2 dx)
//   Dy u = (u_11 + u_01 - u_10 - u_00) / (2 dy)
// where u_ab is the value at the block corner offset by (a, b). The compositions
// curl(grad) and div(curl) vanish identically, and grad_c2v = -div_v2c^T,
// grad_v2c = -div_c2v^T, curl_c2v = curl_v2c^T in the volume-weighted
// inner product.

#pragma once

#include "maxglm/grid.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace maxglm {

namespace detail {

inline void require(bool ok, const char* what)
{
  if (!ok)
    throw std::invalid_argument(what);
}

/// Visits every output point with the flat indices of its 2x2 input block.
/// shift = 0: block lower-left at (i, j)        (c2v)
/// shift = 1: block lower-left at (i-1, j-1)    (v2c)
template <typename Scalar, typename Fn>
void for_each_block(const Grid2D<Scalar>& g, int shift, Fn&& fn)
{
  const int nx = g.nx;
  const int ny = g.ny;
  for (int j = 0; j < ny; ++j)
  {
    const int j0 = shift ? (j == 0 ? ny - 1 : j - 1) : j;
    const int j1 = shift ? j : (j + 1 == ny ? 0 : j + 1);
    for (int i = 0; i < nx; ++i)
    {
      const int i0 = shift ? (i == 0 ? nx - 1 : i - 1) : i;
      const int i1 = shift ? i : (i + 1 == nx ? 0 : i + 1);
      fn(i + nx * j, i0 + nx * j0, i1 + nx * j0, i0 + nx * j1, i1 + nx * j1);
    }
  }
}

template <typename Scalar>
struct BlockDiff
{
  Scalar wx;  // 1 / (2 dx)
  Scalar wy;  // 1 / (2 dy)

  explicit BlockDiff(const Grid2D<Scalar>& g)
      : wx(Scalar(1) / (Scalar(2) * g.dx())), wy(Scalar(1) / (Scalar(2) * g.dy()))
  {
  }

  template <typename Mat>
  Scalar dx(const Mat& u, int c, int k00, int k10, int k01, int k11) const
  {
    return wx * ((u(c, k11) + u(c, k10)) - (u(c, k01) + u(c, k00)));
  }
  template <typename Mat>
  Scalar dy(const Mat& u, int c, int k00, int k10, int k01, int k11) const
  {
    return wy * ((u(c, k11) + u(c, k01)) - (u(c, k10) + u(c, k00)));
  }
};

template <typename Scalar>
Field<Scalar> grad(const Grid2D<Scalar>& g, const Field<Scalar>& f, int shift,
                   Location out_loc)
{
  Field<Scalar> out(g, out_loc, 3);
  const BlockDiff<Scalar> d(g);
  const auto& u = f.values;
  for_each_block(g, shift, [&](int k, int a, int b, int c, int e) {
    out.values(0, k) = d.dx(u, 0, a, b, c, e);
    out.values(1, k) = d.dy(u, 0, a, b, c, e);
  });
  return out;
}

template <typename Scalar>
Field<Scalar> div(const Grid2D<Scalar>& g, const Field<Scalar>& f, int shift,
                  Location out_loc)
{
  Field<Scalar> out(g, out_loc, 1);
  const BlockDiff<Scalar> d(g);
  const auto& u = f.values;
  for_each_block(g, shift, [&](int k, int a, int b, int c, int e) {
    out.values(0, k) = d.dx(u, 0, a, b, c, e) + d.dy(u, 1, a, b, c, e);
  });
  return out;
}

template <typename Scalar>
Field<Scalar> curl(const Grid2D<Scalar>& g, const Field<Scalar>& f, int shift,
                   Location out_loc)
{
  Field<Scalar> out(g, out_loc, 3);
  const BlockDiff<Scalar> d(g);
  const auto& u = f.values;
  for_each_block(g, shift, [&](int k, int a, int b, int c, int e) {
    out.values(0, k) = d.dy(u, 2, a, b, c, e);
    out.values(1, k) = -d.dx(u, 2, a, b, c, e);
    out.values(2, k) = d.dx(u, 1, a, b, c, e) - d.dy(u, 0, a, b, c, e);
  });
  return out;
}

}  // namespace detail

template <typename Scalar>
Field<Scalar> grad_c2v(const Grid2D<Scalar>& g, const Field<Scalar>& phi)
{
  detail::require(phi.location == Location::Cells && phi.components() == 1,
                  "grad_c2v expects a cell scalar field");
  return detail::grad(g, phi, 0, Location::Vertices);
}

template <typename Scalar>
Field<Scalar> div_c2v(const Grid2D<Scalar>& g, const Field<Scalar>& A)
{
  detail::require(A.location == Location::Cells && A.components() == 3,
                  "div_c2v expects a cell vector field");
  return detail::div(g, A, 0, Location::Vertices);
}

template <typename Scalar>
Field<Scalar> curl_c2v(const Grid2D<Scalar>& g, const Field<Scalar>& A)
{
  detail::require(A.location == Location::Cells && A.components() == 3,
                  "curl_c2v expects a cell vector field");
  return detail::curl(g, A, 0, Location::Vertices);
}

template <typename Scalar>
Field<Scalar> grad_v2c(const Grid2D<Scalar>& g, const Field<Scalar>& phi)
{
  detail::require(phi.location == Location::Vertices && phi.components() == 1,
                  "grad_v2c expects a vertex scalar field");
  return detail::grad(g, phi, 1, Location::Cells);
}

template <typename Scalar>
Field<Scalar> div_v2c(const Grid2D<Scalar>& g, const Field<Scalar>& A)
{
  detail::require(A.location == Location::Vertices && A.components() == 3,
                  "div_v2c expects a vertex vector field");
  return detail::div(g, A, 1, Location::Cells);
}

template <typename Scalar>
Field<Scalar> curl_v2c(const Grid2D<Scalar>& g, const Field<Scalar>& A)
{
  detail::require(A.location == Location::Vertices && A.components() == 3,
                  "curl_v2c expects a vertex vector field");
  return detail::curl(g, A, 1, Location::Cells);
}

template <typename Scalar, typename Rng>
Field<Scalar> random_field(const Grid2D<Scalar>& g, Location loc,
                           int components, Rng& rng)
{
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Field<Scalar> f(g, loc, components);
  for (Eigen::Index k = 0; k < f.values.size(); ++k)
    f.values.data()[k] = Scalar(dist(rng));
  return f;
}

/// Max-abs residual of curl(grad) and div(curl) in both directions over
/// `trials` random unit-scale fields.
template <typename Scalar>
Scalar check_identities(const Grid2D<Scalar>& g, int trials, unsigned seed)
{
  if (trials < 1)
    throw std::invalid_argument("check_identities: trials must be >= 1");
  std::mt19937_64 rng(seed);
  Scalar worst = Scalar(0);
  auto track = [&](const Field<Scalar>& r) {
    worst = std::max(worst, r.values.cwiseAbs().maxCoeff());
  };
  for (int t = 0; t < trials; ++t)
  {
    const auto phi_c = random_field(g, Location::Cells, 1, rng);
    const auto phi_p = random_field(g, Location::Vertices, 1, rng);
    const auto A_c = random_field(g, Location::Cells, 3, rng);
    const auto A_p = random_field(g, Location::Vertices, 3, rng);
    track(curl_v2c(g, grad_c2v(g, phi_c)));
    track(curl_c2v(g, grad_v2c(g, phi_p)));
    track(div_v2c(g, curl_c2v(g, A_c)));
    track(div_c2v(g, curl_v2c(g, A_p)));
  }
  return worst;
}

}  // namespace maxglm
