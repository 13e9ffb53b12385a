// grid.hpp
//
// Periodic uniform 2D Cartesian mesh and point-sampled field storage.
//
// Index conventions (used by every stencil in the library):
//   cell   (i, j)  has center  (x_min + (i + 1/2) dx, y_min + (j + 1/2) dy)
//   vertex (i, j)  is the node (x_min + (i + 1)   dx, y_min + (j + 1)   dy),
//                  i.e. the upper-right corner of cell (i, j).
// Both live on an nx x ny periodic lattice; the flat point index is i + nx*j.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace maxglm {

enum class Location { Cells, Vertices };

inline const char* to_string(Location loc)
{
  return loc == Location::Cells ? "cells" : "vertices";
}

inline Location location_from_string(const std::string& s)
{
  if (s == "cells")
    return Location::Cells;
  if (s == "vertices")
    return Location::Vertices;
  throw std::invalid_argument("unknown field location '" + s + "'");
}

inline constexpr int wrap(int i, int n) { return ((i % n) + n) % n; }

template <typename Scalar>
struct Grid2D
{
  int nx = 0;
  int ny = 0;
  Scalar x_min = Scalar(-1);
  Scalar x_max = Scalar(1);
  Scalar y_min = Scalar(-1);
  Scalar y_max = Scalar(1);

  Grid2D() = default;
  Grid2D(int nx_, int ny_, Scalar x0 = Scalar(-1), Scalar x1 = Scalar(1),
         Scalar y0 = Scalar(-1), Scalar y1 = Scalar(1))
      : nx(nx_), ny(ny_), x_min(x0), x_max(x1), y_min(y0), y_max(y1)
  {
    if (nx < 2 || ny < 2)
      throw std::invalid_argument("Grid2D: nx and ny must be at least 2");
    if (!(x_max > x_min) || !(y_max > y_min))
      throw std::invalid_argument("Grid2D: empty domain");
  }

  Scalar dx() const { return (x_max - x_min) / Scalar(nx); }
  Scalar dy() const { return (y_max - y_min) / Scalar(ny); }
  Scalar cell_volume() const { return dx() * dy(); }
  Scalar area() const { return (x_max - x_min) * (y_max - y_min); }
  int size() const { return nx * ny; }

  /// Flat index with periodic wrap in both directions.
  int index(int i, int j) const { return wrap(i, nx) + nx * wrap(j, ny); }

  Scalar x(int i, Location loc) const
  {
    return x_min + (Scalar(i) + (loc == Location::Cells ? Scalar(0.5)
                                                        : Scalar(1))) *
                       dx();
  }
  Scalar y(int j, Location loc) const
  {
    return y_min + (Scalar(j) + (loc == Location::Cells ? Scalar(0.5)
                                                        : Scalar(1))) *
                       dy();
  }

  bool operator==(const Grid2D& o) const
  {
    return nx == o.nx && ny == o.ny && x_min == o.x_min && x_max == o.x_max &&
           y_min == o.y_min && y_max == o.y_max;
  }
};

/// Scalar (1 component) or vector (3 component) values at cells or vertices.
/// Storage is components x points, so values.col(k) is the value at point k.
template <typename Scalar>
struct Field
{
  using Storage = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Location location = Location::Cells;
  Storage values;

  Field() = default;
  Field(const Grid2D<Scalar>& g, Location loc, int components)
      : location(loc), values(Storage::Zero(components, g.size()))
  {
  }

  int components() const { return static_cast<int>(values.rows()); }
  int points() const { return static_cast<int>(values.cols()); }

  Scalar& operator()(int c, int k) { return values(c, k); }
  Scalar operator()(int c, int k) const { return values(c, k); }

  bool same_shape(const Field& o) const
  {
    return location == o.location && values.rows() == o.values.rows() &&
           values.cols() == o.values.cols();
  }

  Field& operator+=(const Field& o)
  {
    values += o.values;
    return *this;
  }
  Field& operator-=(const Field& o)
  {
    values -= o.values;
    return *this;
  }
  Field& operator*=(Scalar s)
  {
    values *= s;
    return *this;
  }
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Scalar s, Field a) { return a *= s; }
};

template <typename Scalar>
Field<Scalar> zero_field(const Grid2D<Scalar>& g, Location loc, int components)
{
  return Field<Scalar>(g, loc, components);
}

/// Point-samples f(x, y) at cell centers or vertices. f returns either a
/// scalar or an Eigen vector of `components` entries.
template <typename Scalar, typename Fn>
Field<Scalar> sample(const Grid2D<Scalar>& g, Fn&& f, Location loc,
                     int components = 1)
{
  Field<Scalar> out(g, loc, components);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
    {
      const auto v = f(g.x(i, loc), g.y(j, loc));
      if constexpr (std::is_arithmetic_v<std::decay_t<decltype(v)>>)
        out.values(0, g.index(i, j)) = v;
      else
        out.values.col(g.index(i, j)) = v;
    }
  return out;
}

/// Volume-weighted discrete L2 norm, sqrt(sum dx dy |u|^2) over all components.
template <typename Scalar>
Scalar l2_norm(const Grid2D<Scalar>& g, const Field<Scalar>& u)
{
  using std::sqrt;
  return sqrt(g.cell_volume() * u.values.squaredNorm());
}

template <typename Scalar>
Scalar l2_error(const Grid2D<Scalar>& g, const Field<Scalar>& u,
                const Field<Scalar>& v)
{
  if (!u.same_shape(v))
    throw std::invalid_argument("l2_error: field shapes differ");
  return l2_norm(g, u - v);
}

/// Volume-weighted inner product between fields of identical shape.
template <typename Scalar>
Scalar inner(const Grid2D<Scalar>& g, const Field<Scalar>& u,
             const Field<Scalar>& v)
{
  return g.cell_volume() * u.values.cwiseProduct(v.values).sum();
}

// Snapshot format:
//   # maxglm field snapshot
//   nx <nx>
//   ny <ny>
//   bounds <x_min> <x_max> <y_min> <y_max>
//   location cells|vertices
//   components <1|3>
//   time <t>
//   data
//   <row j=0: comma separated values, point-major, components interleaved>
//   ...

template <typename Scalar>
void write_snapshot(std::ostream& os, const Grid2D<Scalar>& g,
                    const Field<Scalar>& u, Scalar time)
{
  const auto old_precision = os.precision(17);
  os << "# maxglm field snapshot\n"
     << "nx " << g.nx << "\nny " << g.ny << "\nbounds " << g.x_min << ' '
     << g.x_max << ' ' << g.y_min << ' ' << g.y_max << "\nlocation "
     << to_string(u.location) << "\ncomponents " << u.components()
     << "\ntime " << time << "\ndata\n";
  for (int j = 0; j < g.ny; ++j)
  {
    bool first = true;
    for (int i = 0; i < g.nx; ++i)
      for (int c = 0; c < u.components(); ++c)
      {
        if (!first)
          os << ',';
        os << u.values(c, g.index(i, j));
        first = false;
      }
    os << '\n';
  }
  os.precision(old_precision);
}

template <typename Scalar>
struct Snapshot
{
  Grid2D<Scalar> grid;
  Field<Scalar> field;
  Scalar time = Scalar(0);
};

template <typename Scalar>
Snapshot<Scalar> read_snapshot(std::istream& is)
{
  auto fail = [](const std::string& what) {
    throw std::runtime_error("read_snapshot: " + what);
  };
  int nx = 0, ny = 0, comps = 0;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0, t = 0;
  std::string loc = "cells";
  std::string line;
  bool saw_data = false;
  while (std::getline(is, line))
  {
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "nx")
      ls >> nx;
    else if (key == "ny")
      ls >> ny;
    else if (key == "bounds")
      ls >> x0 >> x1 >> y0 >> y1;
    else if (key == "location")
      ls >> loc;
    else if (key == "components")
      ls >> comps;
    else if (key == "time")
      ls >> t;
    else if (key == "data")
    {
      saw_data = true;
      break;
    }
    else
      fail("unknown header key '" + key + "'");
  }
  if (!saw_data || comps < 1)
    fail("incomplete header");

  Snapshot<Scalar> s;
  s.grid = Grid2D<Scalar>(nx, ny, Scalar(x0), Scalar(x1), Scalar(y0),
                          Scalar(y1));
  s.time = Scalar(t);
  s.field = Field<Scalar>(s.grid, location_from_string(loc), comps);
  for (int j = 0; j < ny; ++j)
  {
    if (!std::getline(is, line))
      fail("missing data row");
    std::istringstream ls(line);
    std::string cell;
    int n = 0;
    while (std::getline(ls, cell, ','))
    {
      if (n >= nx * comps)
        fail("too many values in row");
      s.field.values(n % comps, s.grid.index(n / comps, j)) =
          Scalar(std::stod(cell));
      ++n;
    }
    if (n != nx * comps)
      fail("short data row");
  }
  return s;
}

}  // namespace maxglm
