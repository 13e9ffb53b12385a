// cg.hpp
//
// Matrix-free conjugate gradient for symmetric positive definite operators on
// grid fields, using the volume-weighted inner product of the grid.

#pragma once

#include "maxglm/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace maxglm {

struct CGConfig
{
  double tol = 1e-12;  // relative residual, ||A x - b|| <= tol ||b||
  int max_iterations = 0;  // 0 selects 10 * nx * ny

  void validate() const
  {
    if (!(tol > 0.0))
      throw std::invalid_argument("CGConfig: tol must be positive");
    if (max_iterations < 0)
      throw std::invalid_argument("CGConfig: max_iterations must be >= 0");
  }
  int iteration_limit(int points) const
  {
    return max_iterations > 0 ? max_iterations : 10 * points;
  }
};

struct CGReport
{
  int iterations = 0;
  double relative_residual = 0.0;
};

class NonConvergence : public std::runtime_error
{
public:
  NonConvergence(int iterations, double residual)
      : std::runtime_error(message(iterations, residual)),
        iterations_(iterations), residual_(residual)
  {
  }
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

private:
  static std::string message(int it, double res)
  {
    std::ostringstream os;
    os << "conjugate gradient did not converge after " << it
       << " iterations (relative residual " << res << ")";
    return os.str();
  }
  int iterations_;
  double residual_;
};

/// Solves apply(x) = rhs starting from `guess`. Throws NonConvergence when the
/// iteration limit is hit first.
template <typename Scalar, typename Op>
Field<Scalar> cg_solve(const Grid2D<Scalar>& g, Op&& apply,
                       const Field<Scalar>& rhs, const Field<Scalar>& guess,
                       const CGConfig& cfg, CGReport* report = nullptr)
{
  using std::sqrt;
  cfg.validate();
  if (!rhs.same_shape(guess))
    throw std::invalid_argument("cg_solve: guess and rhs shapes differ");

  const Scalar rhs_norm = sqrt(inner(g, rhs, rhs));
  if (report)
    *report = CGReport{};
  if (rhs_norm == Scalar(0))
    return Field<Scalar>(g, rhs.location, rhs.components());

  const Scalar target = Scalar(cfg.tol) * rhs_norm;
  Field<Scalar> x = guess;
  Field<Scalar> r = rhs - apply(x);
  Scalar rr = inner(g, r, r);
  Field<Scalar> p = r;

  const int limit = cfg.iteration_limit(g.size());
  int it = 0;
  while (sqrt(rr) > target)
  {
    if (it >= limit)
      throw NonConvergence(it, double(sqrt(rr) / rhs_norm));
    const Field<Scalar> Ap = apply(p);
    const Scalar alpha = rr / inner(g, p, Ap);
    x.values += alpha * p.values;
    r.values -= alpha * Ap.values;
    const Scalar rr_new = inner(g, r, r);
    p.values = r.values + (rr_new / rr) * p.values;
    rr = rr_new;
    ++it;
  }
  if (report)
  {
    report->iterations = it;
    report->relative_residual = double(sqrt(rr) / rhs_norm);
  }
  return x;
}

template <typename Scalar, typename Op>
Field<Scalar> cg_solve(const Grid2D<Scalar>& g, Op&& apply,
                       const Field<Scalar>& rhs, const CGConfig& cfg,
                       CGReport* report = nullptr)
{
  return cg_solve(g, std::forward<Op>(apply), rhs,
                  Field<Scalar>(g, rhs.location, rhs.components()), cfg,
                  report);
}

}  // namespace maxglm
