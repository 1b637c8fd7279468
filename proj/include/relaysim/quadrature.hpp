#ifndef RELAYSIM_QUADRATURE_HPP_
#define RELAYSIM_QUADRATURE_HPP_

#include <cstddef>
#include <functional>

namespace relaysim {

struct QuadResult {
  double value = 0;
  double abs_error_estimate = 0;
  std::size_t n_evaluations = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod 7/15 over [a, b] to an absolute tolerance.
/// The worst panel (by local |K15 - G7| estimate) is bisected until the
/// summed estimate drops below tol or the panel budget runs out; running out
/// is reported through `converged`, never silently. A single panel integrates
/// polynomials up to degree 13 to machine precision.
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, double tol);

/// Integral over [a, infinity) via the substitution t = a + u/(1-u),
/// u in [0, 1). Requires an integrand that decays at infinity. The wrapper
/// contributes exactly 0 wherever f underflows to 0, so no 0 * inf products
/// can reach the panel sums.
QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   double a, double tol);

}  // namespace relaysim

#endif  // RELAYSIM_QUADRATURE_HPP_
