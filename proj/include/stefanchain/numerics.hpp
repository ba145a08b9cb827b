#pragma once

#include <functional>

#include "stefanchain/error.hpp"

namespace stefanchain {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  void validate() const;
};

struct ToleranceSpec {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  int max_iter = 200;

  void validate() const;
};

// Gauss error function, |error| <= 1e-14 on |x| <= 6, saturates to +-1 beyond.
double erf(double x);
double erfc(double x);

// Root of f on a sign-changing bracket. The returned point always lies inside
// the initial bracket; convergence is declared once the bracket width drops
// below abs_tol + rel_tol*|mid|.
double bisect(const std::function<double(double)>& f, Interval bracket,
              const ToleranceSpec& tol = {});

// Adaptive Simpson quadrature with estimated absolute error <= tol.abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const ToleranceSpec& tol = {});

// Second-order central difference of derivative `order` in {1,2,3}.
double central_diff(const std::function<double(double)>& f, double x, int order, double h);

// Truncation/rounding balanced default step for central_diff.
double default_diff_step(double x, int order);

}  // namespace stefanchain
