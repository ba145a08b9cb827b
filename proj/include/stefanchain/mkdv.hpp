#pragma once

#include <vector>

#include "stefanchain/numerics.hpp"
#include "stefanchain/report.hpp"

namespace stefanchain::mkdv {

// Kink solution x = 2 ln cosh((A/2)(y - (A^2/2) t)) of the source-free
// third-order flow x_t = x_yyy - x_y^3/2, sampled on a window where the phase
// stays on the positive branch (tanh >= tanh_floor keeps 1/x_y bounded).
struct KinkParams {
  double amp = 2.0;
  double y_min = 1.5;
  double y_max = 6.0;
  double t_lo = 0.1;
  double t_hi = 0.6;
  int n_y = 400;
  int n_t = 40;
  double tanh_floor = 0.2;

  double speed() const { return 0.5 * amp * amp; }
  double phase(double y, double t) const { return 0.5 * amp * (y - speed() * t); }
  void validate() const;
};

struct KinkField {
  double x = 0.0;
  double x_y = 0.0;
  double x_yy = 0.0;
  double x_yyy = 0.0;
  double x_t = 0.0;
};

KinkField kink_field(const KinkParams& p, double y, double t);

// Residual of x_t = x_yyy - x_y^3/2 at the given point; rounding-level.
double kink_equation_residual(const KinkParams& p, double y, double t);

struct PsiField {
  std::vector<double> x_grid;
  std::vector<double> t_grid;
  std::vector<std::vector<double>> psi;  // [time][x]
};

// Inverts y -> x per time slice by monotone bisection and tabulates
// Psi(x,t) = 1/x_y on the common x-window of the sampled times.
PsiField hodograph_to_psi(const KinkParams& p, const ToleranceSpec& tol = {1e-13, 0.0, 200});

// Bisection inverse of the kink map at one point (exposed for cross-checking).
double invert_kink(const KinkParams& p, double x, double t,
                   const ToleranceSpec& tol = {1e-13, 0.0, 200});

// Residual of Psi_t = (1/2)[(Psi^-2)_xxx - (Psi^-2)_x] by central differences.
// The hodograph image carries a time reflection; `reflect_time` selects the
// orientation under test and the report carries both for comparison.
ResidualReport verify_casimir(const PsiField& field, double tol = 1e-3,
                              bool reflect_time = true);

struct KinkSample {
  double y, t, x, v, psi;
};

std::vector<KinkSample> sample_table(const KinkParams& p);

}  // namespace stefanchain::mkdv
