#include "stefanchain/mkdv.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace stefanchain::mkdv {

void KinkParams::validate() const {
  if (!(amp > 0.0)) fail(ErrorCode::InvalidParams, "amp must be > 0");
  if (!(y_min < y_max) || !(t_lo < t_hi))
    fail(ErrorCode::InvalidParams, "empty sampling window");
  if (n_y < 8 || n_t < 3) fail(ErrorCode::InvalidParams, "grid too coarse");
  if (!(tanh_floor > 0.0 && tanh_floor < 1.0))
    fail(ErrorCode::InvalidParams, "tanh_floor must lie in (0,1)");
  // The phase is smallest at (y_min, t_hi); everything right of it is steeper.
  if (!(std::tanh(phase(y_min, t_hi)) >= tanh_floor))
    fail(ErrorCode::InvalidParams,
         "sampled window reaches tanh(phase) < tanh_floor; shrink t range or raise y_min");
}

namespace {

// ln cosh without overflow for large arguments.
double log_cosh(double p) {
  const double a = std::abs(p);
  return a - std::numbers::ln2_v<double> + std::log1p(std::exp(-2.0 * a));
}

}  // namespace

KinkField kink_field(const KinkParams& p, double y, double t) {
  const double A = p.amp;
  const double ph = p.phase(y, t);
  const double th = std::tanh(ph);
  const double sech2 = 1.0 - th * th;
  KinkField f;
  f.x = 2.0 * log_cosh(ph);
  f.x_y = A * th;
  f.x_yy = 0.5 * A * A * sech2;
  f.x_yyy = -0.5 * A * A * A * sech2 * th;
  f.x_t = -0.5 * A * A * A * th;
  return f;
}

double kink_equation_residual(const KinkParams& p, double y, double t) {
  const KinkField f = kink_field(p, y, t);
  return f.x_t - (f.x_yyy - 0.5 * f.x_y * f.x_y * f.x_y);
}

double invert_kink(const KinkParams& p, double x, double t, const ToleranceSpec& tol) {
  tol.validate();
  double lo = p.y_min;
  double hi = p.y_max;
  const double slack = 1e-12 * std::max(1.0, std::abs(x));
  double f_lo = kink_field(p, lo, t).x - x;
  double f_hi = kink_field(p, hi, t).x - x;
  if (f_lo >= -slack && f_lo <= slack) return lo;
  if (f_hi >= -slack && f_hi <= slack) return hi;
  if (f_lo > 0.0 || f_hi < 0.0)
    fail(ErrorCode::OutOfRange, "x = " + std::to_string(x) + " outside the image of [y_min, y_max]");
  if (kink_field(p, lo, t).x_y <= 0.0)
    fail(ErrorCode::NonMonotone, "x_y changes sign inside the sampled window");
  for (int i = 0; i < tol.max_iter && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = kink_field(p, mid, t).x - x;
    if (fm == 0.0) return mid;
    (fm < 0.0 ? lo : hi) = mid;
  }
  double y = 0.5 * (lo + hi);
  for (int i = 0; i < 2; ++i) {
    const KinkField f = kink_field(p, y, t);
    y -= (f.x - x) / f.x_y;
  }
  return y;
}

PsiField hodograph_to_psi(const KinkParams& p, const ToleranceSpec& tol) {
  p.validate();
  PsiField out;
  // x decays in t pointwise, so the window shared by every sampled time is
  // [x(y_min, t_lo), x(y_max, t_hi)].
  const double x_lo = kink_field(p, p.y_min, p.t_lo).x;
  const double x_hi = kink_field(p, p.y_max, p.t_hi).x;
  if (!(x_lo < x_hi))
    fail(ErrorCode::InvalidParams, "sampled times share no common x-window; widen [y_min, y_max]");
  out.x_grid.resize(p.n_y);
  out.t_grid.resize(p.n_t);
  for (int i = 0; i < p.n_y; ++i)
    out.x_grid[i] = x_lo + (x_hi - x_lo) * i / (p.n_y - 1);
  for (int j = 0; j < p.n_t; ++j)
    out.t_grid[j] = p.t_lo + (p.t_hi - p.t_lo) * j / (p.n_t - 1);
  out.x_grid.back() = x_hi;
  out.t_grid.back() = p.t_hi;
  out.psi.assign(p.n_t, std::vector<double>(p.n_y));
  for (int j = 0; j < p.n_t; ++j) {
    for (int i = 0; i < p.n_y; ++i) {
      const double y = invert_kink(p, out.x_grid[i], out.t_grid[j], tol);
      out.psi[j][i] = 1.0 / kink_field(p, y, out.t_grid[j]).x_y;
    }
  }
  return out;
}

ResidualReport verify_casimir(const PsiField& field, double tol, bool reflect_time) {
  const int nt = int(field.t_grid.size());
  const int nx = int(field.x_grid.size());
  if (nt < 3 || nx < 5)
    fail(ErrorCode::InvalidParams, "field too coarse for third-order stencils");
  const double dx = field.x_grid[1] - field.x_grid[0];
  const double dt = field.t_grid[1] - field.t_grid[0];

  ResidualReport rep;
  rep.suite = "mkdv-a1";
  rep.grid = "x:" + std::to_string(nx) + " t:" + std::to_string(nt);
  rep.fd_tolerance = tol;

  ResidualAccum tested, reflected, unreflected;
  for (int j = 1; j < nt - 1; ++j) {
    const auto& P = field.psi[j];
    for (int i = 2; i < nx - 2; ++i) {
      const double psi_t = (field.psi[j + 1][i] - field.psi[j - 1][i]) / (2.0 * dt);
      const auto g = [&P](int k) { return 1.0 / (P[k] * P[k]); };
      const double g_x = (g(i + 1) - g(i - 1)) / (2.0 * dx);
      const double g_xxx =
          (g(i + 2) - 2.0 * g(i + 1) + 2.0 * g(i - 1) - g(i - 2)) / (2.0 * dx * dx * dx);
      const double flux = 0.5 * (g_xxx - g_x);
      // Testing the time-reflected field Psi(x,-t) flips the sign of psi_t.
      reflected.add(-psi_t - flux);
      unreflected.add(psi_t - flux);
      tested.add(reflect_time ? -psi_t - flux : psi_t - flux);
    }
  }
  rep.add(tested.entry("a1-residual", CheckKind::FiniteDifference));
  // Keep the untested orientation observable next to the tested one.
  const ResidualAccum& other = reflect_time ? unreflected : reflected;
  rep.add(other.entry(reflect_time ? "info-a1-residual-unreflected" : "info-a1-residual-reflected",
                      CheckKind::Info));
  rep.finalize();
  return rep;
}

std::vector<KinkSample> sample_table(const KinkParams& p) {
  p.validate();
  std::vector<KinkSample> rows;
  rows.reserve(size_t(p.n_t) * p.n_y);
  for (int j = 0; j < p.n_t; ++j) {
    const double t = p.t_lo + (p.t_hi - p.t_lo) * j / (p.n_t - 1);
    for (int i = 0; i < p.n_y; ++i) {
      const double y = p.y_min + (p.y_max - p.y_min) * i / (p.n_y - 1);
      const KinkField f = kink_field(p, y, t);
      rows.push_back({y, t, f.x, f.x_y, 1.0 / f.x_y});
    }
  }
  return rows;
}

}  // namespace stefanchain::mkdv
