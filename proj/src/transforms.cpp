#include "stefanchain/transforms.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace stefanchain {

namespace {

double denom(const PointState& st) { return st.w_zz * st.w - st.w_z * st.w_z; }

void check_denominator(const PointState& st, double d) {
  if (std::abs(d) < 1e-13 * std::max(1.0, st.w * st.w))
    fail(ErrorCode::SingularDenominator,
         "w_zz*w - w_z^2 vanishes at (z=" + std::to_string(st.z) +
             ", t=" + std::to_string(st.t) + "); Psi is unbounded there");
}

void check_state(const PointState& st, double sigma) {
  if (!(sigma > 0.0)) fail(ErrorCode::InvalidParams, "sigma must be > 0");
  if (!(st.w > 0.0))
    fail(ErrorCode::ZeroTemperature, "w <= 0 at (z=" + std::to_string(st.z) +
                                         ", t=" + std::to_string(st.t) + ")");
}

}  // namespace

double cole_hopf(const PointState& state, double sigma) {
  check_state(state, sigma);
  return -(2.0 / sigma) * state.w_z / state.w;
}

double psi_from_w(const PointState& state, double sigma) {
  check_state(state, sigma);
  const double d = denom(state);
  check_denominator(state, d);
  return -(sigma / 2.0) * state.w * state.w / d;
}

ThetaSample theta_from_w(const PointState& state, double sigma, double m) {
  check_state(state, sigma);
  if (!(m > 0.0)) fail(ErrorCode::InvalidParams, "m must be > 0");
  const double d = denom(state);
  check_denominator(state, d);
  const double log_arg = 1.0 - 2.0 * m * state.w_z / (sigma * state.w);
  if (!(log_arg > 0.0))
    fail(ErrorCode::LogDomain, "1 - 2m w_z/(sigma w) <= 0 at (z=" + std::to_string(state.z) +
                                   ", t=" + std::to_string(state.t) + ")");
  ThetaSample out;
  out.theta = (m * state.w_z * state.w - (sigma / 2.0) * state.w * state.w) / d;
  out.y = std::log(log_arg) / m;
  return out;
}

double x_z_analytic(const PointState& state, double sigma) {
  check_state(state, sigma);
  return -(2.0 / sigma) * denom(state) / (state.w * state.w);
}

double psi_x_analytic(const PointState& state, double sigma) {
  check_state(state, sigma);
  const double w = state.w;
  const double d = denom(state);
  check_denominator(state, d);
  const double d_z = state.w_zzz * w - state.w_z * state.w_zz;
  const double psi_z = -(sigma / 2.0) * (2.0 * w * state.w_z * d - w * w * d_z) / (d * d);
  const double x_z = -(2.0 / sigma) * d / (w * w);
  return psi_z / x_z;
}

double theta_y_analytic(const PointState& state, double sigma, double m) {
  check_state(state, sigma);
  const double w = state.w;
  const double d = denom(state);
  check_denominator(state, d);
  const double d_z = state.w_zzz * w - state.w_z * state.w_zz;
  const double n = m * state.w_z * w - (sigma / 2.0) * w * w;
  const double n_z = m * (state.w_zz * w + state.w_z * state.w_z) - sigma * w * state.w_z;
  const double theta_z = (n_z * d - n * d_z) / (d * d);
  const double x = -(2.0 / sigma) * state.w_z / w;
  const double x_z = -(2.0 / sigma) * d / (w * w);
  const double y_z = x_z / (1.0 + m * x);
  return theta_z / y_z;
}

BoundaryCurves boundary_curves(const ClosedFormSolution& sol, double t) {
  const double sigma = sol.params.sigma;
  const double m = sol.params.m;
  BoundaryCurves bc;
  bc.t = t;
  bc.s = sol.s(t);
  bc.X0 = cole_hopf(sol.eval_state(0.0, t), sigma);
  bc.X1 = cole_hopf(sol.eval_state(bc.s, t), sigma);
  bc.Y0 = std::log1p(m * bc.X0) / m;
  bc.Y1 = std::log1p(m * bc.X1) / m;
  return bc;
}

namespace {

constexpr int kMonotoneSamples = 64;

std::vector<double> sample_x(const ClosedFormSolution& sol, double t) {
  const double s = sol.s(t);
  std::vector<double> xs(kMonotoneSamples);
  for (int i = 0; i < kMonotoneSamples; ++i) {
    const double z = s * i / (kMonotoneSamples - 1);
    xs[i] = cole_hopf(sol.eval_state(z, t), sol.params.sigma);
  }
  return xs;
}

// +1 strictly increasing, -1 strictly decreasing; throws otherwise.
int monotone_direction(const ClosedFormSolution& sol, double t) {
  const auto xs = sample_x(sol, t);
  bool inc = true;
  bool dec = true;
  int fold_at = -1;
  for (int i = 1; i < kMonotoneSamples; ++i) {
    if (!(xs[i] > xs[i - 1])) inc = false;
    if (!(xs[i] < xs[i - 1])) dec = false;
    if (!inc && !dec && fold_at < 0) fold_at = i;
  }
  if (inc) return +1;
  if (dec) return -1;
  const double s = sol.s(t);
  fail(ErrorCode::NonMonotone,
       "x(.,t) is not strictly monotone at t=" + std::to_string(t) + " (fold near z=" +
           std::to_string(s * fold_at / (kMonotoneSamples - 1)) + ")");
}

struct MonotoneInverse {
  const ClosedFormSolution& sol;
  double t;
  int direction;

  double x_at(double z) const { return cole_hopf(sol.eval_state(z, t), sol.params.sigma); }

  double solve(double x_target, const ToleranceSpec& tol) const {
    const double s = sol.s(t);
    double lo = 0.0;
    double hi = s;
    double f_lo = x_at(lo) - x_target;
    double f_hi = x_at(hi) - x_target;
    const double slack = 1e-10 * std::max(1.0, std::abs(x_target));
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi)) {
      if (std::abs(f_lo) <= slack) return lo;
      if (std::abs(f_hi) <= slack) return hi;
      fail(ErrorCode::OutOfRange, "x_target = " + std::to_string(x_target) +
                                      " outside [x(0,t), x(s,t)] at t=" + std::to_string(t));
    }
    for (int i = 0; i < tol.max_iter && hi - lo > 1e-15 * std::max(1.0, s); ++i) {
      const double mid = 0.5 * (lo + hi);
      const double fm = x_at(mid) - x_target;
      if (fm == 0.0) return mid;
      if (std::signbit(fm) == std::signbit(f_lo)) {
        lo = mid;
        f_lo = fm;
      } else {
        hi = mid;
      }
    }
    // Newton polish; the bracket is already at machine width so the slope is safe.
    double z = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) {
      const PointState st = sol.eval_state(std::clamp(z, 0.0, s), t);
      const double fz = cole_hopf(st, sol.params.sigma) - x_target;
      const double dz = x_z_analytic(st, sol.params.sigma);
      if (dz == 0.0) break;
      z = std::clamp(z - fz / dz, 0.0, s);
    }
    return z;
  }
};

}  // namespace

void require_monotone_x(const ClosedFormSolution& sol, double t) {
  monotone_direction(sol, t);
}

double invert_x(const ClosedFormSolution& sol, double x_target, double t,
                const ToleranceSpec& tol) {
  tol.validate();
  const int dir = monotone_direction(sol, t);
  return MonotoneInverse{sol, t, dir}.solve(x_target, tol);
}

double invert_y(const ClosedFormSolution& sol, double y, double t, const ToleranceSpec& tol) {
  tol.validate();
  const double m = sol.params.m;
  const int dir = monotone_direction(sol, t);
  const double x_target = std::expm1(m * y) / m;
  const double z = MonotoneInverse{sol, t, dir}.solve(x_target, tol);
  const ThetaSample ts = theta_from_w(sol.eval_state(z, t), sol.params.sigma, m);
  if (std::abs(ts.y - y) > std::max(tol.abs_tol, 1e-12 * std::max(1.0, std::abs(y))))
    fail(ErrorCode::OutOfRange,
         "invert_y left residual " + std::to_string(ts.y - y) + " at t=" + std::to_string(t));
  return z;
}

double reconstruct_w(const ClosedFormSolution& sol, double z, double t, double sigma,
                     const ToleranceSpec& tol) {
  const double s = sol.s(t);
  if (!(z >= 0.0 && z <= s * (1.0 + 1e-12)))
    fail(ErrorCode::OutOfDomain, "z outside [0, s(t)]");
  const auto x_of = [&](double xi) { return cole_hopf(sol.eval_state(xi, t), sigma); };
  const double integral = integrate(x_of, z, std::max(z, s), tol);
  return sol.params.wm(t) * std::exp((sigma / 2.0) * integral);
}

double reconstruct_z(const ClosedFormSolution& sol, double x_target, double t,
                     const ToleranceSpec& tol) {
  const double sigma = sol.params.sigma;
  const int dir = monotone_direction(sol, t);
  const BoundaryCurves bc = boundary_curves(sol, t);
  const double x_lo = std::min(bc.X0, bc.X1);
  const double x_hi = std::max(bc.X0, bc.X1);
  const double slack = 1e-10 * std::max(1.0, x_hi);
  if (!(x_target >= x_lo - slack && x_target <= x_hi + slack))
    fail(ErrorCode::OutOfRange, "x_target outside [X0(t), X1(t)]");
  const MonotoneInverse inv{sol, t, dir};
  const auto psi_of = [&](double xi) {
    return psi_from_w(sol.eval_state(inv.solve(xi, tol), t), sigma);
  };
  const double a = std::min(bc.X0, x_target);
  const double b = std::max(bc.X0, x_target);
  const double signed_span = x_target >= bc.X0 ? 1.0 : -1.0;
  return signed_span * integrate(psi_of, a, b, tol);
}

ChainSample chain_sample(const ClosedFormSolution& sol, double z, double t) {
  const PointState st = sol.eval_state(z, t);
  const double sigma = sol.params.sigma;
  const double m = sol.params.m;
  ChainSample cs;
  cs.z = z;
  cs.t = t;
  cs.w = st.w;
  cs.w_z = st.w_z;
  cs.w_zz = st.w_zz;
  cs.x = cole_hopf(st, sigma);
  cs.psi = psi_from_w(st, sigma);
  const ThetaSample ts = theta_from_w(st, sigma, m);
  cs.theta = ts.theta;
  cs.y = ts.y;
  return cs;
}

}  // namespace stefanchain
