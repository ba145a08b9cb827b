#include "stefanchain/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace stefanchain {

std::vector<double> GridSpec::z_nodes(double s_of_t) const {
  std::vector<double> zs(n_z);
  for (int i = 0; i < n_z; ++i) {
    // Chebyshev-Lobatto map of [0,1]: clusters where the boundary conditions live.
    const double u = 0.5 * (1.0 - std::cos(std::numbers::pi * i / (n_z - 1)));
    zs[i] = s_of_t * u;
  }
  return zs;
}

std::vector<double> GridSpec::t_nodes() const {
  std::vector<double> ts(n_t);
  const double ratio = t_max / t_min;
  for (int j = 0; j < n_t; ++j)
    ts[j] = n_t == 1 ? t_min : t_min * std::pow(ratio, double(j) / (n_t - 1));
  return ts;
}

std::string GridSpec::describe() const {
  return "z:" + std::to_string(n_z) + "xcheb t:" + std::to_string(n_t) + "xgeom[" +
         std::to_string(t_min) + "," + std::to_string(t_max) + "]";
}

namespace {

double face_residual(const SimilarityParams& p, const PointState& at_zero, double t) {
  if (p.bc == BcKind::Dirichlet) return at_zero.w - p.v(t);
  return at_zero.w_z - p.h(t) * (p.eps() * at_zero.w - p.v(t));
}

}  // namespace

ResidualReport verify_p1_states(const SimilarityParams& params, const StateEvaluator& eval,
                                const std::function<double(double)>& s_of_t,
                                const GridSpec& grid) {
  ResidualReport rep;
  rep.suite = "p1";
  rep.grid = grid.describe();
  ResidualAccum heat, stefan, phase, face;
  for (double t : grid.t_nodes()) {
    const double s = s_of_t(t);
    for (double z : grid.z_nodes(s)) {
      const PointState st = eval(z, t);
      heat.add((st.w_zz - st.w_t) / (1.0 + std::abs(st.w_t)));
    }
    const PointState front = eval(s, t);
    stefan.add(front.w_z + params.L(t) * front.s_prime);
    phase.add(front.w - params.wm(t));
    face.add(face_residual(params, eval(0.0, t), t));
  }
  rep.add(heat.entry("p1-1-heat", CheckKind::Analytic));
  rep.add(stefan.entry("p1-2-stefan", CheckKind::Analytic));
  rep.add(phase.entry("p1-3-phase", CheckKind::Analytic));
  rep.add(face.entry("p1-4-face", CheckKind::Analytic));
  rep.tolerance = 1e-8;
  rep.finalize();
  return rep;
}

ResidualReport verify_p1(const ClosedFormSolution& sol, const GridSpec& grid) {
  return verify_p1_states(
      sol.params, [&sol](double z, double t) { return sol.eval_state(z, t); },
      [&sol](double t) { return sol.s(t); }, grid);
}

ResidualReport verify_p2(const ClosedFormSolution& sol, const GridSpec& grid,
                         const FdSteps& steps) {
  const SimilarityParams& p = sol.params;
  const double sigma = p.sigma;
  ResidualReport rep;
  rep.suite = "p2";
  rep.grid = grid.describe();

  ResidualAccum burgers_exact, burgers_fd, front_value, front_gradient, integral;
  const auto x_of = [&](double z, double t) {
    return cole_hopf(sol.eval_state(z, t), sigma);
  };

  for (double t : grid.t_nodes()) {
    const double s = sol.s(t);
    for (double z : grid.z_nodes(s)) {
      const PointState st = sol.eval_state(z, t);
      const double w = st.w;
      const double x = -(2.0 / sigma) * st.w_z / w;
      const double x_t = -(2.0 / sigma) * (st.w_zzz / w - st.w_z * st.w_zz / (w * w));
      const double x_z = -(2.0 / sigma) * (st.w_zz / w - st.w_z * st.w_z / (w * w));
      const double x_zz =
          -(2.0 / sigma) * (st.w_zzz / w - 3.0 * st.w_z * st.w_zz / (w * w) +
                            2.0 * st.w_z * st.w_z * st.w_z / (w * w * w));
      burgers_exact.add(x_t - x_zz + sigma * x * x_z);
    }

    const PointState front = sol.eval_state(s, t);
    const double x1 = cole_hopf(front, sigma);
    front_value.add(x1 - (2.0 / sigma) * (p.L(t) / p.wm(t)) * front.s_prime);
    front_gradient.add(x_z_analytic(front, sigma) -
                       (-(2.0 / sigma) * p.wm_log_deriv(t) +
                        (sigma / 2.0) * x1 * x1 * (1.0 - p.wm(t) / p.L(t))));

    const auto integrand = [&](double xi) { return x_of(xi, t); };
    const double quad = integrate(integrand, 0.0, s, {1e-10, 0.0, 200});
    integral.add(quad - (2.0 / sigma) * std::log(p.v(t) / p.wm(t)));
  }

  // Finite-difference route; steps follow the local similarity scales so the
  // truncation stays uniform across the decades of t.
  for (double t : grid.t_nodes()) {
    if (t < 0.1) continue;
    const double s = sol.s(t);
    const double hz = steps.burgers_step * std::sqrt(t);
    const double ht = steps.burgers_step * t;
    const double margin = std::max({0.05 * s, 2.0 * hz, 2.0 * steps.burgers_step * s});
    const int n_fd = 8;
    for (int i = 0; i < n_fd; ++i) {
      const double z = margin + (s - 2.0 * margin) * i / (n_fd - 1);
      const double x = x_of(z, t);
      const double x_t = (x_of(z, t + ht) - x_of(z, t - ht)) / (2.0 * ht);
      const double x_z = (x_of(z + hz, t) - x_of(z - hz, t)) / (2.0 * hz);
      const double x_zz = (x_of(z + hz, t) - 2.0 * x + x_of(z - hz, t)) / (hz * hz);
      burgers_fd.add(x_t - x_zz + sigma * x * x_z);
    }
  }

  rep.add(burgers_exact.entry("p2-1-analytic", CheckKind::Analytic));
  rep.add(burgers_fd.entry("p2-1-fd", CheckKind::FiniteDifference));
  rep.add(front_value.entry("p2-2-front", CheckKind::Analytic));
  rep.add(front_gradient.entry("p2-3-front-gradient", CheckKind::Analytic));
  rep.add(integral.entry("p2-4-integral", CheckKind::Analytic));
  rep.finalize();
  return rep;
}

namespace {

// Band times for the PDE stencil checks; clear of both t_min blow-up and the
// far end of the grid.
std::vector<double> pde_band_times(const GridSpec& grid, int count) {
  double lo = std::max(0.5, grid.t_min);
  double hi = std::min(2.0, grid.t_max);
  if (!(lo < hi)) {
    lo = grid.t_min;
    hi = grid.t_max;
  }
  std::vector<double> ts(count);
  for (int i = 0; i < count; ++i)
    ts[i] = count == 1 ? lo : lo * std::pow(hi / lo, double(i) / (count - 1));
  return ts;
}

struct Band {
  double lo, hi;
};

Band common_x_band(const ClosedFormSolution& sol, double t, double delta) {
  Band b{-1e300, 1e300};
  for (double tau : {t - delta, t, t + delta}) {
    const BoundaryCurves bc = boundary_curves(sol, tau);
    b.lo = std::max(b.lo, std::min(bc.X0, bc.X1));
    b.hi = std::min(b.hi, std::max(bc.X0, bc.X1));
  }
  return b;
}

Band common_y_band(const ClosedFormSolution& sol, double t, double delta) {
  Band b{-1e300, 1e300};
  for (double tau : {t - delta, t, t + delta}) {
    const BoundaryCurves bc = boundary_curves(sol, tau);
    b.lo = std::max(b.lo, std::min(bc.Y0, bc.Y1));
    b.hi = std::min(b.hi, std::max(bc.Y0, bc.Y1));
  }
  return b;
}

}  // namespace

ResidualReport verify_p3(const ClosedFormSolution& sol, const GridSpec& grid,
                         const FdSteps& steps) {
  const SimilarityParams& p = sol.params;
  const double sigma = p.sigma;
  ResidualReport rep;
  rep.suite = "p3";
  rep.grid = grid.describe();

  const ToleranceSpec inv_tol{1e-14, 0.0, 200};
  const auto psi_at = [&](double x, double t) {
    return psi_from_w(sol.eval_state(invert_x(sol, x, t, inv_tol), t), sigma);
  };

  // P3-1 via central differences of Psi in (x,t) on the common band.
  ResidualAccum pde;
  const double delta = steps.pde_delta;
  for (double t : pde_band_times(grid, 5)) {
    const Band band = common_x_band(sol, t, delta);
    const double margin = std::max(0.05 * (band.hi - band.lo), 2.0 * delta);
    const int n_x = 9;
    for (int i = 0; i < n_x; ++i) {
      const double x = band.lo + margin + (band.hi - band.lo - 2.0 * margin) * i / (n_x - 1);
      const double psi_t = (psi_at(x, t + delta) - psi_at(x, t - delta)) / (2.0 * delta);
      const double inv_m = 1.0 / psi_at(x - delta, t);
      const double inv_0 = 1.0 / psi_at(x, t);
      const double inv_p = 1.0 / psi_at(x + delta, t);
      const double inv_xx = (inv_p - 2.0 * inv_0 + inv_m) / (delta * delta);
      pde.add(psi_t + inv_xx - sigma);
    }
  }

  // Front condition pointwise plus the boundary identities in differentiated
  // form; the raw time integrals are singular at t = 0 for this family.
  ResidualAccum front, x1_diff, x0_diff, face_diff;
  const double dt = steps.boundary_dt;
  const auto X0_of = [&](double t) { return boundary_curves(sol, t).X0; };
  const auto X1_of = [&](double t) { return boundary_curves(sol, t).X1; };
  for (double t : grid.t_nodes()) {
    const double s = sol.s(t);
    const PointState fr = sol.eval_state(s, t);
    const double x1 = cole_hopf(fr, sigma);
    const double psi1 = psi_from_w(fr, sigma);
    const double rhs_inv =
        -(2.0 / sigma) * p.wm_log_deriv(t) + (sigma / 2.0) * x1 * x1 * (1.0 - p.wm(t) / p.L(t));
    front.add(psi1 - 1.0 / rhs_inv);

    const double dX1 = (X1_of(t + dt) - X1_of(t - dt)) / (2.0 * dt);
    const double psix1 = psi_x_analytic(fr, sigma);
    const double igd1 =
        sigma * x1 / psi1 * (p.wm(t) / (2.0 * p.L(t)) - 1.0) - psix1 / (psi1 * psi1 * psi1);
    x1_diff.add((dX1 - igd1) / std::abs(igd1));

    const PointState at0 = sol.eval_state(0.0, t);
    const double x0 = cole_hopf(at0, sigma);
    const double psi0 = psi_from_w(at0, sigma);
    const double dX0 = (X0_of(t + dt) - X0_of(t - dt)) / (2.0 * dt);
    const double igd0 = -psi_x_analytic(at0, sigma) / (psi0 * psi0 * psi0) - sigma * x0 / psi0;
    x0_diff.add((dX0 - igd0) / std::abs(igd0));

    face_diff.add(sigma * sigma * x0 * x0 / 4.0 - sigma / (2.0 * psi0) - p.v_log_deriv(t));
  }

  rep.add(pde.entry("p3-1-fd", CheckKind::FiniteDifference));
  rep.add(x1_diff.entry("p3-2-diff", CheckKind::FiniteDifference));
  rep.add(front.entry("p3-3-front", CheckKind::Analytic));
  rep.add(face_diff.entry("p3-4-diff", CheckKind::Analytic));
  rep.add(x0_diff.entry("p3-5-diff", CheckKind::FiniteDifference));

  ResidualEntry obs0;
  obs0.id = "info-X0-at-t-min";
  obs0.max_abs = obs0.mean_abs = X0_of(grid.t_min);
  obs0.kind = CheckKind::Info;
  rep.add(obs0);
  ResidualEntry obs1;
  obs1.id = "info-X1-at-t-min";
  obs1.max_abs = obs1.mean_abs = X1_of(grid.t_min);
  obs1.kind = CheckKind::Info;
  rep.add(obs1);

  rep.finalize();
  return rep;
}

ResidualReport verify_p4(const ClosedFormSolution& sol, const GridSpec& grid,
                         const FdSteps& steps) {
  const SimilarityParams& p = sol.params;
  const double sigma = p.sigma;
  const double m = p.m;
  ResidualReport rep;
  rep.suite = "p4";
  rep.grid = grid.describe();

  const ToleranceSpec inv_tol{1e-14, 0.0, 200};
  const auto theta_at = [&](double y, double t) {
    return theta_from_w(sol.eval_state(invert_y(sol, y, t, inv_tol), t), sigma, m).theta;
  };

  ResidualAccum pde;
  const double delta = steps.pde_delta;
  for (double t : pde_band_times(grid, 5)) {
    const Band band = common_y_band(sol, t, delta);
    const double margin = std::max(0.05 * (band.hi - band.lo), 2.0 * delta);
    const int n_y = 9;
    for (int i = 0; i < n_y; ++i) {
      const double y = band.lo + margin + (band.hi - band.lo - 2.0 * margin) * i / (n_y - 1);
      const double th_t = (theta_at(y, t + delta) - theta_at(y, t - delta)) / (2.0 * delta);
      const double inv_m = 1.0 / theta_at(y - delta, t);
      const double inv_0 = 1.0 / theta_at(y, t);
      const double inv_p = 1.0 / theta_at(y + delta, t);
      const double inv_yy = (inv_p - 2.0 * inv_0 + inv_m) / (delta * delta);
      const double inv_y = (inv_p - inv_m) / (2.0 * delta);
      pde.add(th_t + inv_yy + m * inv_y - sigma * std::exp(m * y));
    }
  }

  ResidualAccum front, y1_diff, y0_diff, face_diff, identity;
  const double dt = steps.boundary_dt;
  const auto X0_of = [&](double t) { return boundary_curves(sol, t).X0; };
  const auto X1_of = [&](double t) { return boundary_curves(sol, t).X1; };
  for (double t : grid.t_nodes()) {
    const double s = sol.s(t);
    const PointState fr = sol.eval_state(s, t);
    const ThetaSample th1 = theta_from_w(fr, sigma, m);
    const double e1 = std::exp(m * th1.y);
    const double rhs_inv = -(2.0 / sigma) * p.wm_log_deriv(t) +
                           sigma * (e1 - 1.0) * (e1 - 1.0) / (2.0 * m * m) *
                               (1.0 - p.wm(t) / p.L(t));
    front.add(th1.theta - e1 / rhs_inv);

    // d/dt[(exp(m Y1)-1)/m] against the I1 integrand.
    const double dX1 = (X1_of(t + dt) - X1_of(t - dt)) / (2.0 * dt);
    const double thy1 = theta_y_analytic(fr, sigma, m);
    const double igd1 = e1 * (sigma * (e1 - 1.0) / (m * th1.theta) *
                                  (p.wm(t) / (2.0 * p.L(t)) - 1.0) -
                              (thy1 - m * th1.theta) / (th1.theta * th1.theta * th1.theta));
    y1_diff.add((dX1 - igd1) / std::abs(igd1));

    const PointState at0 = sol.eval_state(0.0, t);
    const ThetaSample th0 = theta_from_w(at0, sigma, m);
    const double e0 = std::exp(m * th0.y);
    const double dX0 = (X0_of(t + dt) - X0_of(t - dt)) / (2.0 * dt);
    const double thy0 = theta_y_analytic(at0, sigma, m);
    const double igd0 = -e0 * (sigma * (e0 - 1.0) / (m * th0.theta) +
                               (thy0 - m * th0.theta) / (th0.theta * th0.theta * th0.theta));
    y0_diff.add((dX0 - igd0) / std::abs(igd0));

    const double x0 = cole_hopf(at0, sigma);
    face_diff.add(sigma * sigma * x0 * x0 / 4.0 - sigma * e0 / (2.0 * th0.theta) -
                  p.v_log_deriv(t));

    for (double z : grid.z_nodes(s)) {
      const PointState st = sol.eval_state(z, t);
      const ThetaSample th = theta_from_w(st, sigma, m);
      const double x = cole_hopf(st, sigma);
      const double psi = psi_from_w(st, sigma);
      identity.add((th.theta - (1.0 + m * x) * psi) / std::max(1.0, std::abs(th.theta)));
    }
  }

  rep.add(pde.entry("p4-1-fd", CheckKind::FiniteDifference));
  rep.add(y1_diff.entry("p4-2-diff", CheckKind::FiniteDifference));
  rep.add(front.entry("p4-3-front", CheckKind::Analytic));
  rep.add(face_diff.entry("p4-4-diff", CheckKind::Analytic));
  rep.add(y0_diff.entry("p4-5-diff", CheckKind::FiniteDifference));
  rep.add(identity.entry("theta-identity", CheckKind::Analytic));
  rep.finalize();
  return rep;
}

ResidualReport verify_signs(const ClosedFormSolution& sol, const GridSpec& grid) {
  const double sigma = sol.params.sigma;
  ResidualReport rep;
  rep.suite = "signs";
  rep.grid = grid.describe();
  long violations = 0;
  double min_w = 1e300;
  double max_wz = -1e300;
  double min_x = 1e300;
  for (double t : grid.t_nodes()) {
    for (double z : grid.z_nodes(sol.s(t))) {
      const PointState st = sol.eval_state(z, t);
      const double x = cole_hopf(st, sigma);
      if (!(st.w > 0.0)) ++violations;
      if (st.w_z > 0.0) ++violations;
      if (x < 0.0) ++violations;
      min_w = std::min(min_w, st.w);
      max_wz = std::max(max_wz, st.w_z);
      min_x = std::min(min_x, x);
    }
    const BoundaryCurves bc = boundary_curves(sol, t);
    if (bc.X0 < 0.0) ++violations;
    if (bc.X1 < 0.0) ++violations;
  }
  ResidualEntry v;
  v.id = "sign-violations";
  v.max_abs = v.mean_abs = double(violations);
  v.kind = CheckKind::Analytic;
  rep.add(v);
  ResidualEntry iw{"info-min-w", min_w, min_w, CheckKind::Info};
  ResidualEntry iz{"info-max-w_z", max_wz, max_wz, CheckKind::Info};
  ResidualEntry ix{"info-min-x", min_x, min_x, CheckKind::Info};
  rep.add(iw);
  rep.add(iz);
  rep.add(ix);
  rep.finalize();
  return rep;
}

ResidualReport verify_convergence(const SimilarityParams& params_base,
                                  const std::vector<double>& h0_list, const GridSpec& grid) {
  if (params_base.bc != BcKind::Robin)
    fail(ErrorCode::InvalidParams, "convergence study requires Robin data (eps = 1)");
  if (h0_list.empty()) fail(ErrorCode::InvalidParams, "h0 ladder is empty");
  for (size_t i = 1; i < h0_list.size(); ++i)
    if (!(h0_list[i] > h0_list[i - 1]))
      fail(ErrorCode::InvalidParams, "h0 ladder must be increasing");

  ResidualReport rep;
  rep.suite = "converge";
  rep.grid = grid.describe();

  SimilarityParams dirichlet = params_base;
  dirichlet.bc = BcKind::Dirichlet;
  const ClosedFormSolution limit = build_solution(dirichlet);

  std::vector<double> gaps;
  ClosedFormSolution last;
  for (double h0 : h0_list) {
    SimilarityParams p = params_base;
    p.h0 = h0;
    last = build_solution(p);
    gaps.push_back(std::abs(last.gamma - limit.gamma));
    ResidualEntry e;
    e.id = "info-gamma-gap-h0=" + std::to_string(h0);
    e.max_abs = e.mean_abs = gaps.back();
    e.kind = CheckKind::Info;
    rep.add(e);
  }

  ResidualEntry fin;
  fin.id = "final-gamma-gap";
  fin.max_abs = fin.mean_abs = gaps.back();
  fin.kind = CheckKind::FiniteDifference;
  rep.add(fin);

  if (gaps.size() >= 2) {
    long viol = 0;
    for (size_t i = 1; i < gaps.size(); ++i)
      if (!(gaps[i] < gaps[i - 1])) ++viol;
    ResidualEntry mono;
    mono.id = "gap-monotone-violations";
    mono.max_abs = mono.mean_abs = double(viol);
    mono.kind = CheckKind::FiniteDifference;
    rep.add(mono);
  }

  // Field gap on the common part of the two domains at the largest h0.
  ResidualAccum wgap;
  for (double t : grid.t_nodes()) {
    const double s_common = std::min(last.s(t), limit.s(t));
    for (double z : grid.z_nodes(s_common))
      wgap.add(last.eval_state(z, t).w - limit.eval_state(z, t).w);
  }
  rep.add(wgap.entry("w-gap-largest-h0", CheckKind::FiniteDifference));

  rep.finalize();
  return rep;
}

}  // namespace stefanchain
