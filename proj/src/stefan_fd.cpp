#include "stefanchain/stefan_fd.hpp"

#include <cmath>
#include <string>

namespace stefanchain::fd {

void FdConfig::validate() const {
  if (n_xi < 16) fail(ErrorCode::InvalidParams, "n_xi must be >= 16");
  if (!(dt > 0.0)) fail(ErrorCode::InvalidParams, "dt must be > 0");
  if (!(t0 > 0.0)) fail(ErrorCode::InvalidParams, "t0 must be > 0");
  if (!(t_end > t0)) fail(ErrorCode::InvalidParams, "t_end must exceed t0");
  if (!(dt <= t_end - t0)) fail(ErrorCode::InvalidParams, "dt must fit in [t0, t_end]");
  if (!L || !v || !wm) fail(ErrorCode::InvalidParams, "coefficient functions missing");
  if (bc != BcKind::Dirichlet && !h)
    fail(ErrorCode::InvalidParams, "Robin/Neumann data needs h(t)");
  if (seed == SeedKind::Similarity && !family)
    fail(ErrorCode::InvalidParams, "similarity seed needs the sqrt(t) family");
  if (seed == SeedKind::LinearProfile && !(s0 > 0.0))
    fail(ErrorCode::InvalidParams, "linear seed needs s0 > 0");
  if (!(picard_tol > 0.0) || picard_max < 1)
    fail(ErrorCode::InvalidParams, "bad Picard settings");
}

FdConfig sqrt_t_config(const SimilarityParams& params) {
  params.validate();
  FdConfig cfg;
  cfg.bc = params.bc;
  cfg.family = params;
  cfg.L = [params](double t) { return params.L(t); };
  cfg.v = [params](double t) { return params.v(t); };
  cfg.h = [params](double t) { return params.h(t); };
  cfg.wm = [params](double t) { return params.wm(t); };
  return cfg;
}

FdConfig config_from_json(const nlohmann::json& j) {
  const auto& coeffs = j.at("coeffs");
  if (coeffs.at("family").get<std::string>() != "sqrt_t")
    fail(ErrorCode::InvalidParams, "only the sqrt_t coefficient family is file-configurable");
  SimilarityParams p;
  p.bc = bc_kind_from_name(j.value("bc", "dirichlet"));
  p.L0 = coeffs.value("L0", 1.0);
  p.v0 = coeffs.value("v0", 1.0);
  p.h0 = coeffs.value("h0", 1.0);
  p.wm0 = coeffs.value("wm0", 0.5);
  if (coeffs.contains("eps") && coeffs.at("eps").get<int>() != p.eps())
    fail(ErrorCode::InvalidParams, "coeffs.eps inconsistent with bc");
  FdConfig cfg = sqrt_t_config(p);
  cfg.n_xi = j.value("n_xi", cfg.n_xi);
  cfg.dt = j.value("dt", cfg.dt);
  cfg.t0 = j.value("t0", cfg.t0);
  cfg.t_end = j.value("t_end", cfg.t_end);
  cfg.picard_tol = j.value("picard_tol", cfg.picard_tol);
  cfg.picard_max = j.value("picard_max", cfg.picard_max);
  if (j.contains("seed")) {
    const auto& seed = j.at("seed");
    if (seed.is_string() && seed.get<std::string>() == "similarity") {
      cfg.seed = FdConfig::SeedKind::Similarity;
    } else if (seed.is_object() && seed.value("kind", "") == "linear") {
      cfg.seed = FdConfig::SeedKind::LinearProfile;
      cfg.s0 = seed.at("s0").get<double>();
    } else {
      fail(ErrorCode::InvalidParams, "seed must be \"similarity\" or {kind:\"linear\", s0}");
    }
  }
  return cfg;
}

namespace {

// Tridiagonal solve, Thomas algorithm; diag is destroyed.
void solve_tridiag(std::vector<double>& sub, std::vector<double>& diag,
                   std::vector<double>& sup, std::vector<double>& rhs) {
  const size_t n = diag.size();
  for (size_t i = 1; i < n; ++i) {
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

std::vector<double> seed_profile(const FdConfig& cfg, const std::vector<double>& xi,
                                 double& s_init, double& sp_init) {
  std::vector<double> u(xi.size());
  if (cfg.seed == FdConfig::SeedKind::Similarity) {
    const ClosedFormSolution sol = build_solution(*cfg.family);
    s_init = sol.s(cfg.t0);
    sp_init = sol.s_prime(cfg.t0);
    for (size_t i = 0; i < xi.size(); ++i) u[i] = sol.eval_state(xi[i] * s_init, cfg.t0).w;
    return u;
  }
  s_init = cfg.s0;
  const double wm0 = cfg.wm(cfg.t0);
  double a, b;  // u = a + b xi
  if (cfg.bc == BcKind::Dirichlet) {
    a = cfg.v(cfg.t0);
    b = wm0 - a;
  } else {
    const double h = cfg.h(cfg.t0);
    const int eps = cfg.bc == BcKind::Robin ? 1 : 0;
    b = s_init * h * (eps * wm0 - cfg.v(cfg.t0)) / (1.0 + s_init * h * eps);
    a = wm0 - b;
  }
  for (size_t i = 0; i < xi.size(); ++i) u[i] = a + b * xi[i];
  sp_init = -b / (cfg.L(cfg.t0) * s_init);
  return u;
}

}  // namespace

FdSolution fd_solve(const FdConfig& config) {
  config.validate();
  const int n = config.n_xi;
  const double dxi = 1.0 / (n - 1);
  const int eps = config.bc == BcKind::Robin ? 1 : 0;

  FdSolution out;
  out.xi.resize(n);
  for (int i = 0; i < n; ++i) out.xi[i] = i * dxi;

  double s = 0.0;
  double sp = 0.0;
  std::vector<double> u = seed_profile(config, out.xi, s, sp);
  double t = config.t0;

  out.times.push_back(t);
  out.s_traj.push_back(s);
  out.s_prime_traj.push_back(sp);
  out.w_field.push_back(u);

  std::vector<double> sub(n), diag(n), sup(n), rhs(n), u_new(n);

  while (t < config.t_end - 1e-12 * config.t_end) {
    const double t_new = std::min(t + config.dt, config.t_end);
    const double dtk = t_new - t;
    if (!(config.L(t_new) > 0.0))
      fail(ErrorCode::SingularCoefficient, "L(t) <= 0 at t = " + std::to_string(t_new));

    double s_new = s + dtk * sp;
    bool converged = false;
    for (int it = 0; it < config.picard_max; ++it) {
      if (!(s_new > 0.0))
        fail(ErrorCode::NonPositiveBoundary, "front collapsed at t = " + std::to_string(t_new));
      const double sp_it = (s_new - s) / dtk;
      const double lam = 1.0 / (s_new * s_new * dxi * dxi);
      const double mu = sp_it / (s_new * 2.0 * dxi);

      for (int i = 1; i < n - 1; ++i) {
        sub[i] = -(lam - out.xi[i] * mu);
        diag[i] = 1.0 / dtk + 2.0 * lam;
        sup[i] = -(lam + out.xi[i] * mu);
        rhs[i] = u[i] / dtk;
      }
      if (config.bc == BcKind::Dirichlet) {
        diag[0] = 1.0;
        sup[0] = 0.0;
        rhs[0] = config.v(t_new);
      } else {
        // Second-order ghost-node closure of w_xi(0) = s h (eps w(0) - v).
        const double h = config.h(t_new);
        diag[0] = 1.0 / dtk + 2.0 * lam + 2.0 * h * eps / (s_new * dxi);
        sup[0] = -2.0 * lam;
        rhs[0] = u[0] / dtk + 2.0 * h * config.v(t_new) / (s_new * dxi);
      }
      sub[n - 1] = 0.0;
      diag[n - 1] = 1.0;
      rhs[n - 1] = config.wm(t_new);

      u_new = rhs;
      {
        std::vector<double> d2 = diag;
        solve_tridiag(sub, d2, sup, u_new);
      }

      const double flux = (3.0 * u_new[n - 1] - 4.0 * u_new[n - 2] + u_new[n - 3]) / (2.0 * dxi);
      const double s_next = s + dtk * (-flux / (config.L(t_new) * s_new));
      const bool done = std::abs(s_next - s_new) <= config.picard_tol;
      s_new = s_next;
      if (done) {
        converged = true;
        break;
      }
    }
    if (!converged)
      fail(ErrorCode::PicardDiverged,
           "front iteration stalled at t = " + std::to_string(t_new));

    sp = (s_new - s) / dtk;
    s = s_new;
    t = t_new;
    u = u_new;
    out.times.push_back(t);
    out.s_traj.push_back(s);
    out.s_prime_traj.push_back(sp);
    out.w_field.push_back(u);
  }
  return out;
}

ResidualReport fd_compare(const FdSolution& fd, const ClosedFormSolution& sol,
                          double tolerance) {
  ResidualReport rep;
  rep.suite = "fd";
  rep.grid = "xi:" + std::to_string(fd.xi.size()) + " t:" + std::to_string(fd.times.size());
  rep.fd_tolerance = tolerance;

  ResidualAccum w_rel, s_rel;
  for (size_t k = 0; k < fd.times.size(); ++k) {
    const double t = fd.times[k];
    const double s_exact = sol.s(t);
    s_rel.add((fd.s_traj[k] - s_exact) / s_exact);
    for (size_t i = 0; i < fd.xi.size(); ++i) {
      const double z = fd.xi[i] * fd.s_traj[k];
      // The FD front may slightly overshoot s_exact; the profile extends smoothly.
      const double eta = z / (2.0 * std::sqrt(t));
      const TDerivs d = sol.eval_T(std::min(eta, sol.gamma));
      const double w_exact =
          eta <= sol.gamma
              ? 2.0 * std::sqrt(t) * d.T
              : 2.0 * std::sqrt(t) * (d.T + d.T1 * (eta - sol.gamma));
      w_rel.add((fd.w_field[k][i] - w_exact) / std::abs(w_exact));
    }
  }
  rep.add(w_rel.entry("fd-w-rel", CheckKind::FiniteDifference));
  rep.add(s_rel.entry("fd-s-rel", CheckKind::FiniteDifference));
  rep.finalize();
  return rep;
}

}  // namespace stefanchain::fd
