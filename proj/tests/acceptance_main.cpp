// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance <path-to-stefan-chain-cli>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stefanchain/mkdv.hpp"
#include "stefanchain/stefan_fd.hpp"
#include "stefanchain/verification.hpp"

using namespace stefanchain;

namespace {

std::string g_cli_path;

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> body;
  double budget_ms;
};

SimilarityParams canonical() { return {}; }

SimilarityParams canonical_robin(double h0) {
  SimilarityParams p;
  p.bc = BcKind::Robin;
  p.h0 = h0;
  return p;
}

SimilarityParams chain_params() {
  SimilarityParams p;
  p.wm0 = 0.25;
  return p;
}

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool criterion_gamma_root(std::string& detail) {
  const SimilarityParams p = canonical();
  const double g = solve_gamma(p);
  const double resid = std::abs(gamma_equation_residual(p, g));
  detail = "gamma=" + std::to_string(g) + " |G-F|=" + fmt_sci(resid);
  return g > 0.51 && g < 0.52 && resid <= 1e-12;
}

bool criterion_p1_exactness(std::string& detail) {
  const ResidualReport rd = verify_p1(build_solution(canonical()));
  const ResidualReport rr = verify_p1(build_solution(canonical_robin(2.0)));
  double worst = 0.0;
  for (const auto* rep : {&rd, &rr})
    for (const auto& e : rep->residuals)
      if (e.kind != CheckKind::Info) worst = std::max(worst, e.max_abs);
  detail = "max residual=" + fmt_sci(worst) + " (dirichlet+robin, 32x16 grid)";
  return worst <= 1e-10;
}

bool criterion_burgers(std::string& detail) {
  const ResidualReport rep = verify_p2(build_solution(canonical()));
  const double analytic = rep.max_abs("p2-1-analytic");
  const double quad = rep.max_abs("p2-4-integral");
  detail = "p2-1 analytic=" + fmt_sci(analytic) + " p2-4=" + fmt_sci(quad);
  return analytic <= 1e-9 && quad <= 1e-8;
}

bool criterion_reciprocal_chain(std::string& detail) {
  const ClosedFormSolution sol = build_solution(chain_params());
  const ResidualReport r3 = verify_p3(sol);
  const ResidualReport r4 = verify_p4(sol);
  const double p33 = r3.max_abs("p3-3-front");
  const double p43 = r4.max_abs("p4-3-front");

  std::vector<double> residuals;
  for (double d : {1e-3, 5e-4, 2.5e-4}) {
    FdSteps st;
    st.pde_delta = d;
    residuals.push_back(verify_p4(sol, {}, st).max_abs("p4-1-fd"));
  }
  double order = 0.0;
  for (size_t i = 1; i < residuals.size(); ++i)
    order += std::log2(residuals[i - 1] / residuals[i]);
  order /= double(residuals.size() - 1);

  detail = "p3-3=" + fmt_sci(p33) + " p4-3=" + fmt_sci(p43) + " p4-1@1e-3=" +
           fmt_sci(residuals[0]) + " order=" + std::to_string(order);
  return p33 <= 1e-8 && p43 <= 1e-8 && residuals[0] <= 1e-3 && order >= 1.8 && order <= 2.2;
}

bool criterion_round_trips(std::string& detail) {
  const ClosedFormSolution sol = build_solution(canonical());
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> uz(0.02, 0.98), ut(0.25, 3.0);
  double worst_w = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = ut(rng);
    const double z = uz(rng) * sol.s(t);
    const double w = reconstruct_w(sol, z, t, sol.params.sigma);
    const double exact = sol.eval_state(z, t).w;
    worst_w = std::max(worst_w, std::abs(w - exact) / exact);
  }

  const ClosedFormSolution mono = build_solution(chain_params());
  double worst_s = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    const double x1 = boundary_curves(mono, t).X1;
    worst_s = std::max(worst_s,
                       std::abs(reconstruct_z(mono, x1, t) - mono.s(t)) / mono.s(t));
  }
  detail = "w round trip=" + fmt_sci(worst_w) + " (100 pts), z(X1) vs s=" + fmt_sci(worst_s);
  return worst_w <= 1e-8 && worst_s <= 1e-6;
}

bool criterion_signs(std::string& detail) {
  const ResidualReport rep = verify_signs(build_solution(canonical()));
  detail = "violations=" + std::to_string(long(rep.max_abs("sign-violations")));
  return rep.passed && rep.max_abs("sign-violations") == 0.0;
}

bool criterion_convergence(std::string& detail) {
  const ResidualReport rep =
      verify_convergence(canonical_robin(1.0), {10.0, 100.0, 1000.0, 10000.0});
  const double final_gap = rep.max_abs("final-gamma-gap");
  detail = "final gap=" + fmt_sci(final_gap) +
           " monotone violations=" + std::to_string(long(rep.max_abs("gap-monotone-violations")));
  return rep.max_abs("gap-monotone-violations") == 0.0 && final_gap <= 1e-3;
}

bool criterion_fd_oracle(std::string& detail) {
  const ClosedFormSolution sol = build_solution(canonical());
  fd::FdConfig base = fd::sqrt_t_config(canonical());
  base.n_xi = 200;
  base.dt = 1e-4;
  base.t0 = 0.25;
  base.t_end = 1.0;
  const ResidualReport rep = fd::fd_compare(fd::fd_solve(base), sol);
  const double w_err = rep.max_abs("fd-w-rel");
  const double s_err = rep.max_abs("fd-s-rel");

  const auto worst = [&sol](fd::FdConfig c) {
    const ResidualReport r = fd::fd_compare(fd::fd_solve(c), sol);
    return std::max(r.max_abs("fd-w-rel"), r.max_abs("fd-s-rel"));
  };
  std::array<double, 3> temporal{};
  int k = 0;
  for (double dt : {8e-3, 4e-3, 2e-3}) {
    fd::FdConfig c = base;
    c.n_xi = 320;
    c.dt = dt;
    temporal[k++] = worst(c);
  }
  const double t_order = 0.5 * (std::log2(temporal[0] / temporal[1]) +
                                std::log2(temporal[1] / temporal[2]));
  std::array<double, 3> spatial{};
  k = 0;
  for (auto [n, dt] : {std::pair{25, 4e-3}, {50, 1e-3}, {100, 2.5e-4}}) {
    fd::FdConfig c = base;
    c.n_xi = n;
    c.dt = dt;
    spatial[k++] = worst(c);
  }
  const double s_order =
      0.5 * (std::log2(spatial[0] / spatial[1]) + std::log2(spatial[1] / spatial[2]));

  detail = "w=" + fmt_sci(w_err) + " s=" + fmt_sci(s_err) + " temporal order=" +
           std::to_string(t_order) + " spatial order=" + std::to_string(s_order);
  return w_err <= 1e-3 && s_err <= 1e-3 && t_order >= 0.9 && s_order >= 1.8;
}

bool criterion_kink_reduction(std::string& detail) {
  mkdv::KinkParams p;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uy(p.y_min, p.y_max), ut(p.t_lo, p.t_hi);
  double a5 = 0.0;
  for (int i = 0; i < 200; ++i)
    a5 = std::max(a5, std::abs(mkdv::kink_equation_residual(p, uy(rng), ut(rng))));

  const double base = mkdv::verify_casimir(mkdv::hodograph_to_psi(p)).max_abs("a1-residual");
  mkdv::KinkParams fine = p;
  fine.n_y = 800;
  fine.n_t = 80;
  const double refined =
      mkdv::verify_casimir(mkdv::hodograph_to_psi(fine)).max_abs("a1-residual");
  const double order = std::log2(base / refined);
  detail = "a5=" + fmt_sci(a5) + " a1@400x40=" + fmt_sci(base) + " order=" +
           std::to_string(order);
  return a5 <= 1e-12 && base <= 1e-3 && order >= 1.8 && order <= 2.2;
}

bool criterion_cli_determinism(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "CLI path missing (pass it as argv[1])";
    return false;
  }
  const std::string args = " chain --samples 65 --t 1 --wm0 0.5";
  const auto run_once = [&](const std::string& tag) {
    const std::string out = "acceptance_chain_" + tag + ".csv";
    const std::string cmd =
        g_cli_path + args + " -o " + out + " --summary " + out + ".json";
    if (std::system(cmd.c_str()) != 0) return std::string();
    std::ifstream in(out, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::remove(out.c_str());
    std::remove((out + ".json").c_str());
    return ss.str();
  };
  const std::string a = run_once("a");
  const std::string b = run_once("b");
  detail = "two runs, " + std::to_string(a.size()) + " bytes each";
  return !a.empty() && a == b;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  const std::vector<Criterion> criteria = {
      {"1 root correctness", criterion_gamma_root, 1.0},
      {"2 closed-form exactness", criterion_p1_exactness, 1000.0},
      {"3 Burgers chain", criterion_burgers, 5000.0},
      {"4 reciprocal chain", criterion_reciprocal_chain, 30000.0},
      {"5 round trips", criterion_round_trips, 30000.0},
      {"6 sign invariants", criterion_signs, 10000.0},
      {"7 convergence ladder", criterion_convergence, 10.0},
      {"8 FD oracle", criterion_fd_oracle, 60000.0},
      {"9 kink reduction", criterion_kink_reduction, 30000.0},
      {"10 CLI determinism", criterion_cli_determinism, 30000.0},
  };

  // Warm pass outside the timed region for the sub-millisecond budgets.
  (void)solve_gamma(canonical());

  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (ms > c.budget_ms) {
      ok = false;
      detail += " [over budget " + std::to_string(c.budget_ms) + " ms]";
    }
    std::printf("%s criterion %s: %s (%.2f ms)\n", ok ? "PASS" : "FAIL", c.name.c_str(),
                detail.c_str(), ms);
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
