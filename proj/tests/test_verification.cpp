#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "stefanchain/verification.hpp"

using namespace stefanchain;

namespace {

ClosedFormSolution dirichlet_sol() { return build_solution(SimilarityParams{}); }

ClosedFormSolution robin_sol(double h0) {
  SimilarityParams p;
  p.bc = BcKind::Robin;
  p.h0 = h0;
  return build_solution(p);
}

ClosedFormSolution chain_sol() {
  SimilarityParams p;
  p.wm0 = 0.25;
  return build_solution(p);
}

double ls_order(const std::vector<double>& residuals) {
  double sum = 0.0;
  for (size_t i = 1; i < residuals.size(); ++i)
    sum += std::log2(residuals[i - 1] / residuals[i]);
  return sum / double(residuals.size() - 1);
}

}  // namespace

TEST_CASE("grid nodes have the advertised shape") {
  GridSpec g;
  const auto ts = g.t_nodes();
  CHECK(int(ts.size()) == g.n_t);
  CHECK(ts.front() == doctest::Approx(g.t_min));
  CHECK(ts.back() == doctest::Approx(g.t_max));
  CHECK(ts[1] / ts[0] == doctest::Approx(ts[2] / ts[1]).epsilon(1e-12));
  const auto zs = g.z_nodes(2.0);
  CHECK(int(zs.size()) == g.n_z);
  CHECK(zs.front() == 0.0);
  CHECK(zs.back() == doctest::Approx(2.0));
  CHECK(zs[1] - zs[0] < zs[g.n_z / 2] - zs[g.n_z / 2 - 1]);  // clustered at the faces
}

TEST_CASE("closed forms satisfy the heat problem at rounding level") {
  for (const ClosedFormSolution& sol : {dirichlet_sol(), robin_sol(2.0)}) {
    const ResidualReport rep = verify_p1(sol);
    CHECK(rep.passed);
    for (const char* id : {"p1-1-heat", "p1-2-stefan", "p1-3-phase", "p1-4-face"})
      CHECK(rep.max_abs(id) <= 1e-10);
  }
}

TEST_CASE("a linear perturbation is flagged by the Stefan condition only") {
  const ClosedFormSolution sol = dirichlet_sol();
  const auto perturbed = [&sol](double z, double t) {
    PointState st = sol.eval_state(z, t);
    st.w += 0.01 * z;
    st.w_z += 0.01;
    return st;
  };
  const ResidualReport rep = verify_p1_states(
      sol.params, perturbed, [&sol](double t) { return sol.s(t); }, {});
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_abs("p1-1-heat") <= 1e-12);
  CHECK(rep.max_abs("p1-2-stefan") == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(rep.max_abs("p1-4-face") <= 1e-12);
}

TEST_CASE("Burgers residuals: exact route at rounding, FD route at truncation") {
  const ResidualReport rep = verify_p2(dirichlet_sol());
  CHECK(rep.passed);
  CHECK(rep.max_abs("p2-1-analytic") <= 1e-9);
  CHECK(rep.max_abs("p2-1-fd") <= 1e-3);
  CHECK(rep.max_abs("p2-2-front") <= 1e-10);
  CHECK(rep.max_abs("p2-3-front-gradient") <= 1e-10);
  CHECK(rep.max_abs("p2-4-integral") <= 1e-8);
}

TEST_CASE("Burgers FD residual drops fourfold when the step halves") {
  const ClosedFormSolution sol = dirichlet_sol();
  FdSteps coarse, fine;
  coarse.burgers_step = 1e-3;
  fine.burgers_step = 5e-4;
  const double r0 = verify_p2(sol, {}, coarse).max_abs("p2-1-fd");
  const double r1 = verify_p2(sol, {}, fine).max_abs("p2-1-fd");
  const double ratio = r0 / r1;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("reciprocal problem residuals on the increasing instance") {
  const ResidualReport rep = verify_p3(chain_sol());
  CHECK(rep.passed);
  CHECK(rep.max_abs("p3-3-front") <= 1e-8);
  CHECK(rep.max_abs("p3-4-diff") <= 1e-10);
  CHECK(rep.max_abs("p3-1-fd") <= 1e-3);
  CHECK(rep.max_abs("p3-2-diff") <= 1e-3);
  CHECK(rep.max_abs("p3-5-diff") <= 1e-3);
  CHECK(rep.find("info-X1-at-t-min") != nullptr);
  CHECK(rep.max_abs("info-X1-at-t-min") > rep.max_abs("p3-3-front"));  // 1/sqrt(t) blow-up
}

TEST_CASE("reciprocal PDE residual converges at second order") {
  const ClosedFormSolution sol = chain_sol();
  std::vector<double> residuals;
  for (double d : {4e-3, 2e-3, 1e-3}) {
    FdSteps st;
    st.pde_delta = d;
    residuals.push_back(verify_p3(sol, {}, st).max_abs("p3-1-fd"));
  }
  CHECK(ls_order(residuals) > 1.8);
}

TEST_CASE("exponential-map problem residuals on the increasing instance") {
  const ResidualReport rep = verify_p4(chain_sol());
  CHECK(rep.passed);
  CHECK(rep.max_abs("p4-3-front") <= 1e-8);
  CHECK(rep.max_abs("p4-4-diff") <= 1e-10);
  CHECK(rep.max_abs("p4-1-fd") <= 1e-3);
  CHECK(rep.max_abs("p4-2-diff") <= 1e-3);
  CHECK(rep.max_abs("p4-5-diff") <= 1e-3);
  CHECK(rep.max_abs("theta-identity") <= 1e-12);
}

TEST_CASE("exponential-map PDE residual converges at second order") {
  const ClosedFormSolution sol = chain_sol();
  std::vector<double> residuals;
  for (double d : {1e-3, 5e-4, 2.5e-4}) {
    FdSteps st;
    st.pde_delta = d;
    residuals.push_back(verify_p4(sol, {}, st).max_abs("p4-1-fd"));
  }
  CHECK(residuals[0] <= 1e-3);
  const double order = ls_order(residuals);
  CHECK(order > 1.8);
  CHECK(order < 2.2);
}

TEST_CASE("the folded canonical data propagates NonMonotone") {
  CHECK_THROWS_WITH_AS(verify_p3(dirichlet_sol()), doctest::Contains("NonMonotone"),
                       ChainError);
  CHECK_THROWS_AS(verify_p4(dirichlet_sol()), ChainError);
}

TEST_CASE("sign ledger is clean for valid data") {
  for (const ClosedFormSolution& sol : {dirichlet_sol(), robin_sol(1.0), chain_sol()}) {
    const ResidualReport rep = verify_signs(sol);
    CHECK(rep.passed);
    CHECK(rep.max_abs("sign-violations") == 0.0);
    CHECK(rep.max_abs("info-min-w") > 0.0);
    CHECK(rep.max_abs("info-max-w_z") <= 0.0);
  }
}

TEST_CASE("convergence ladder is strictly decreasing with a small final gap") {
  SimilarityParams base;
  base.bc = BcKind::Robin;
  const ResidualReport rep = verify_convergence(base, {10.0, 100.0, 1000.0, 10000.0});
  CHECK(rep.passed);
  CHECK(rep.max_abs("gap-monotone-violations") == 0.0);
  CHECK(rep.max_abs("final-gamma-gap") <= 1e-3);
  CHECK(rep.max_abs("w-gap-largest-h0") <= 1e-3);
}

TEST_CASE("a single-rung ladder still yields a report") {
  SimilarityParams base;
  base.bc = BcKind::Robin;
  const ResidualReport rep = verify_convergence(base, {1e12});
  CHECK(rep.find("final-gamma-gap") != nullptr);
  CHECK(rep.max_abs("final-gamma-gap") <= 1e-10);
  CHECK(rep.find("gap-monotone-violations") == nullptr);  // indeterminate for one rung
}

TEST_CASE("convergence study validates its inputs") {
  SimilarityParams base;  // Dirichlet
  CHECK_THROWS_AS(verify_convergence(base, {10.0, 100.0}), ChainError);
  base.bc = BcKind::Robin;
  CHECK_THROWS_AS(verify_convergence(base, {100.0, 10.0}), ChainError);
  CHECK_THROWS_AS(verify_convergence(base, {}), ChainError);
}

TEST_CASE("report JSON carries the schema fields") {
  const ResidualReport rep = verify_p1(dirichlet_sol());
  const auto j = rep.to_json();
  CHECK(j.at("suite") == "p1");
  CHECK(j.contains("grid"));
  CHECK(j.contains("tolerance"));
  CHECK(j.at("passed").get<bool>());
  CHECK(j.at("residuals").is_array());
  CHECK(j.at("residuals")[0].contains("id"));
  CHECK(j.at("residuals")[0].contains("max_abs"));
  CHECK(j.at("residuals")[0].contains("mean_abs"));
}
