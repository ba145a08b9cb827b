#include "stefanchain/similarity.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace stefanchain {

namespace {
constexpr double kSqrtPi = 1.0 / std::numbers::inv_sqrtpi_v<double>;
}

const char* bc_kind_name(BcKind bc) {
  switch (bc) {
    case BcKind::Dirichlet: return "dirichlet";
    case BcKind::Robin: return "robin";
    case BcKind::Neumann: return "neumann";
  }
  return "unknown";
}

BcKind bc_kind_from_name(const std::string& name) {
  if (name == "dirichlet") return BcKind::Dirichlet;
  if (name == "robin") return BcKind::Robin;
  if (name == "neumann") return BcKind::Neumann;
  fail(ErrorCode::InvalidParams, "unknown boundary kind '" + name + "'");
}

double SimilarityParams::L(double t) const { return L0 * std::sqrt(t); }
double SimilarityParams::v(double t) const { return 2.0 * v0 * std::sqrt(t); }
double SimilarityParams::h(double t) const { return h0 / std::sqrt(t); }
double SimilarityParams::wm(double t) const { return 2.0 * wm0 * std::sqrt(t); }

void SimilarityParams::validate() const {
  if (!(std::isfinite(L0) && std::isfinite(v0) && std::isfinite(wm0) && std::isfinite(h0) &&
        std::isfinite(sigma) && std::isfinite(m)))
    fail(ErrorCode::InvalidParams, "parameters must be finite");
  if (!(L0 > 0.0)) fail(ErrorCode::InvalidParams, "L0 must be > 0");
  if (!(v0 > 0.0)) fail(ErrorCode::InvalidParams, "v0 must be > 0");
  if (!(wm0 >= 0.0)) fail(ErrorCode::InvalidParams, "wm0 must be >= 0");
  if (!(sigma > 0.0)) fail(ErrorCode::InvalidParams, "sigma must be > 0");
  if (!(m > 0.0)) fail(ErrorCode::InvalidParams, "m must be > 0");
  if (bc != BcKind::Dirichlet && !(h0 > 0.0))
    fail(ErrorCode::InvalidParams, "h0 must be > 0 for Robin/Neumann data");
  if (v0 < wm0 * (bc == BcKind::Neumann ? 0.0 : 1.0))
    fail(ErrorCode::InvalidParams, "boundary data requires v0 > wm0");
}

double gamma_equation_residual(const SimilarityParams& p, double g) {
  if (p.bc == BcKind::Dirichlet)
    return p.v0 * std::exp(-g * g) - (p.L0 * g * g + p.wm0);
  const double eps = p.eps();
  return (2.0 * p.v0 * p.h0 - p.L0 * g) * std::exp(-g * g) -
         (p.wm0 + p.L0 * g * g) * (kSqrtPi * erf(g) + 2.0 * p.h0 * eps);
}

double solve_gamma(const SimilarityParams& params, const ToleranceSpec& tol) {
  params.validate();
  const auto f = [&params](double g) { return gamma_equation_residual(params, g); };

  Interval bracket;
  if (params.bc == BcKind::Dirichlet) {
    if (params.v0 == params.wm0)
      fail(ErrorCode::DegenerateRoot,
           "v0 == wm0 pins gamma = 0 and a stationary moving boundary");
    if (params.wm0 > 0.0) {
      bracket = {0.0, std::sqrt(std::log(params.v0 / params.wm0)) + 1.0};
    } else {
      double cap = 1.0;
      while (f(cap) > 0.0 && cap < 1e8) cap *= 2.0;
      bracket = {0.0, cap};
    }
  } else {
    if (params.v0 == params.eps() * params.wm0)
      fail(ErrorCode::DegenerateRoot,
           "v0 == eps*wm0 pins gamma = 0 and a stationary moving boundary");
    bracket = {0.0, 2.0 * params.v0 * params.h0 / params.L0};
  }
  return bisect(f, bracket, tol);
}

ClosedFormSolution build_solution(const SimilarityParams& params, const ToleranceSpec& tol) {
  ClosedFormSolution sol;
  sol.params = params;
  sol.gamma = solve_gamma(params, tol);
  if (params.bc == BcKind::Dirichlet) {
    sol.coeff_a = params.v0;
    sol.coeff_b = -params.L0 * sol.gamma - params.v0 * kSqrtPi * erf(sol.gamma);
  } else {
    const double eps = params.eps();
    const double den = kSqrtPi * erf(sol.gamma) + 2.0 * params.h0 * eps;
    sol.coeff_a = (2.0 * params.h0 * params.v0 - params.L0 * sol.gamma) / den;
    sol.coeff_b = -(2.0 * params.L0 * sol.gamma * params.h0 * eps +
                    2.0 * params.h0 * params.v0 * kSqrtPi * erf(sol.gamma)) /
                  den;
  }
  return sol;
}

double ClosedFormSolution::s(double t) const { return 2.0 * gamma * std::sqrt(t); }
double ClosedFormSolution::s_prime(double t) const { return gamma / std::sqrt(t); }

TDerivs ClosedFormSolution::eval_T(double eta) const {
  const double slack = 1e-12 * std::max(1.0, gamma);
  if (!(eta >= -slack && eta <= gamma + slack))
    fail(ErrorCode::OutOfDomain, "eta = " + std::to_string(eta) + " outside [0, gamma]");
  TDerivs d;
  const double e2 = std::exp(-eta * eta);
  const double er = erf(eta);
  d.T = coeff_a * (e2 + kSqrtPi * eta * er) + coeff_b * eta;
  d.T1 = coeff_a * kSqrtPi * er + coeff_b;
  d.T2 = 2.0 * coeff_a * e2;
  d.T3 = -2.0 * eta * d.T2;
  return d;
}

PointState ClosedFormSolution::eval_state(double z, double t) const {
  if (!(t > 0.0)) fail(ErrorCode::OutOfDomain, "t must be > 0");
  const double st = std::sqrt(t);
  const double front = s(t);
  const double slack = 1e-12 * std::max(1.0, front);
  if (!(z >= -slack && z <= front + slack))
    fail(ErrorCode::OutOfDomain, "z = " + std::to_string(z) + " outside [0, s(t)] at t = " +
                                     std::to_string(t));
  const double eta = z / (2.0 * st);
  const TDerivs d = eval_T(eta);
  // T'' from the profile ODE keeps the heat identity exact pointwise.
  const double T2 = 2.0 * d.T - 2.0 * eta * d.T1;
  const double T3 = -2.0 * eta * T2;
  PointState ps;
  ps.z = z;
  ps.t = t;
  ps.w = 2.0 * st * d.T;
  ps.w_z = d.T1;
  ps.w_zz = T2 / (2.0 * st);
  ps.w_zzz = T3 / (4.0 * t);
  ps.w_t = (d.T - eta * d.T1) / st;
  ps.s = front;
  ps.s_prime = s_prime(t);
  return ps;
}

}  // namespace stefanchain
