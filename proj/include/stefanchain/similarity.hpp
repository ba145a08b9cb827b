#pragma once

#include "stefanchain/numerics.hpp"

namespace stefanchain {

enum class BcKind { Dirichlet, Robin, Neumann };

const char* bc_kind_name(BcKind bc);
BcKind bc_kind_from_name(const std::string& name);

// Coefficients of the sqrt(t) data family:
//   L(t) = L0 sqrt(t), v(t) = 2 v0 sqrt(t), h(t) = h0/sqrt(t), wm(t) = 2 wm0 sqrt(t).
struct SimilarityParams {
  double L0 = 1.0;
  double v0 = 1.0;
  double wm0 = 0.5;
  double h0 = 1.0;
  double sigma = 1.0;
  double m = 1.0;
  BcKind bc = BcKind::Dirichlet;

  int eps() const { return bc == BcKind::Robin ? 1 : 0; }

  double L(double t) const;
  double v(double t) const;
  double h(double t) const;
  double wm(double t) const;
  // wm'(t)/wm(t); the ratio stays finite as the data vanish at t=0.
  double wm_log_deriv(double t) const { return 0.5 / t; }
  double v_log_deriv(double t) const { return 0.5 / t; }

  void validate() const;
};

struct PointState {
  double z = 0.0;
  double t = 0.0;
  double w = 0.0;
  double w_z = 0.0;
  double w_zz = 0.0;
  double w_zzz = 0.0;
  double w_t = 0.0;
  double s = 0.0;
  double s_prime = 0.0;
};

struct TDerivs {
  double T = 0.0;
  double T1 = 0.0;
  double T2 = 0.0;
  double T3 = 0.0;
};

// Similarity profile w(z,t) = 2 sqrt(t) T(z / (2 sqrt(t))) with
// T(eta) = a [exp(-eta^2) + sqrt(pi) eta erf(eta)] + b eta and front s(t) = 2 gamma sqrt(t).
struct ClosedFormSolution {
  SimilarityParams params;
  double gamma = 0.0;
  double coeff_a = 0.0;
  double coeff_b = 0.0;

  double s(double t) const;
  double s_prime(double t) const;

  // Profile and derivatives at eta in [0, gamma].
  TDerivs eval_T(double eta) const;

  // Full state at (z,t), 0 <= z <= s(t), t > 0.
  PointState eval_state(double z, double t) const;
};

// Root of the front coefficient equation: gamma* for Dirichlet data,
// gamma^eps for Robin/Neumann data. The gap between the two sides is strictly
// monotone, so any sign-changing bracket pins the root.
double solve_gamma(const SimilarityParams& params, const ToleranceSpec& tol = {1e-15, 0.0, 200});

ClosedFormSolution build_solution(const SimilarityParams& params,
                                  const ToleranceSpec& tol = {1e-15, 0.0, 200});

// Residual of the transcendental gamma equation at the given root.
double gamma_equation_residual(const SimilarityParams& params, double gamma);

}  // namespace stefanchain
