#pragma once

#include "stefanchain/similarity.hpp"

namespace stefanchain {

struct ChainSample {
  double z = 0.0;
  double t = 0.0;
  double w = 0.0;
  double w_z = 0.0;
  double w_zz = 0.0;
  double x = 0.0;
  double psi = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct BoundaryCurves {
  double t = 0.0;
  double s = 0.0;
  double X0 = 0.0;
  double X1 = 0.0;
  double Y0 = 0.0;
  double Y1 = 0.0;
};

struct ThetaSample {
  double theta = 0.0;
  double y = 0.0;
};

// x = -(2/sigma) w_z / w
double cole_hopf(const PointState& state, double sigma);

// Psi = -(sigma/2) w^2 / (w_zz w - w_z^2); reciprocal of x_z.
double psi_from_w(const PointState& state, double sigma);

// theta = (m w_z w - (sigma/2) w^2) / (w_zz w - w_z^2),
// y = (1/m) ln(1 - 2 m w_z / (sigma w)); satisfies theta = (1 + m x) Psi.
ThetaSample theta_from_w(const PointState& state, double sigma, double m);

// Exact spatial derivatives carried through the chain, for boundary-condition
// checks that must not lean on finite differences.
double x_z_analytic(const PointState& state, double sigma);
double psi_x_analytic(const PointState& state, double sigma);
double theta_y_analytic(const PointState& state, double sigma, double m);

BoundaryCurves boundary_curves(const ClosedFormSolution& sol, double t);

// Samples z -> x on 64 points and requires strict monotonicity; the chain
// inversions refuse to guess around a fold.
void require_monotone_x(const ClosedFormSolution& sol, double t);

// Inverse of z -> x(z,t) by bisection with a Newton polish.
double invert_x(const ClosedFormSolution& sol, double x_target, double t,
                const ToleranceSpec& tol = {1e-13, 0.0, 200});

// Inverse of z -> y(z,t); |y(z,t) - y| <= tol.abs_tol on return.
double invert_y(const ClosedFormSolution& sol, double y, double t,
                const ToleranceSpec& tol = {1e-13, 0.0, 200});

// w(z,t) = wm(t) exp((sigma/2) int_z^{s(t)} x); quadrature inverse of cole_hopf.
double reconstruct_w(const ClosedFormSolution& sol, double z, double t, double sigma,
                     const ToleranceSpec& tol = {1e-10, 0.0, 200});

// z = int_{X0(t)}^{x_target} Psi(xi,t) dxi via monotone inversion of the x-map.
double reconstruct_z(const ClosedFormSolution& sol, double x_target, double t,
                     const ToleranceSpec& tol = {1e-10, 0.0, 200});

ChainSample chain_sample(const ClosedFormSolution& sol, double z, double t);

}  // namespace stefanchain
