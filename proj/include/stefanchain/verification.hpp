#pragma once

#include <functional>
#include <vector>

#include "stefanchain/report.hpp"
#include "stefanchain/transforms.hpp"

namespace stefanchain {

// Standard verification grid: Chebyshev-spaced z (clustered at both faces),
// geometric t. Several chain quantities blow up like 1/sqrt(t), so the grid
// never touches t = 0.
struct GridSpec {
  int n_z = 32;
  int n_t = 16;
  double t_min = 1e-2;
  double t_max = 4.0;

  std::vector<double> z_nodes(double s_of_t) const;
  std::vector<double> t_nodes() const;
  std::string describe() const;
};

// Steps for the truncation-limited checks.
struct FdSteps {
  double pde_delta = 1e-3;       // P3-1 / P4-1 stencil step in (x|y, t)
  double boundary_dt = 1e-4;     // time step for the differentiated boundary checks
  double burgers_step = 1e-3;    // P2-1 finite-difference route
};

using StateEvaluator = std::function<PointState(double z, double t)>;

// Heat equation, Stefan condition, phase-change value and the fixed-face
// condition, against a caller-supplied state evaluator.
ResidualReport verify_p1_states(const SimilarityParams& params, const StateEvaluator& eval,
                                const std::function<double(double)>& s_of_t,
                                const GridSpec& grid = {});
ResidualReport verify_p1(const ClosedFormSolution& sol, const GridSpec& grid = {});

// Burgers equation two ways (exact chain rule and central differences),
// the two front conditions and the integral face condition.
ResidualReport verify_p2(const ClosedFormSolution& sol, const GridSpec& grid = {},
                         const FdSteps& steps = {});

// Reciprocal problem: PDE residual on the (x,t) band by monotone inversion,
// front condition pointwise, integral conditions in differentiated form.
ResidualReport verify_p3(const ClosedFormSolution& sol, const GridSpec& grid = {},
                         const FdSteps& steps = {});

// Exponential-map problem: PDE residual on the moving (y,t) band, front
// condition pointwise, integral conditions in differentiated form, and the
// theta = (1+mx) Psi two-path identity.
ResidualReport verify_p4(const ClosedFormSolution& sol, const GridSpec& grid = {},
                         const FdSteps& steps = {});

// Sign ledger: w > 0, w_z <= 0, x >= 0, X0 >= 0, X1 >= 0.
ResidualReport verify_signs(const ClosedFormSolution& sol, const GridSpec& grid = {});

// Robin-to-Dirichlet convergence across an increasing h0 ladder.
ResidualReport verify_convergence(const SimilarityParams& params_base,
                                  const std::vector<double>& h0_list,
                                  const GridSpec& grid = {});

}  // namespace stefanchain
