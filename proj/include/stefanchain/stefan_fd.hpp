#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stefanchain/report.hpp"
#include "stefanchain/similarity.hpp"

namespace stefanchain::fd {

// Landau front-fixing discretization of the one-phase problem on xi = z/s(t):
//   w_t = w_xixi / s^2 + xi (s'/s) w_xi  on (0,1),
// diffusion implicit (backward Euler), front coupling by Picard iteration on
//   s' = -w_xi(1,t) / (L(t) s(t)).
struct FdConfig {
  int n_xi = 200;
  double dt = 1e-4;
  double t0 = 0.25;
  double t_end = 1.0;
  BcKind bc = BcKind::Dirichlet;

  std::function<double(double)> L;
  std::function<double(double)> v;
  std::function<double(double)> h;
  std::function<double(double)> wm;

  enum class SeedKind { Similarity, LinearProfile };
  SeedKind seed = SeedKind::Similarity;
  double s0 = 0.1;  // LinearProfile front position at t0

  // Set when the coefficients are the sqrt(t) family; required by the
  // similarity seed and by fd_compare.
  std::optional<SimilarityParams> family;

  double picard_tol = 1e-10;
  int picard_max = 50;

  void validate() const;
};

FdConfig sqrt_t_config(const SimilarityParams& params);
FdConfig config_from_json(const nlohmann::json& j);

struct FdSolution {
  std::vector<double> xi;
  std::vector<double> times;
  std::vector<double> s_traj;
  std::vector<double> s_prime_traj;
  std::vector<std::vector<double>> w_field;  // [time][node]
};

FdSolution fd_solve(const FdConfig& config);

// Max relative gap of w and s against the closed form over the stored history.
ResidualReport fd_compare(const FdSolution& fd, const ClosedFormSolution& sol,
                          double tolerance = 1e-3);

}  // namespace stefanchain::fd
