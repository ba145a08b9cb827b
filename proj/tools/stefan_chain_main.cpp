// stefan-chain: similarity solutions of one-phase moving-boundary problems,
// their Cole-Hopf / reciprocal / exponential-map images, residual verification
// suites, a front-fixing finite-difference oracle and the kink reduction check.
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "stefanchain/mkdv.hpp"
#include "stefanchain/stefan_fd.hpp"
#include "stefanchain/verification.hpp"

namespace {

using namespace stefanchain;
using nlohmann::json;

// Shortest decimal form that parses back to the same double; keeps CSV output
// reproducible byte for byte.
std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int exit_code_for(const ChainError& e) {
  switch (e.code()) {
    case ErrorCode::InvalidParams:
      return 2;
    case ErrorCode::DegenerateRoot:
      return 3;
    case ErrorCode::SingularDenominator:
    case ErrorCode::NonMonotone:
    case ErrorCode::LogDomain:
    case ErrorCode::OutOfRange:
    case ErrorCode::OutOfDomain:
    case ErrorCode::ZeroTemperature:
      return 4;
    default:
      return 5;
  }
}

struct ParamFlags {
  std::string bc = "dirichlet";
  SimilarityParams params;

  void attach(CLI::App* cmd) {
    cmd->add_option("--bc", bc, "boundary kind at the fixed face")
        ->check(CLI::IsMember({"dirichlet", "robin", "neumann"}))
        ->capture_default_str();
    cmd->add_option("--v0", params.v0, "fixed-face data coefficient")->capture_default_str();
    cmd->add_option("--l0", params.L0, "latent-heat coefficient")->capture_default_str();
    cmd->add_option("--wm0", params.wm0, "phase-change coefficient")->capture_default_str();
    cmd->add_option("--h0", params.h0, "heat-transfer coefficient (robin/neumann)")
        ->capture_default_str();
    cmd->add_option("--sigma", params.sigma, "Cole-Hopf parameter")->capture_default_str();
    cmd->add_option("--m", params.m, "exponential-map parameter")->capture_default_str();
  }

  SimilarityParams resolve() const {
    SimilarityParams p = params;
    p.bc = bc_kind_from_name(bc);
    return p;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidParams, "cannot open '" + path + "' for writing");
  out << text;
}

// ---------------------------------------------------------------- gamma ----

int run_gamma(const ParamFlags& flags, const std::string& output) {
  const ClosedFormSolution sol = build_solution(flags.resolve());
  json j;
  j["gamma"] = sol.gamma;
  j["coeff_a"] = sol.coeff_a;
  j["coeff_b"] = sol.coeff_b;
  j["bc"] = bc_kind_name(sol.params.bc);
  write_text(output, j.dump() + "\n");
  return 0;
}

// ---------------------------------------------------------------- chain ----

int run_chain(const ParamFlags& flags, double t, int samples, const std::string& output,
              std::string summary_path) {
  if (samples < 2) fail(ErrorCode::InvalidParams, "--samples must be >= 2");
  if (!(t > 0.0)) fail(ErrorCode::InvalidParams, "--t must be > 0");
  const ClosedFormSolution sol = build_solution(flags.resolve());
  const double s = sol.s(t);

  std::ostringstream csv;
  csv << "z,t,w,w_z,x,psi,y,theta\n";
  for (int i = 0; i < samples; ++i) {
    const double z = s * i / (samples - 1);
    const ChainSample cs = chain_sample(sol, z, t);
    csv << fmt(cs.z) << ',' << fmt(cs.t) << ',' << fmt(cs.w) << ',' << fmt(cs.w_z) << ','
        << fmt(cs.x) << ',' << fmt(cs.psi) << ',' << fmt(cs.y) << ',' << fmt(cs.theta) << '\n';
  }
  write_text(output, csv.str());

  const BoundaryCurves bc = boundary_curves(sol, t);
  json j;
  j["s"] = bc.s;
  j["X0"] = bc.X0;
  j["X1"] = bc.X1;
  j["Y0"] = bc.Y0;
  j["Y1"] = bc.Y1;
  if (summary_path.empty())
    summary_path = (output.empty() || output == "-") ? "stderr" : output + ".json";
  if (summary_path == "stderr")
    std::cerr << j.dump() << "\n";
  else
    write_text(summary_path, j.dump() + "\n");
  return 0;
}

// --------------------------------------------------------------- verify ----

int thread_cap() {
  const char* env = std::getenv("STEFAN_CHAIN_THREADS");
  int cap = int(std::thread::hardware_concurrency());
  if (env && *env) cap = std::max(1, std::atoi(env));
  return std::max(1, cap);
}

json run_one_suite(const std::string& suite, const ClosedFormSolution& sol,
                   const SimilarityParams& params, double tol, double fd_tol) {
  try {
    ResidualReport rep;
    if (suite == "p1") rep = verify_p1(sol);
    else if (suite == "p2") rep = verify_p2(sol);
    else if (suite == "p3") rep = verify_p3(sol);
    else if (suite == "p4") rep = verify_p4(sol);
    else if (suite == "signs") rep = verify_signs(sol);
    else fail(ErrorCode::InvalidParams, "unknown suite '" + suite + "'");
    if (tol > 0.0) {
      rep.tolerance = tol;
      rep.fd_tolerance = tol;
    }
    if (fd_tol > 0.0) rep.fd_tolerance = fd_tol;
    rep.finalize();
    return rep.to_json();
  } catch (const ChainError& e) {
    json j;
    j["suite"] = suite;
    j["passed"] = false;
    j["error"] = e.what();
    (void)params;
    return j;
  }
}

int run_verify(const ParamFlags& flags, const std::string& suite, double tol, double fd_tol,
               const std::string& output) {
  const ClosedFormSolution sol = build_solution(flags.resolve());
  std::vector<std::string> suites;
  if (suite == "all")
    suites = {"p1", "p2", "p3", "p4", "signs"};
  else
    suites = {suite};

  std::map<std::string, json> results;
  const int cap = thread_cap();
  if (cap > 1 && suites.size() > 1) {
    std::vector<std::pair<std::string, std::future<json>>> futs;
    for (const auto& s : suites)
      futs.emplace_back(s, std::async(std::launch::async, [&, s] {
                          return run_one_suite(s, sol, sol.params, tol, fd_tol);
                        }));
    for (auto& [name, fut] : futs) results[name] = fut.get();
  } else {
    for (const auto& s : suites) results[s] = run_one_suite(s, sol, sol.params, tol, fd_tol);
  }

  bool all_passed = true;
  json out = json::array();
  for (const auto& [name, rep] : results) {  // std::map keeps suite order deterministic
    all_passed = all_passed && rep.value("passed", false);
    out.push_back(rep);
  }
  write_text(output, (suites.size() == 1 ? out[0].dump(2) : out.dump(2)) + "\n");
  return all_passed ? 0 : 1;
}

// ------------------------------------------------------------------- fd ----

int run_fd(const std::string& config_path, const std::string& traj_path,
           const std::string& field_path, int field_stride, bool compare) {
  std::ifstream in(config_path);
  if (!in) fail(ErrorCode::InvalidParams, "cannot read config '" + config_path + "'");
  json jcfg = json::parse(in);
  const fd::FdConfig cfg = fd::config_from_json(jcfg);
  const fd::FdSolution sol = fd::fd_solve(cfg);

  std::ostringstream traj;
  traj << "t,s,s_prime\n";
  for (size_t k = 0; k < sol.times.size(); ++k)
    traj << fmt(sol.times[k]) << ',' << fmt(sol.s_traj[k]) << ',' << fmt(sol.s_prime_traj[k])
         << '\n';
  write_text(traj_path, traj.str());

  if (field_stride <= 0)
    field_stride = std::max<int>(1, int(sol.times.size() / 50));
  std::ostringstream field;
  field << "t,xi,z,w\n";
  for (size_t k = 0; k < sol.times.size(); k += field_stride)
    for (size_t i = 0; i < sol.xi.size(); ++i)
      field << fmt(sol.times[k]) << ',' << fmt(sol.xi[i]) << ','
            << fmt(sol.xi[i] * sol.s_traj[k]) << ',' << fmt(sol.w_field[k][i]) << '\n';
  write_text(field_path, field.str());

  if (compare) {
    if (!cfg.family) fail(ErrorCode::InvalidParams, "--compare needs sqrt_t coefficients");
    const ResidualReport rep = fd::fd_compare(sol, build_solution(*cfg.family));
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.passed ? 0 : 1;
  }
  return 0;
}

// -------------------------------------------------------------- converge ----

int run_converge(const ParamFlags& flags, const std::string& h0_csv, const std::string& output,
                 const std::string& fd_out, bool no_fd) {
  SimilarityParams base = flags.resolve();
  if (base.bc == BcKind::Dirichlet) base.bc = BcKind::Robin;
  if (base.bc != BcKind::Robin)
    fail(ErrorCode::InvalidParams, "the convergence study is a Robin (eps=1) statement");

  std::vector<double> h0s;
  std::stringstream ss(h0_csv);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) h0s.push_back(std::stod(tok));
  if (h0s.empty()) fail(ErrorCode::InvalidParams, "--h0-list is empty");

  SimilarityParams dirichlet = base;
  dirichlet.bc = BcKind::Dirichlet;
  const ClosedFormSolution limit = build_solution(dirichlet);

  std::ostringstream csv;
  csv << "h0,gamma,gap\n";
  for (double h0 : h0s) {
    SimilarityParams p = base;
    p.h0 = h0;
    const double g = solve_gamma(p);
    csv << fmt(h0) << ',' << fmt(g) << ',' << fmt(std::abs(g - limit.gamma)) << '\n';
  }
  write_text(output, csv.str());

  if (!no_fd) {
    std::ostringstream fdcsv;
    fdcsv << "h0,s_rel,w_rel\n";
    for (double h0 : h0s) {
      SimilarityParams p = base;
      p.h0 = h0;
      fd::FdConfig cfg = fd::sqrt_t_config(p);
      cfg.n_xi = 100;
      cfg.dt = 1e-3;
      const ResidualReport rep = fd::fd_compare(fd::fd_solve(cfg), limit);
      fdcsv << fmt(h0) << ',' << fmt(rep.max_abs("fd-s-rel")) << ','
            << fmt(rep.max_abs("fd-w-rel")) << '\n';
    }
    write_text(fd_out, fdcsv.str());
  }
  return 0;
}

// ----------------------------------------------------------------- mkdv ----

int run_mkdv(const mkdv::KinkParams& kp, const std::string& output,
             const std::string& samples_out, bool no_reflect) {
  kp.validate();
  const auto field = mkdv::hodograph_to_psi(kp);
  ResidualReport rep = mkdv::verify_casimir(field, 1e-3, !no_reflect);

  ResidualAccum a5;
  for (int j = 0; j < kp.n_t; ++j) {
    const double t = kp.t_lo + (kp.t_hi - kp.t_lo) * j / (kp.n_t - 1);
    for (int i = 0; i < kp.n_y; i += 7) {
      const double y = kp.y_min + (kp.y_max - kp.y_min) * i / (kp.n_y - 1);
      a5.add(mkdv::kink_equation_residual(kp, y, t));
    }
  }
  rep.residuals.insert(rep.residuals.begin(), a5.entry("a5-kink-residual", CheckKind::Analytic));
  rep.finalize();
  write_text(output, rep.to_json().dump(2) + "\n");

  if (!samples_out.empty()) {
    std::ostringstream csv;
    csv << "y,t,x,v,psi\n";
    for (const auto& r : mkdv::sample_table(kp))
      csv << fmt(r.y) << ',' << fmt(r.t) << ',' << fmt(r.x) << ',' << fmt(r.v) << ','
          << fmt(r.psi) << '\n';
    write_text(samples_out, csv.str());
  }
  return rep.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"similarity solutions of one-phase Stefan problems and their "
               "Cole-Hopf / reciprocal / exponential-map images"};
  app.require_subcommand(1);

  ParamFlags gamma_flags, chain_flags, verify_flags, converge_flags;

  auto* cmd_gamma = app.add_subcommand("gamma", "solve the front coefficient equation");
  gamma_flags.attach(cmd_gamma);
  std::string gamma_out = "-";
  cmd_gamma->add_option("-o,--output", gamma_out, "output path (default stdout)");

  auto* cmd_chain = app.add_subcommand("chain", "sample the parametric solution along z");
  chain_flags.attach(cmd_chain);
  double chain_t = 1.0;
  int chain_samples = 65;
  std::string chain_out = "-", chain_summary;
  cmd_chain->add_option("--t", chain_t, "time of the slice")->capture_default_str();
  cmd_chain->add_option("--samples", chain_samples, "number of z samples")
      ->capture_default_str();
  cmd_chain->add_option("-o,--output", chain_out, "CSV path (default stdout)");
  cmd_chain->add_option("--summary", chain_summary,
                        "boundary-curve JSON path (default stderr, or <output>.json)");

  auto* cmd_verify = app.add_subcommand("verify", "run residual verification suites");
  verify_flags.attach(cmd_verify);
  std::string suite = "all", verify_out = "-";
  double tol = 0.0, fd_tol = 0.0;
  cmd_verify->add_option("--suite", suite, "p1|p2|p3|p4|signs|all")
      ->check(CLI::IsMember({"p1", "p2", "p3", "p4", "signs", "all"}))
      ->capture_default_str();
  cmd_verify->add_option("--tol", tol, "override both tolerances");
  cmd_verify->add_option("--fd-tol", fd_tol, "override the finite-difference tolerance");
  cmd_verify->add_option("-o,--output", verify_out, "report path (default stdout)");

  auto* cmd_fd = app.add_subcommand("fd", "front-fixing finite-difference solve");
  std::string fd_config, fd_traj = "fd_traj.csv", fd_field = "fd_field.csv";
  int fd_stride = 0;
  bool fd_compare_flag = false;
  cmd_fd->add_option("--config", fd_config, "JSON configuration")->required();
  cmd_fd->add_option("--traj", fd_traj, "trajectory CSV path")->capture_default_str();
  cmd_fd->add_option("--field", fd_field, "field CSV path")->capture_default_str();
  cmd_fd->add_option("--field-stride", fd_stride, "emit every Nth time slice (0 = auto)");
  cmd_fd->add_flag("--compare", fd_compare_flag, "also report the gap to the closed form");

  auto* cmd_converge = app.add_subcommand("converge", "Robin-to-Dirichlet convergence study");
  converge_flags.attach(cmd_converge);
  std::string h0_list = "10,100,1000,10000", converge_out = "-",
              converge_fd_out = "converge_fd.csv";
  bool no_fd = false;
  cmd_converge->add_option("--h0-list", h0_list, "comma-separated increasing h0 ladder")
      ->capture_default_str();
  cmd_converge->add_option("-o,--output", converge_out, "gamma-gap CSV path (default stdout)");
  cmd_converge->add_option("--fd-out", converge_fd_out, "FD-gap CSV path")
      ->capture_default_str();
  cmd_converge->add_flag("--no-fd", no_fd, "skip the finite-difference ladder");

  auto* cmd_mkdv = app.add_subcommand("mkdv", "kink reduction residual check");
  mkdv::KinkParams kp;
  std::string mkdv_out = "-", mkdv_samples;
  bool no_reflect = false;
  cmd_mkdv->add_option("--amp", kp.amp, "kink amplitude")->capture_default_str();
  cmd_mkdv->add_option("--ny", kp.n_y, "x-grid size")->capture_default_str();
  cmd_mkdv->add_option("--nt", kp.n_t, "t-grid size")->capture_default_str();
  cmd_mkdv->add_option("--y-min", kp.y_min, "left cutoff")->capture_default_str();
  cmd_mkdv->add_option("--y-max", kp.y_max, "right cutoff")->capture_default_str();
  cmd_mkdv->add_option("--t-lo", kp.t_lo, "first sampled time")->capture_default_str();
  cmd_mkdv->add_option("--t-hi", kp.t_hi, "last sampled time")->capture_default_str();
  cmd_mkdv->add_option("--tanh-floor", kp.tanh_floor, "lower bound on tanh(phase)")
      ->capture_default_str();
  cmd_mkdv->add_option("-o,--output", mkdv_out, "report path (default stdout)");
  cmd_mkdv->add_option("--samples-out", mkdv_samples, "sample-table CSV path");
  cmd_mkdv->add_flag("--no-reflect", no_reflect, "test the unreflected time orientation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_gamma->parsed()) return run_gamma(gamma_flags, gamma_out);
    if (cmd_chain->parsed())
      return run_chain(chain_flags, chain_t, chain_samples, chain_out, chain_summary);
    if (cmd_verify->parsed()) return run_verify(verify_flags, suite, tol, fd_tol, verify_out);
    if (cmd_fd->parsed()) return run_fd(fd_config, fd_traj, fd_field, fd_stride, fd_compare_flag);
    if (cmd_converge->parsed())
      return run_converge(converge_flags, h0_list, converge_out, converge_fd_out, no_fd);
    if (cmd_mkdv->parsed()) return run_mkdv(kp, mkdv_out, mkdv_samples, no_reflect);
  } catch (const ChainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
