#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stefanchain/mkdv.hpp"
#include "stefanchain/stefan_fd.hpp"
#include "stefanchain/verification.hpp"

namespace py = pybind11;
using namespace stefanchain;

namespace {

py::dict report_to_dict(const ResidualReport& rep) {
  py::dict d;
  d["suite"] = rep.suite;
  d["grid"] = rep.grid;
  d["tolerance"] = rep.tolerance;
  d["fd_tolerance"] = rep.fd_tolerance;
  d["passed"] = rep.passed;
  py::list entries;
  for (const auto& e : rep.residuals) {
    py::dict entry;
    entry["id"] = e.id;
    entry["max_abs"] = e.max_abs;
    entry["mean_abs"] = e.mean_abs;
    entry["kind"] = check_kind_name(e.kind);
    entries.append(entry);
  }
  d["residuals"] = entries;
  return d;
}

SimilarityParams make_params(const std::string& bc, double v0, double L0, double wm0,
                             double h0, double sigma, double m) {
  SimilarityParams p;
  p.bc = bc_kind_from_name(bc);
  p.v0 = v0;
  p.L0 = L0;
  p.wm0 = wm0;
  p.h0 = h0;
  p.sigma = sigma;
  p.m = m;
  p.validate();
  return p;
}

}  // namespace

PYBIND11_MODULE(_stefanchain, mod) {
  mod.doc() = "similarity solutions of one-phase Stefan problems and their "
              "Cole-Hopf / reciprocal / exponential-map images";

  py::register_exception<ChainError>(mod, "ChainError");

  py::class_<SimilarityParams>(mod, "SimilarityParams")
      .def(py::init(&make_params), py::arg("bc") = "dirichlet", py::arg("v0") = 1.0,
           py::arg("l0") = 1.0, py::arg("wm0") = 0.5, py::arg("h0") = 1.0,
           py::arg("sigma") = 1.0, py::arg("m") = 1.0)
      .def_readonly("v0", &SimilarityParams::v0)
      .def_readonly("l0", &SimilarityParams::L0)
      .def_readonly("wm0", &SimilarityParams::wm0)
      .def_readonly("h0", &SimilarityParams::h0)
      .def_readonly("sigma", &SimilarityParams::sigma)
      .def_readonly("m", &SimilarityParams::m)
      .def_property_readonly("bc",
                             [](const SimilarityParams& p) { return bc_kind_name(p.bc); })
      .def("__repr__", [](const SimilarityParams& p) {
        return "SimilarityParams(bc='" + std::string(bc_kind_name(p.bc)) +
               "', v0=" + std::to_string(p.v0) + ", wm0=" + std::to_string(p.wm0) + ")";
      });

  py::class_<PointState>(mod, "PointState")
      .def_readonly("z", &PointState::z)
      .def_readonly("t", &PointState::t)
      .def_readonly("w", &PointState::w)
      .def_readonly("w_z", &PointState::w_z)
      .def_readonly("w_zz", &PointState::w_zz)
      .def_readonly("w_t", &PointState::w_t)
      .def_readonly("s", &PointState::s)
      .def_readonly("s_prime", &PointState::s_prime);

  py::class_<ChainSample>(mod, "ChainSample")
      .def_readonly("z", &ChainSample::z)
      .def_readonly("t", &ChainSample::t)
      .def_readonly("w", &ChainSample::w)
      .def_readonly("w_z", &ChainSample::w_z)
      .def_readonly("x", &ChainSample::x)
      .def_readonly("psi", &ChainSample::psi)
      .def_readonly("y", &ChainSample::y)
      .def_readonly("theta", &ChainSample::theta);

  py::class_<BoundaryCurves>(mod, "BoundaryCurves")
      .def_readonly("t", &BoundaryCurves::t)
      .def_readonly("s", &BoundaryCurves::s)
      .def_readonly("X0", &BoundaryCurves::X0)
      .def_readonly("X1", &BoundaryCurves::X1)
      .def_readonly("Y0", &BoundaryCurves::Y0)
      .def_readonly("Y1", &BoundaryCurves::Y1);

  py::class_<ClosedFormSolution>(mod, "ClosedFormSolution")
      .def_readonly("params", &ClosedFormSolution::params)
      .def_readonly("gamma", &ClosedFormSolution::gamma)
      .def_readonly("coeff_a", &ClosedFormSolution::coeff_a)
      .def_readonly("coeff_b", &ClosedFormSolution::coeff_b)
      .def("s", &ClosedFormSolution::s, py::arg("t"))
      .def("s_prime", &ClosedFormSolution::s_prime, py::arg("t"))
      .def("state", &ClosedFormSolution::eval_state, py::arg("z"), py::arg("t"));

  mod.def("solve_gamma", [](const SimilarityParams& p) { return solve_gamma(p); },
          py::arg("params"));
  mod.def("build_solution", [](const SimilarityParams& p) { return build_solution(p); },
          py::arg("params"));
  mod.def("chain_sample", &chain_sample, py::arg("solution"), py::arg("z"), py::arg("t"));
  mod.def("boundary_curves", &boundary_curves, py::arg("solution"), py::arg("t"));
  mod.def("reconstruct_w",
          [](const ClosedFormSolution& sol, double z, double t) {
            return reconstruct_w(sol, z, t, sol.params.sigma);
          },
          py::arg("solution"), py::arg("z"), py::arg("t"));
  mod.def("reconstruct_z",
          [](const ClosedFormSolution& sol, double x, double t) {
            return reconstruct_z(sol, x, t);
          },
          py::arg("solution"), py::arg("x"), py::arg("t"));

  mod.def("verify",
          [](const ClosedFormSolution& sol, const std::string& suite) {
            if (suite == "p1") return report_to_dict(verify_p1(sol));
            if (suite == "p2") return report_to_dict(verify_p2(sol));
            if (suite == "p3") return report_to_dict(verify_p3(sol));
            if (suite == "p4") return report_to_dict(verify_p4(sol));
            if (suite == "signs") return report_to_dict(verify_signs(sol));
            fail(ErrorCode::InvalidParams, "unknown suite '" + suite + "'");
          },
          py::arg("solution"), py::arg("suite"));
  mod.def("verify_convergence",
          [](const SimilarityParams& base, const std::vector<double>& h0s) {
            return report_to_dict(verify_convergence(base, h0s));
          },
          py::arg("params"), py::arg("h0_list"));

  mod.def("fd_solve",
          [](const SimilarityParams& p, int n_xi, double dt, double t0, double t_end) {
            fd::FdConfig cfg = fd::sqrt_t_config(p);
            cfg.n_xi = n_xi;
            cfg.dt = dt;
            cfg.t0 = t0;
            cfg.t_end = t_end;
            const fd::FdSolution sol = fd::fd_solve(cfg);
            py::dict d;
            d["xi"] = sol.xi;
            d["times"] = sol.times;
            d["s"] = sol.s_traj;
            d["s_prime"] = sol.s_prime_traj;
            d["w"] = sol.w_field;
            return d;
          },
          py::arg("params"), py::arg("n_xi") = 200, py::arg("dt") = 1e-4,
          py::arg("t0") = 0.25, py::arg("t_end") = 1.0);
  mod.def("fd_compare",
          [](const SimilarityParams& p, int n_xi, double dt, double t0, double t_end) {
            fd::FdConfig cfg = fd::sqrt_t_config(p);
            cfg.n_xi = n_xi;
            cfg.dt = dt;
            cfg.t0 = t0;
            cfg.t_end = t_end;
            return report_to_dict(fd::fd_compare(fd::fd_solve(cfg), build_solution(p)));
          },
          py::arg("params"), py::arg("n_xi") = 200, py::arg("dt") = 1e-4,
          py::arg("t0") = 0.25, py::arg("t_end") = 1.0);

  py::class_<mkdv::KinkParams>(mod, "KinkParams")
      .def(py::init([](double amp, int n_y, int n_t) {
             mkdv::KinkParams p;
             p.amp = amp;
             p.n_y = n_y;
             p.n_t = n_t;
             p.validate();
             return p;
           }),
           py::arg("amp") = 2.0, py::arg("n_y") = 400, py::arg("n_t") = 40)
      .def_readonly("amp", &mkdv::KinkParams::amp);
  mod.def("kink_residual", &mkdv::kink_equation_residual, py::arg("params"), py::arg("y"),
          py::arg("t"));
  mod.def("verify_casimir",
          [](const mkdv::KinkParams& p, double tol, bool reflect_time) {
            return report_to_dict(mkdv::verify_casimir(mkdv::hodograph_to_psi(p), tol,
                                                       reflect_time));
          },
          py::arg("params"), py::arg("tol") = 1e-3, py::arg("reflect_time") = true);

  mod.attr("__version__") = "0.1.0";
}
