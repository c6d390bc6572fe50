// Python bindings for the main operations: spectral solving, hypothesis
// validation, observability-constant estimation, control synthesis, forward
// simulation, and the acceptance suite.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavemem/hum.hpp"
#include "wavemem/ingham.hpp"
#include "wavemem/io.hpp"
#include "wavemem/kernel.hpp"
#include "wavemem/sim.hpp"
#include "wavemem/verify.hpp"

namespace py = pybind11;
using namespace wavemem;

namespace {

std::vector<std::pair<cplx, cplx>> expsum_terms(const ExpSum& f) {
  std::vector<std::pair<cplx, cplx>> out;
  for (const ExpTerm& t : f.terms()) out.emplace_back(t.amplitude, t.exponent);
  return out;
}

ExpSum expsum_from_terms(const std::vector<std::pair<cplx, cplx>>& terms) {
  ExpSum f;
  for (const auto& [a, mu] : terms) f.add_term(a, mu);
  return f;
}

}  // namespace

PYBIND11_MODULE(wavemem, m) {
  m.doc() = "Boundary-controllability laboratory for a wave-beam system with "
            "exponential memory";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError",
                                           PyExc_RuntimeError);
  py::register_exception<ClassificationError>(m, "ClassificationError",
                                              PyExc_RuntimeError);
  py::register_exception<ConditioningError>(m, "ConditioningError",
                                            PyExc_RuntimeError);
  py::register_exception<ControllabilityError>(m, "ControllabilityError",
                                               PyExc_RuntimeError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("beta", &ModelParams::beta)
      .def_readwrite("eta", &ModelParams::eta)
      .def_readwrite("A", &ModelParams::A)
      .def_readwrite("B", &ModelParams::B)
      .def_readwrite("N", &ModelParams::N)
      .def_readwrite("T", &ModelParams::T)
      .def("validate", &ModelParams::validate, py::arg("decoupled_ok") = false,
           py::arg("reachability") = false)
      .def("adjoint", &ModelParams::adjoint);

  py::class_<SpectralBranch>(m, "SpectralBranch")
      .def_readonly("n", &SpectralBranch::n)
      .def_readonly("lam", &SpectralBranch::lambda)
      .def_readonly("r", &SpectralBranch::r)
      .def_readonly("omega", &SpectralBranch::omega)
      .def_readonly("p", &SpectralBranch::p)
      .def_readonly("dev4", &SpectralBranch::dev4)
      .def_readonly("residuals", &SpectralBranch::residuals)
      .def("roots", &SpectralBranch::roots);

  py::class_<HypothesisReport>(m, "HypothesisReport")
      .def_readonly("gaps_increasing", &HypothesisReport::gaps_increasing)
      .def_readonly("im_p_vanishing", &HypothesisReport::im_p_vanishing)
      .def_readonly("gamma_hat", &HypothesisReport::gamma_hat)
      .def_readonly("alpha_hat", &HypothesisReport::alpha_hat)
      .def_readonly("n_prime", &HypothesisReport::n_prime)
      .def_readonly("distinct", &HypothesisReport::distinct)
      .def_readonly("a0_hat", &HypothesisReport::a0_hat)
      .def_readonly("all_pass", &HypothesisReport::all_pass);

  py::class_<FinalData>(m, "FinalData")
      .def(py::init<int>())
      .def_readwrite("alpha1", &FinalData::alpha1)
      .def_readwrite("rho1", &FinalData::rho1)
      .def_readwrite("alpha2", &FinalData::alpha2)
      .def_readwrite("rho2", &FinalData::rho2)
      .def("modes", &FinalData::modes)
      .def("sobolev_norm_sq", &FinalData::sobolev_norm_sq);

  m.def("solve_branches", &solve_branches, py::arg("params"));
  m.def("validate_hypotheses", &validate_hypotheses, py::arg("branches"),
        py::arg("params"));
  m.def("quintic_residual",
        [](const ModelParams& p, int n, cplx z) {
          return quintic_coeffs(p, n).relative_residual(z);
        });

  m.def("norm_equivalence_constants",
        [](double beta, double eta, double T, int trials, std::uint64_t seed) {
          const NormEquivalence ne =
              norm_equivalence_constants(ExpKernel(beta, eta), T, trials, seed);
          return std::make_pair(ne.c1_hat, ne.c2_hat);
        },
        py::arg("beta"), py::arg("eta"), py::arg("T"), py::arg("trials"),
        py::arg("seed"));

  m.def("estimate_inverse_constant",
        [](const std::vector<SpectralBranch>& branches, const ModelParams& p,
           int draws, double T, std::uint64_t seed, double gamma_hat) {
          return estimate_inverse_constant(branches, p, draws, T, seed,
                                           gamma_hat).value;
        });
  m.def("estimate_direct_constant",
        [](const std::vector<SpectralBranch>& branches, const ModelParams& p,
           int draws, double T, std::uint64_t seed, double gamma_hat) {
          return estimate_direct_constant(branches, p, draws, T, seed,
                                          gamma_hat).value;
        });

  m.def("hum_controls",
        [](const FinalData& target, const ModelParams& params) {
          const auto branches = solve_branches(params);
          GramSystem sys =
              assemble_gram(target.modes(), params.T, params, branches);
          solve_gram(sys, rhs_vector(target, target.modes()));
          const Controls ctl = synthesize_controls(sys);
          py::dict out;
          out["g1"] = expsum_terms(ctl.g1);
          out["g2"] = expsum_terms(ctl.g2);
          out["gram_min_eigenvalue"] = sys.min_eigenvalue;
          out["solve_residual"] = sys.solve_residual;
          return out;
        },
        py::arg("target"), py::arg("params"));

  m.def("simulate_controls",
        [](const std::vector<std::pair<cplx, cplx>>& g1_terms,
           const std::vector<std::pair<cplx, cplx>>& g2_terms,
           const ModelParams& params, int sim_modes, double dt,
           const FinalData& target) {
          const SimResult sim = run_to_T(expsum_from_terms(g1_terms),
                                         expsum_from_terms(g2_terms), params,
                                         sim_modes, dt);
          const ErrorReport rep = error_report(sim, target);
          py::dict out;
          out["u1"] = sim.u1;
          out["u1t"] = sim.u1t;
          out["u2"] = sim.u2;
          out["u2t"] = sim.u2t;
          out["combined_error"] = rep.combined;
          out["spillover_relative"] = rep.spillover_relative;
          return out;
        },
        py::arg("g1_terms"), py::arg("g2_terms"), py::arg("params"),
        py::arg("sim_modes"), py::arg("dt"), py::arg("target"));

  m.def("verify_all",
        [](const ModelParams& params, std::uint64_t seed) {
          const VerifyReport rep = verify_all(params, seed);
          return std::make_pair(rep.all_passed, rep.to_json().dump(2));
        },
        py::arg("params"), py::arg("seed"));

  m.def("parse_config", [](const std::string& text) {
    const ExperimentConfig cfg = parse_config_string(text);
    py::dict out;
    out["params"] = cfg.params;
    out["seed"] = cfg.seed;
    out["draws"] = cfg.draws;
    out["epsilon"] = cfg.epsilon;
    out["dt"] = cfg.dt;
    return out;
  });
}
