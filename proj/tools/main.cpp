// Experiment front-end: config ingestion, subcommand dispatch, report
// emission.  JSON everywhere; CSV only for sampled time series.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wavemem/hum.hpp"
#include "wavemem/ingham.hpp"
#include "wavemem/io.hpp"
#include "wavemem/kernel.hpp"
#include "wavemem/sim.hpp"
#include "wavemem/verify.hpp"

namespace {

using wavemem::ordered_json;

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wavemem::InvalidInput("cannot open file: " + path);
  ordered_json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw wavemem::InvalidInput("cannot write file: " + path);
  out << text;
}

wavemem::ExperimentConfig load_config(const std::string& path) {
  if (path.empty()) return wavemem::ExperimentConfig{};
  return wavemem::parse_config(read_json_file(path));
}

// Optional worker-count cap; the current pipeline is single-threaded, so the
// value is validated and otherwise unused.
void check_thread_env() {
  const char* v = std::getenv("LAB_THREADS");
  if (v == nullptr) return;
  const int n = std::atoi(v);
  if (n < 1) {
    std::cerr << "warning: ignoring invalid LAB_THREADS='" << v << "'\n";
  }
}

int run_spectrum(const wavemem::ExperimentConfig& cfg, const std::string& out) {
  const auto branches = wavemem::solve_branches(cfg.params);
  const auto hyp = wavemem::validate_hypotheses(branches, cfg.params);
  ordered_json j;
  j["params"] = {{"beta", cfg.params.beta}, {"eta", cfg.params.eta},
                 {"A", cfg.params.A},       {"B", cfg.params.B},
                 {"N", cfg.params.N},       {"T", cfg.params.T}};
  j["branches"] = ordered_json::array();
  for (const auto& br : branches) j["branches"].push_back(wavemem::branch_to_json(br));
  j["hypotheses"] = {{"gaps_increasing", hyp.gaps_increasing},
                     {"im_p_vanishing", hyp.im_p_vanishing},
                     {"gamma_hat", hyp.gamma_hat},
                     {"alpha_hat", hyp.alpha_hat},
                     {"n_prime", hyp.n_prime},
                     {"distinct", hyp.distinct},
                     {"min_pair_distance", hyp.min_pair_distance},
                     {"a0_hat", hyp.a0_hat},
                     {"all_pass", hyp.all_pass}};
  write_text_file(out + "/spectrum.json", j.dump(2) + "\n");
  std::cout << "wrote " << out << "/spectrum.json ("
            << branches.size() << " modes, hypotheses "
            << (hyp.all_pass ? "pass" : "FAIL") << ")\n";
  return 0;
}

int run_ingham(const wavemem::ExperimentConfig& cfg, const std::string& report) {
  const auto branches = wavemem::solve_branches(cfg.params);
  const auto hyp = wavemem::validate_hypotheses(branches, cfg.params);
  const auto inv = wavemem::estimate_inverse_constant(
      branches, cfg.params, cfg.draws, cfg.params.T, cfg.seed, hyp.gamma_hat);
  const auto dir = wavemem::estimate_direct_constant(
      branches, cfg.params, cfg.draws, cfg.params.T, cfg.seed, hyp.gamma_hat);
  const auto bounds = wavemem::kernel_sum_bounds(branches, cfg.params.T,
                                                 cfg.epsilon, hyp.gamma_hat);

  std::string csv = "draw,inverse_ratio,direct_ratio\n";
  for (std::size_t i = 0; i < inv.ratios.size(); ++i) {
    csv += std::to_string(i) + "," + std::to_string(inv.ratios[i]) + "," +
           std::to_string(dir.ratios[i]) + "\n";
  }
  write_text_file(report + "/ingham_ratios.csv", csv);

  ordered_json j;
  j["T"] = cfg.params.T;
  j["modes"] = cfg.params.N;
  j["draws"] = cfg.draws;
  j["seed"] = cfg.seed;
  j["epsilon"] = cfg.epsilon;
  j["gamma_hat"] = hyp.gamma_hat;
  j["c1_hat"] = inv.value;
  j["c2_hat"] = dir.value;
  j["kernel_bounds_hold"] = bounds.holds;
  j["n0_hat"] = bounds.n0_hat;
  write_text_file(report + "/ingham_summary.json", j.dump(2) + "\n");
  std::cout << "c1_hat=" << inv.value << " c2_hat=" << dir.value << "\n";
  return 0;
}

int run_hum(const wavemem::ExperimentConfig& cfg, const std::string& target_file,
            const std::string& out) {
  const wavemem::FinalData target = wavemem::final_data_from_json(
      read_json_file(target_file), cfg.params.N);
  wavemem::ModelParams p = cfg.params;
  p.N = target.modes();
  const auto branches = wavemem::solve_branches(p);
  wavemem::GramSystem sys = wavemem::assemble_gram(p.N, p.T, p, branches);
  wavemem::solve_gram(sys, wavemem::rhs_vector(target, p.N));
  const wavemem::Controls ctl = wavemem::synthesize_controls(sys);

  ordered_json j;
  j["params"] = {{"beta", p.beta}, {"eta", p.eta}, {"A", p.A},
                 {"B", p.B},       {"N", p.N},     {"T", p.T}};
  j["target"] = wavemem::final_data_to_json(target);
  j["gram"] = {{"min_eigenvalue", sys.min_eigenvalue},
               {"max_eigenvalue", sys.max_eigenvalue},
               {"solve_residual", sys.solve_residual}};
  j["g1"] = wavemem::expsum_to_json(ctl.g1);
  j["g2"] = wavemem::expsum_to_json(ctl.g2);
  j["g1_norm_sq"] = ctl.g1_norm_sq;
  j["g2_norm_sq"] = ctl.g2_norm_sq;
  write_text_file(out + "/controls.json", j.dump(2) + "\n");

  std::string csv = "t,g1,g2\n";
  const int samples = 500;
  for (int i = 0; i <= samples; ++i) {
    const double t = p.T * i / samples;
    csv += std::to_string(t) + "," + std::to_string(ctl.g1.evaluate_real(t)) +
           "," + std::to_string(ctl.g2.evaluate_real(t)) + "\n";
  }
  write_text_file(out + "/controls_timeseries.csv", csv);
  std::cout << "wrote " << out << "/controls.json (gram min eig "
            << sys.min_eigenvalue << ")\n";
  return 0;
}

int run_simulate(const wavemem::ExperimentConfig& cfg,
                 const std::string& controls_file, int sim_modes,
                 const std::string& out) {
  const ordered_json cj = read_json_file(controls_file);
  const wavemem::ExpSum g1 = wavemem::expsum_from_json(cj.at("g1"));
  const wavemem::ExpSum g2 = wavemem::expsum_from_json(cj.at("g2"));
  wavemem::ModelParams p = cfg.params;
  if (cj.contains("params")) {
    const auto& cp = cj.at("params");
    p.beta = cp.at("beta").get<double>();
    p.eta = cp.at("eta").get<double>();
    p.A = cp.at("A").get<double>();
    p.B = cp.at("B").get<double>();
    p.N = cp.at("N").get<int>();
    p.T = cp.at("T").get<double>();
  }
  if (sim_modes <= 0) sim_modes = 2 * p.N;
  const double dt = cfg.dt > 0.0 ? cfg.dt : p.T / 20000.0;
  const int stride = std::max(1, static_cast<int>(std::lround(p.T / dt)) / 200);
  const wavemem::SimResult sim =
      wavemem::run_to_T(g1, g2, p, sim_modes, dt, stride);

  std::string csv = "t";
  for (int n = 1; n <= sim_modes; ++n) csv += ",energy_" + std::to_string(n);
  csv += "\n";
  for (std::size_t row = 0; row < sim.sample_times.size(); ++row) {
    csv += std::to_string(sim.sample_times[row]);
    for (int n = 0; n < sim_modes; ++n) {
      const double l = static_cast<double>(n + 1) * (n + 1);
      const std::size_t i = static_cast<std::size_t>(n);
      // Modal energy of the lifted variables (kinetic + potential, both blocks).
      const double e = sim.sample_a[row][i] * sim.sample_a[row][i] * l +
                       sim.sample_m[row][i] * sim.sample_m[row][i];
      csv += "," + std::to_string(e);
    }
    csv += "\n";
  }
  write_text_file(out + "/sim_energies.csv", csv);

  ordered_json j;
  j["sim_modes"] = sim_modes;
  j["dt"] = dt;
  j["final"] = {{"u1", sim.u1}, {"u1t", sim.u1t}, {"u2", sim.u2},
                {"u2t", sim.u2t}};
  if (cj.contains("target")) {
    const wavemem::FinalData target =
        wavemem::final_data_from_json(cj.at("target"));
    const wavemem::ErrorReport rep = wavemem::error_report(sim, target);
    j["errors"] = {{"u1_L2", rep.err_u1},
                   {"u1t_Hm1", rep.err_u1t},
                   {"u2_H10", rep.err_u2},
                   {"u2t_Hm1", rep.err_u2t},
                   {"combined", rep.combined},
                   {"spillover_relative", rep.spillover_relative}};
    std::cout << "combined relative error " << rep.combined << "\n";
  }
  write_text_file(out + "/final_errors.json", j.dump(2) + "\n");
  return 0;
}

int run_verify_all(const wavemem::ExperimentConfig& cfg, const std::string& out) {
  const wavemem::VerifyReport rep = wavemem::verify_all(cfg.params, cfg.seed);
  for (const auto& c : rep.criteria) {
    std::cout << (c.passed ? "PASS" : "FAIL") << " criterion " << c.id << ": "
              << c.name << "\n";
  }
  if (!out.empty()) write_text_file(out, rep.to_json().dump(2) + "\n");
  std::cout << (rep.all_passed ? "all criteria passed" : "FAILURES present")
            << "\n";
  return rep.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  check_thread_env();
  CLI::App app{"Numerical laboratory for boundary controllability of a "
               "wave-beam system with exponential memory"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", report_dir = "out";
  std::string target_file, controls_file, verify_out;
  int modes = 0, draws = 0, sim_modes = 0;
  double T = 0.0, epsilon = 0.0, dt = 0.0;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto* sp = app.add_subcommand("spectrum", "solve spectral branches");
  sp->add_option("--config", config_path, "JSON config file");
  sp->add_option("--out", out_dir, "output directory");

  auto* ig = app.add_subcommand("ingham", "estimate observability constants");
  ig->add_option("--config", config_path, "JSON config file");
  ig->add_option("--T", T, "time horizon override");
  ig->add_option("--modes", modes, "mode count override");
  ig->add_option("--draws", draws, "Monte-Carlo draw count");
  ig->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
    seed_set = true;
  });
  ig->add_option("--epsilon", epsilon, "gap-margin parameter in (0,1)");
  ig->add_option("--report", report_dir, "report directory");

  auto* hm = app.add_subcommand("hum", "synthesize boundary controls");
  hm->add_option("--config", config_path, "JSON config file");
  hm->add_option("--target-file", target_file, "JSON final-data target")
      ->required();
  hm->add_option("--modes", modes, "mode count override");
  hm->add_option("--T", T, "time horizon override");
  hm->add_option("--out", out_dir, "output directory");

  auto* sm = app.add_subcommand("simulate", "forward-simulate under controls");
  sm->add_option("--config", config_path, "JSON config file");
  sm->add_option("--controls-file", controls_file, "controls JSON (hum output)")
      ->required();
  sm->add_option("--modes", modes, "control mode count override");
  sm->add_option("--sim-modes", sim_modes, "simulation mode count");
  sm->add_option("--dt", dt, "time step");
  sm->add_option("--out", out_dir, "output directory");

  auto* va = app.add_subcommand("verify-all", "run the acceptance suite");
  va->add_option("--config", config_path, "JSON config file");
  va->add_option("--out", verify_out, "verdict JSON path");

  CLI11_PARSE(app, argc, argv);

  try {
    wavemem::ExperimentConfig cfg = load_config(config_path);
    if (T > 0.0) cfg.params.T = T;
    if (modes > 0) cfg.params.N = modes;
    if (draws > 0) cfg.draws = draws;
    if (epsilon > 0.0) cfg.epsilon = epsilon;
    if (dt > 0.0) cfg.dt = dt;
    if (seed_set) cfg.seed = seed;
    cfg.params.validate();

    if (sp->parsed()) return run_spectrum(cfg, out_dir);
    if (ig->parsed()) return run_ingham(cfg, report_dir);
    if (hm->parsed()) return run_hum(cfg, target_file, out_dir);
    if (sm->parsed()) return run_simulate(cfg, controls_file, sim_modes, out_dir);
    if (va->parsed()) return run_verify_all(cfg, verify_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
