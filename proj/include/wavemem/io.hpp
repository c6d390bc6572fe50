#pragma once

// JSON (de)serialization: experiment configuration with strict unknown-key
// rejection, exponential-sum term lists, final-data coefficient blocks, and
// the spectrum/ingham/hum report payloads.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavemem/expsum.hpp"
#include "wavemem/modal.hpp"
#include "wavemem/spectrum.hpp"

namespace wavemem {

using ordered_json = nlohmann::ordered_json;

struct ExperimentConfig {
  ModelParams params;
  std::uint64_t seed = 20260823ULL;
  int draws = 1000;
  double epsilon = 0.1;
  double dt = 0.0;  // 0 = default T/20000
};

// Parse a config document; every key must be known and the physical
// invariants are re-validated.
inline ExperimentConfig parse_config(const ordered_json& j) {
  static const std::vector<std::string> known = {
      "beta", "eta", "A", "B", "N", "T", "seed", "draws", "epsilon", "dt"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const std::string& k : known) ok = ok || item.key() == k;
    if (!ok)
      throw InvalidInput("config: unknown key '" + item.key() + "'");
  }
  ExperimentConfig cfg;
  if (j.contains("beta")) cfg.params.beta = j.at("beta").get<double>();
  if (j.contains("eta")) cfg.params.eta = j.at("eta").get<double>();
  if (j.contains("A")) cfg.params.A = j.at("A").get<double>();
  if (j.contains("B")) cfg.params.B = j.at("B").get<double>();
  if (j.contains("N")) cfg.params.N = j.at("N").get<int>();
  if (j.contains("T")) cfg.params.T = j.at("T").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("draws")) cfg.draws = j.at("draws").get<int>();
  if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
  if (j.contains("dt")) cfg.dt = j.at("dt").get<double>();
  cfg.params.validate();
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw InvalidInput("config: epsilon must lie in (0,1)");
  if (cfg.draws < 1) throw InvalidInput("config: draws >= 1");
  if (cfg.dt < 0.0) throw InvalidInput("config: dt >= 0");
  return cfg;
}

inline ExperimentConfig parse_config_string(const std::string& text) {
  return parse_config(ordered_json::parse(text));
}

inline ordered_json expsum_to_json(const ExpSum& f) {
  ordered_json arr = ordered_json::array();
  for (const ExpTerm& t : f.terms()) {
    arr.push_back({t.amplitude.real(), t.amplitude.imag(), t.exponent.real(),
                   t.exponent.imag()});
  }
  return arr;
}

inline ExpSum expsum_from_json(const ordered_json& arr) {
  ExpSum f;
  for (const auto& term : arr) {
    if (!term.is_array() || term.size() != 4)
      throw InvalidInput("exponential sum: each term needs 4 numbers");
    f.add_term(cplx(term[0].get<double>(), term[1].get<double>()),
               cplx(term[2].get<double>(), term[3].get<double>()));
  }
  return f;
}

inline ordered_json final_data_to_json(const FinalData& d) {
  ordered_json j;
  j["alpha1"] = d.alpha1;
  j["rho1"] = d.rho1;
  j["alpha2"] = d.alpha2;
  j["rho2"] = d.rho2;
  return j;
}

inline FinalData final_data_from_json(const ordered_json& j, int N = 0) {
  static const std::vector<std::string> keys = {"alpha1", "rho1", "alpha2",
                                                "rho2"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const std::string& k : keys) ok = ok || item.key() == k;
    if (!ok) throw InvalidInput("final data: unknown key '" + item.key() + "'");
  }
  std::vector<double> a1 = j.at("alpha1").get<std::vector<double>>();
  std::vector<double> r1 = j.at("rho1").get<std::vector<double>>();
  std::vector<double> a2 = j.at("alpha2").get<std::vector<double>>();
  std::vector<double> r2 = j.at("rho2").get<std::vector<double>>();
  if (a1.size() != r1.size() || a1.size() != a2.size() || a1.size() != r2.size())
    throw InvalidInput("final data: coefficient arrays must share one length");
  int modes = static_cast<int>(a1.size());
  if (N > 0) modes = std::max(modes, N);
  FinalData d(modes);
  for (std::size_t i = 0; i < a1.size(); ++i) {
    d.alpha1[i] = a1[i];
    d.rho1[i] = r1[i];
    d.alpha2[i] = a2[i];
    d.rho2[i] = r2[i];
  }
  return d;
}

inline ordered_json branch_to_json(const SpectralBranch& br) {
  ordered_json j;
  j["n"] = br.n;
  j["lambda"] = br.lambda;
  j["r"] = br.r;
  j["omega"] = {br.omega.real(), br.omega.imag()};
  j["p"] = {br.p.real(), br.p.imag()};
  j["dev4"] = {br.dev4.real(), br.dev4.imag()};
  j["residuals"] = br.residuals;
  return j;
}

}  // namespace wavemem
