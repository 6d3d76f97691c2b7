#include "presets.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace ptq::cli {

namespace {

const std::string kTwoActive = "n_qubits = 2\ngamma = 12\nkappa = 12\nomega = 6.23\nj = 0.001\n";
const std::string kTwoPassive = "n_qubits = 2\ngamma = 12\nkappa = 0\nomega = 3.15\nj = 0.001\n";
const std::string kThreeActive = "n_qubits = 3\ngamma = 12\nkappa = 12\nomega = 6.58\nj = 0.001\n";
const std::string kThreePassive = "n_qubits = 3\ngamma = 12\nkappa = 0\nomega = 3.42\nj = 0.001\n";

const std::string kTwoActiveGrid = "omega_min = 4\nomega_max = 9\nt_min = 0\nt_max = 4\n";
const std::string kTwoPassiveGrid = "omega_min = 1\nomega_max = 6\nt_min = 0\nt_max = 4\n";
const std::string kThreeActiveGrid = "omega_min = 5\nomega_max = 9\nt_min = 0\nt_max = 15\ntarget = 0.999\n";
const std::string kThreePassiveGrid =
    "omega_min = 2.5\nomega_max = 5\nt_min = 0\nt_max = 25\nt_points = 800\ntarget = 0.999\n";

std::string prefixed(const std::string& prefix, const std::string& block) {
  std::string out;
  std::size_t start = 0;
  while (start < block.size()) {
    const auto end = block.find('\n', start);
    out += prefix + block.substr(start, end - start) + "\n";
    start = end + 1;
  }
  return out;
}

std::vector<PresetRun> gainloss_curves(const std::string& prefix) {
  std::vector<PresetRun> runs;
  const std::pair<const char*, const char*> ratios[] = {{"0.7", "8.4"}, {"0.8", "9.6"}, {"0.9", "10.8"}, {"1.0", "12"}};
  for (const auto& [r, kappa] : ratios) {
    runs.push_back({"sweep", prefix + "_tradeoff_r" + r,
                    "n_qubits = 2\ngamma = 12\nkappa = " + std::string(kappa) +
                        "\nomega = 6.23\nj = 0.001\nkind = tradeoff\n"
                        "targets = 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 1.0\n"
                        "omega_min = 1\nomega_max = 9\nt_min = 0\nt_max = 4\n"});
  }
  return runs;
}

const std::map<std::string, std::vector<PresetRun>>& table() {
  static const std::map<std::string, std::vector<PresetRun>> presets = [] {
    std::map<std::string, std::vector<PresetRun>> m;
    const std::string targets = "targets = 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 1.0\n";

    m["fig1b"] = {{"sweep", "fig1b_acceleration",
                   "kind = acceleration\nn_qubits = 2\ngamma = 12\nj_values = 0.001, 0.002, 0.005, 0.01\n" +
                       prefixed("active_", kTwoActiveGrid) + prefixed("passive_", kTwoPassiveGrid)}};

    m["fig1c"] = {
        {"spectrum", "fig1c_spectrum", kTwoActive + "omega_min = 0\nomega_max = 12\nomega_points = 241\n"},
        {"sweep", "fig1c_tradeoff_active", kTwoActive + "kind = tradeoff\n" + targets + kTwoActiveGrid},
        {"sweep", "fig1c_tradeoff_passive", kTwoPassive + "kind = tradeoff\n" + targets + kTwoPassiveGrid},
    };

    m["fig2a"] = {
        {"sweep", "fig2a_map",
         kTwoActive + "kind = map\n" + kTwoActiveGrid + "omega_points = 101\nt_points = 201\n"},
        {"optimize", "fig2a_optimum", kTwoActive + kTwoActiveGrid},
    };

    m["fig2b"] = {{"sweep", "fig2b_envelope",
                   kTwoActive + "kind = envelope\nomega_min = 0\nomega_max = 9\nomega_points = 181\n"
                                "t_min = 0\nt_max = 4\nt_points = 400\n"}};

    m["fig2c"] = {{"sweep", "fig2c_gainloss",
                   kTwoActive + "kind = gainloss\nratios = 0.7, 0.8, 0.9, 1.0\n"
                                "omega_min = 1\nomega_max = 9\nt_min = 0\nt_max = 4\n"}};
    for (auto& r : gainloss_curves("fig2c")) m["fig2c"].push_back(r);

    const std::string deltas2 = "deltas = -1.2, -0.9, -0.6, -0.3, -0.1, 0, 0.1, 0.3, 0.6, 0.9, 1.2\n";
    m["fig2d"] = {
        {"sweep", "fig2d_detuning_active", kTwoActive + "kind = detuning\n" + deltas2 + kTwoActiveGrid},
        {"sweep", "fig2d_detuning_passive", kTwoPassive + "kind = detuning\n" + deltas2 + kTwoPassiveGrid},
    };

    m["fig3a"] = {{"sweep", "fig3a_acceleration",
                   "kind = acceleration\nn_qubits = 3\ngamma = 12\nj_values = 0.001, 0.002\n" +
                       prefixed("active_", kThreeActiveGrid) + prefixed("passive_", kThreePassiveGrid)}};

    m["fig3b"] = {{"sweep", "fig3b_gainloss",
                   kThreeActive + "kind = gainloss\nratios = 0.5, 0.6, 0.7, 0.8, 0.9, 1.0\n"
                                  "omega_min = 4.5\nomega_max = 9\nt_min = 0\nt_max = 20\nt_points = 800\n"
                                  "target = 0.99\n"}};

    m["fig3c"] = {
        {"evolve", "fig3c_active", kThreeActive + "t_max = 15\nsamples = 1501\n"},
        {"evolve", "fig3c_passive", kThreePassive + "t_max = 25\nsamples = 2501\n"},
        {"evolve", "fig3c_hermitian",
         "n_qubits = 3\ngamma = 0\nkappa = 0\nomega = 6.58\nj = 0.001\nt_max = 3500\nsamples = 7001\n"},
        {"sweep", "fig3c_analytic", kThreeActive + "kind = analytic\nt_min = 0.1\nt_max = 15\nsamples = 1490\n"},
    };

    m["s1"] = {
        {"evolve", "s1_active", kTwoActive + "t_max = 4\nsamples = 401\n"},
        {"evolve", "s1_passive", kTwoPassive + "t_max = 4\nsamples = 401\n"},
        {"sweep", "s1_analytic", kTwoActive + "kind = analytic\nt_min = 0.1\nt_max = 3\nsamples = 291\n"},
        {"sweep", "s1_broken",
         kTwoActive + "kind = broken\nomegas = 0, 1, 2, 3, 4, 5, 5.5, 5.9\nt_final_factor = 50\nsamples = 2000\n"},
    };

    m["s2"] = {
        {"spectrum", "s2_spectrum", kThreeActive + "omega_min = 0\nomega_max = 12\nomega_points = 241\n"},
        {"evolve", "s2_uncoupled",
         "n_qubits = 3\ngamma = 12\nkappa = 12\nomega = 6.58\nj = 0\nt_max = 3\nsamples = 301\nbloch_qubit = 0\n"},
    };

    m["s3"] = {{"sweep", "s3_gainloss",
                kTwoActive + "kind = gainloss\nratios = 0, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0\n"
                             "omega_min = 1\nomega_max = 9\nt_min = 0\nt_max = 4\n"}};

    m["s4"] = {
        {"sweep", "s4_strong_two",
         kTwoActive + "kind = strong\nj_values = 0.001, 0.01, 0.1\nomega_min = 4\nomega_max = 12\nt_min = 0\n"
                      "t_max = 4\n"},
        {"sweep", "s4_strong_three",
         kThreeActive + "kind = strong\nj_values = 0.001, 0.01, 0.1\nomega_min = 5\nomega_max = 12\nt_min = 0\n"
                        "t_max = 15\nt_points = 600\ntarget = 0.99\n"},
    };

    m["s5"] = {
        {"sweep", "s5_detuning_active", kThreeActive + "kind = detuning\n" + deltas2 + kThreeActiveGrid},
        {"sweep", "s5_detuning_passive", kThreePassive + "kind = detuning\n" + deltas2 + kThreePassiveGrid},
    };

    m["s6"] = {{"sweep", "s6_asymmetric",
                "kind = asymmetric\nn_qubits = 3\nj = 0.001\nt_max = 15\nsets = 4\n"
                "set0.gamma = 12\nset0.kappa = 12\nset0.omega = 6.58\n"
                "set1.gamma = 12, 10, 12\nset1.kappa = 12, 10, 12\nset1.omega = 6.58, 5.682992169623322, 6.58\n"
                "set2.gamma = 12, 10, 12\nset2.kappa = 12, 10, 12\nset2.omega = 6.58\n"
                "set3.gamma = 12, 10, 8\nset3.kappa = 12, 10, 8\n"
                "set3.omega = 6.58, 5.682992169623322, 4.826634438198111\n"}};
    return m;
  }();
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : table()) names.push_back(k);
  return names;
}

std::vector<PresetRun> preset_runs(const std::string& name) {
  const auto it = table().find(name);
  if (it == table().end()) throw std::invalid_argument("unknown preset '" + name + "'");
  return it->second;
}

}  // namespace ptq::cli
