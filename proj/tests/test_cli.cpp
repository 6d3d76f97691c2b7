#include <algorithm>
#include <cmath>

#include "catch_amalgamated.hpp"
#include "cli_util.hpp"
#include "json.hpp"

using namespace clitest;

namespace {

fs::path write_spec(const fs::path& dir, const std::string& name, const std::string& text) {
  const auto p = dir / (name + ".cfg");
  std::ofstream(p) << text;
  return p;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

TEST_CASE("dry run prints the resolved configuration only", "[cli]") {
  const auto dir = fresh_dir("cli_dry");
  const auto log = dir / "log.txt";
  CHECK(run("--preset fig1c --dry-run --out " + (dir / "out").string(), log.string()) == 0);
  const std::string text = slurp(log);
  CHECK(text.find("fig1c_spectrum") != std::string::npos);
  CHECK(text.find("omega_points = 241") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out"));
  for (const char* sub : {"spectrum", "evolve", "optimize", "sweep"}) {
    const auto spec = write_spec(dir, "s", "n_qubits = 2\ngamma = 12\nkappa = 12\nomega = 6.23\nj = 0.001\nt_max = 1\nkind = tradeoff\ntargets = 0.5\n");
    CHECK(run(std::string(sub) + " --spec " + spec.string() + " --dry-run --out " + (dir / "out").string()) == 0);
  }
  CHECK_FALSE(fs::exists(dir / "out"));
}

TEST_CASE("spectrum of a single qubit", "[cli]") {
  const auto dir = fresh_dir("cli_spectrum");
  const auto active = write_spec(dir, "active", "n_qubits = 1\ngamma = 12\nkappa = 12\nomega = 1\nj = 0\nomega_min = 0\nomega_max = 12\nomega_points = 25\n");
  const auto passive = write_spec(dir, "passive", "n_qubits = 1\ngamma = 12\nkappa = 0\nomega = 1\nj = 0\nomega_min = 0.5\nomega_max = 12\nomega_points = 24\n");
  REQUIRE(run("spectrum --spec " + active.string() + " --out " + dir.string()) == 0);
  REQUIRE(run("spectrum --spec " + passive.string() + " --out " + dir.string()) == 0);
  const auto a = read_csv(find(dir, "active_", ".csv").at(0));
  CHECK(a.header == std::vector<std::string>{"omega", "re_0", "im_0", "re_1", "im_1"});
  for (const auto& r : a.rows) {
    if (r[0] >= 6.0) CHECK(std::max(std::abs(r[2]), std::abs(r[4])) < 1e-6);
    if (r[0] < 5.9) CHECK(std::max(std::abs(r[2]), std::abs(r[4])) > 0.1);
  }
  for (const auto& r : read_csv(find(dir, "passive_", ".csv").at(0)).rows) CHECK(std::max(r[2], r[4]) < 0.0);
  CHECK(find(dir, "active_", ".meta.json").size() == 1);
}

TEST_CASE("evolve runs", "[cli]") {
  const auto dir = fresh_dir("cli_evolve");
  const auto spec = write_spec(dir, "opt", "n_qubits = 2\ngamma = 12\nkappa = 12\nomega = 6.2281\nj = 0.001\nt_max = 4\nsamples = 4001\n");
  REQUIRE(run("evolve --spec " + spec.string() + " --out " + dir.string()) == 0);
  const auto t = read_csv(find(dir, "opt_", ".csv").at(0));
  const auto c = t.column("entanglement");
  const std::size_t k = argmax(c);
  CHECK(c[k] >= 0.999);
  CHECK(std::abs(t.column("time")[k] - 1.8) <= 0.05);
  for (const char* col : {"re_3", "im_3", "norm2", "fidelity", "bloch_x", "bloch_y", "bloch_z"}) CHECK_NOTHROW(t.column(col));

  REQUIRE(run("--preset s2 evolve --out " + dir.string()) == 0);
  const auto s2 = read_csv(find(dir, "s2_uncoupled_", ".csv").at(0));
  const auto x = s2.column("bloch_x"), y = s2.column("bloch_y"), z = s2.column("bloch_z");
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::sqrt(x[i] * x[i] + y[i] * y[i] + z[i] * z[i]) >= 0.999);

  const auto broken = write_spec(dir, "broken", "n_qubits = 1\ngamma = 12\nkappa = 12\nomega = 0\nj = 0\nt_max = 100\nsamples = 11\n");
  const auto log = dir / "overflow.txt";
  CHECK(run("evolve --spec " + broken.string() + " --out " + dir.string(), log.string()) == 1);
  CHECK(slurp(log).find("t = ") != std::string::npos);
}

TEST_CASE("hermitian three-qubit peak is far later than the active one", "[cli]") {
  const auto dir = fresh_dir("cli_fig3c");
  REQUIRE(run("--preset fig3c evolve --out " + dir.string()) == 0);
  const auto act = read_csv(find(dir, "fig3c_active_", ".csv").at(0));
  const auto herm = read_csv(find(dir, "fig3c_hermitian_", ".csv").at(0));
  const double ta = act.column("time")[argmax(act.column("entanglement"))];
  const double th = herm.column("time")[argmax(herm.column("entanglement"))];
  CAPTURE(ta, th);
  CHECK(th / ta >= 1e2);
}

TEST_CASE("optimize writes a JSON report", "[cli]") {
  const auto dir = fresh_dir("cli_optimize");
  REQUIRE(run("--preset fig2a optimize --out " + dir.string()) == 0);
  const auto report = nlohmann::json::parse(slurp(find(dir, "fig2a_optimum_", ".json").at(0)));
  CHECK(std::abs(report["omega_star"].get<double>() - 6.23) <= 0.05);
  CHECK(report["target_reached"].get<bool>());
  const auto unreachable = write_spec(dir, "zero_j", "n_qubits = 2\ngamma = 12\nkappa = 12\nomega = 6\nj = 0\ntarget = 0.5\nomega_points = 20\nt_points = 40\n");
  CHECK(run("optimize --spec " + unreachable.string() + " --out " + dir.string()) == 2);
}

TEST_CASE("trade-off and gain-loss sweeps", "[cli]") {
  const auto dir = fresh_dir("cli_sweep");
  REQUIRE(run("--preset fig1c sweep --out " + dir.string()) == 0);
  const auto passive = read_csv(find(dir, "fig1c_tradeoff_passive_", ".csv").at(0)).column("fidelity");
  const auto [lo, hi] = std::minmax_element(passive.begin(), passive.end());
  CHECK(std::log10(*hi / *lo) >= 10.0);

  REQUIRE(run("--preset fig2c --out " + dir.string()) == 0);
  CHECK(find(dir, "fig2c_tradeoff_r", ".csv").size() == 4);
  const auto gl = read_csv(find(dir, "fig2c_gainloss_", ".csv").at(0));
  const auto f = gl.column("fidelity");
  REQUIRE(f.size() == 4);
  for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] >= f[i - 1]);

  const auto dead = write_spec(dir, "dead", "n_qubits = 2\ngamma = 12\nkappa = 12\nomega = 6\nj = 0\nkind = tradeoff\ntargets = 0.9\nomega_points = 20\nt_points = 40\n");
  CHECK(run("sweep --spec " + dead.string() + " --out " + dir.string()) == 2);
}

TEST_CASE("bad input fails with a message", "[cli]") {
  const auto dir = fresh_dir("cli_errors");
  const auto bad = write_spec(dir, "bad", "n_qubits = 2\ngamma = -1\nomega = 1\nj = 0\nt_max = 1\n");
  const auto log = dir / "log.txt";
  CHECK(run("evolve --spec " + bad.string() + " --out " + dir.string(), log.string()) == 1);
  CHECK(slurp(log).find("error:") != std::string::npos);
  CHECK(run("evolve --out " + dir.string()) == 1);
  CHECK(run("--preset nope") == 1);
  CHECK(run("sweep --spec " + write_spec(dir, "kind", "n_qubits = 2\ngamma = 1\nomega = 1\nj = 0\nkind = nope\n").string()) == 1);
  CHECK(run("evolve --propagator euler --spec " + bad.string()) == 1);
}

TEST_CASE("propagator and sample overrides change the artifact", "[cli]") {
  const auto dir = fresh_dir("cli_override");
  const auto spec = write_spec(dir, "run", "n_qubits = 2\ngamma = 12\nkappa = 12\nomega = 6.23\nj = 0.001\nt_max = 2\n");
  REQUIRE(run("evolve --spec " + spec.string() + " --out " + dir.string() + " --samples 21") == 0);
  REQUIRE(run("evolve --spec " + spec.string() + " --out " + dir.string() + " --samples 21 --propagator expm") == 0);
  const auto files = find(dir, "run_", ".csv");
  REQUIRE(files.size() == 2);
  const auto a = read_csv(files[0]), b = read_csv(files[1]);
  REQUIRE(a.rows.size() == 21);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(std::abs(a.rows[i][9] - b.rows[i][9]) < 1e-9);
}
