#include <filesystem>

#include "catch_amalgamated.hpp"
#include "ptq/config.hpp"
#include "ptq/io.hpp"

using namespace ptq;

TEST_CASE("key-value parsing", "[config]") {
  const auto cfg = KeyValueConfig::parse_string("# header\n n_qubits = 3 \ngamma = 12 # loss\nomega=6.58, 5, 4\n\n");
  CHECK(cfg.get_double("n_qubits") == 3.0);
  CHECK(cfg.get_doubles("omega") == std::vector<double>{6.58, 5.0, 4.0});
  CHECK_FALSE(cfg.contains("kappa"));
  CHECK_THROWS_AS(cfg.get_double("omega"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.get_string("kappa"), std::invalid_argument);
  CHECK_THROWS_AS(KeyValueConfig::parse_string("a = 1\na = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(KeyValueConfig::parse_string("no equals sign\n"), std::invalid_argument);
  CHECK_THROWS_AS(KeyValueConfig::parse_string("a = 1x\n").get_double("a"), std::invalid_argument);
  CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/spec.cfg"), std::runtime_error);
}

TEST_CASE("system specs from configuration", "[config]") {
  const auto spec = spec_from_config(KeyValueConfig::parse_string("n_qubits = 3\ngamma = 12\nomega = 6.58, 5, 4\nj = 0.001\n"));
  REQUIRE(spec.size() == 3);
  CHECK(spec.qubits[2].omega == 4.0);
  CHECK(spec.qubits[1].gamma == 12.0);
  CHECK(spec.qubits[0].kappa == 0.0);
  CHECK(spec.qubits[0].delta == 0.0);
  CHECK(spec.coupling_j == 0.001);
  CHECK_THROWS_AS(spec_from_config(KeyValueConfig::parse_string("n_qubits = 2\ngamma = 1, 2, 3\nomega = 1\nj = 0\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(spec_from_config(KeyValueConfig::parse_string("n_qubits = 2.5\ngamma = 1\nomega = 1\nj = 0\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(spec_from_config(KeyValueConfig::parse_string("n_qubits = 9\ngamma = 1\nomega = 1\nj = 0\n")),
                  std::invalid_argument);
}

TEST_CASE("configuration round trip is exact", "[config]") {
  SystemSpec s = SystemSpec::uniform(2, {12.0, 0.1 + 0.2, 6.23, -1.0 / 3.0}, 1e-3);
  s.qubits[1].omega = 5.682992169623322;
  KeyValueConfig cfg;
  spec_to_config(s, cfg);
  const auto back = spec_from_config(KeyValueConfig::parse_string(cfg.to_string()));
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(back.qubits[k].gamma == s.qubits[k].gamma);
    CHECK(back.qubits[k].kappa == s.qubits[k].kappa);
    CHECK(back.qubits[k].omega == s.qubits[k].omega);
    CHECK(back.qubits[k].delta == s.qubits[k].delta);
  }
  CHECK(back.coupling_j == s.coupling_j);
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(12.0) == "12");
}

TEST_CASE("content hashes and artifact files", "[config]") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
  CHECK(artifact_stem("run", "a") == "run_af63dc4c8601ec8c");
  CHECK(artifact_stem("run", "a") != artifact_stem("run", "b"));

  const auto dir = std::filesystem::temp_directory_path() / "ptq_io_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  write_text_file(dir / "x.csv", "a,b\n1,2\n");
  CHECK(read_text_file(dir / "x.csv") == "a,b\n1,2\n");
  CHECK_THROWS_AS(read_text_file(dir / "missing.csv"), std::runtime_error);
  std::filesystem::remove_all(dir.parent_path());
}
