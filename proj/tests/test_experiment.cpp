#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cssdec/experiment.hpp"

using namespace cssdec;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.generator = "surface";
  cfg.distance = 3;
  cfg.p_grid = {0.0, 0.12};
  cfg.trials = 60;
  cfg.seed = 99;
  return cfg;
}

}  // namespace

TEST_CASE("config parses from JSON and validates") {
  std::string text = R"({
    "code": {"generator": "toric", "d": 5},
    "noise": {"p": [0.1, 0.15], "q": 0.0},
    "rounds": 1,
    "trials": 50,
    "seed": 7,
    "engine": "embedded",
    "encoder": {"strict3": false}
  })";
  ExperimentConfig cfg = ExperimentConfig::from_json_string(text);
  CHECK(cfg.generator == "toric");
  CHECK(cfg.distance == 5);
  CHECK(cfg.p_grid.size() == 2);
  CHECK(cfg.trials == 50);

  CHECK_THROWS(ExperimentConfig::from_json_string(R"({"noise": {"p": 0.1}})"));
  CHECK_THROWS(ExperimentConfig::from_json_string(
      R"({"code": {"generator": "toric"}, "noise": {"p": 1.5}})"));
  CHECK_THROWS(ExperimentConfig::from_json_string(
      R"({"code": {"generator": "toric"}, "noise": {"p": 0.1}, "trials": 0})"));
}

TEST_CASE("p = 0 grid point gives p_L = 0 with a one-sided interval") {
  ExperimentConfig cfg = small_config();
  cfg.p_grid = {0.0};
  auto records = mc_sweep(cfg);
  REQUIRE(records.size() == 1);
  CHECK(records[0].failures == 0);
  CHECK(records[0].p_l == 0.0);
  CHECK(records[0].ci_low == 0.0);
  CHECK(records[0].ci_high > 0.0);
  CHECK(records[0].ci_high < 0.15);
}

TEST_CASE("sweeps are reproducible and resumable") {
  std::string path = "/tmp/cssdec-test-sweep.jsonl";
  std::remove(path.c_str());

  ExperimentConfig cfg = small_config();
  cfg.output = path;
  auto first = mc_sweep(cfg);
  REQUIRE(first.size() == 2);

  // Resume: nothing re-runs, identical records come back from the file.
  auto second = mc_sweep(cfg);
  REQUIRE(second.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(first[i].failures == second[i].failures);
    CHECK(first[i].p_l == second[i].p_l);
    CHECK(first[i].trials == second[i].trials);
  }

  // Partial file: drop the second record, the sweep recomputes only it.
  {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    in.close();
    std::ofstream out(path);
    out << line << "\n";
  }
  auto third = mc_sweep(cfg);
  REQUIRE(third.size() == 2);
  CHECK(third[1].failures == first[1].failures);
  std::remove(path.c_str());

  // A fresh run without any sink also matches: seeds are per (point, trial).
  cfg.output.clear();
  auto fourth = mc_sweep(cfg);
  CHECK(fourth[1].failures == first[1].failures);
}

TEST_CASE("trial fan-out does not change tallies") {
  ExperimentConfig cfg = small_config();
  cfg.p_grid = {0.12};
  cfg.trials = 40;
  auto serial = mc_sweep(cfg);
  cfg.jobs = 4;
  auto parallel = mc_sweep(cfg);
  CHECK(serial[0].failures == parallel[0].failures);
  CHECK(serial[0].solver_noisy == parallel[0].solver_noisy);
}

TEST_CASE("jsonl round trip is lossless") {
  ExperimentRecord rec;
  rec.code_name = "surface-d3";
  rec.n = 9;
  rec.k = 1;
  rec.d = 3;
  rec.p = 0.125;
  rec.q = 0.01;
  rec.rounds = 3;
  rec.trials = 1234;
  rec.failures = 77;
  rec.solver_noisy = 2;
  rec.p_l = 77.0 / 1234.0;
  rec.ci_low = 0.05;
  rec.ci_high = 0.08;
  rec.mean_seconds = 0.0012;
  rec.p50_seconds = 0.001;
  rec.p95_seconds = 0.002;
  rec.max_seconds = 0.004;
  rec.num_vars = 100;
  rec.num_clauses = 321;
  rec.actual_alpha = 3.21;
  rec.seed = 42;
  rec.point_index = 5;

  ExperimentRecord back = ExperimentRecord::from_json_line(rec.to_json_line());
  CHECK(back.code_name == rec.code_name);
  CHECK(back.p == rec.p);
  CHECK(back.failures == rec.failures);
  CHECK(back.ci_high == rec.ci_high);
  CHECK(back.max_seconds == rec.max_seconds);
  CHECK(back.point_index == rec.point_index);

  std::string path = "/tmp/cssdec-test-records.jsonl";
  write_records_jsonl(path, {rec, back});
  auto records = read_records_jsonl(path);
  REQUIRE(records.size() == 2);
  CHECK(records[0].to_json_line() == records[1].to_json_line());
  std::remove(path.c_str());
}

TEST_CASE("noise specification files") {
  CssCode code = gen_color_666(3);

  SUBCASE("uniform form") {
    NoiseModel nm = noise_from_json_string(R"({"p": 0.12, "q": 0.01})", code);
    CHECK(nm.px[0] == doctest::Approx(0.04));
    CHECK(nm.flip_priors()[3] == doctest::Approx(0.08));
    CHECK(nm.q_hz.size() == code.hz.rows());
    CHECK(nm.q_hz[0] == doctest::Approx(0.01));
  }

  SUBCASE("per-qubit arrays") {
    NoiseModel nm = noise_from_json_string(
        R"({"px": [0.1,0,0,0,0,0,0],
            "py": [0,0.2,0,0,0,0,0],
            "pz": 0.05,
            "q": 0.0})",
        code);
    CHECK(nm.px[0] == 0.1);
    CHECK(nm.py[1] == 0.2);
    CHECK(nm.pz[6] == 0.05);
  }

  SUBCASE("wrong array length is rejected") {
    CHECK_THROWS(noise_from_json_string(R"({"px": [0.1, 0.2], "py": 0, "pz": 0})", code));
  }
  SUBCASE("out-of-range probabilities are rejected") {
    CHECK_THROWS(noise_from_json_string(R"({"px": 0.7, "py": 0.4, "pz": 0.0})", code));
  }
}

TEST_CASE("csv export has a stable header and row per record") {
  ExperimentRecord rec;
  rec.code_name = "toric-d3";
  rec.trials = 10;
  std::ostringstream a, b;
  write_records_csv(a, {rec});
  write_records_csv(b, {rec});
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("code,n,k,d,p,q,rounds,trials,failures", 0) == 0);

  std::ostringstream empty;
  write_records_csv(empty, {});
  CHECK(empty.str().find("code,") == 0);  // header-only file is still valid
}
