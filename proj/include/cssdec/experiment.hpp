#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cssdec/css_code.hpp"
#include "cssdec/decoder.hpp"

namespace cssdec {

struct ExperimentConfig {
  // Either a built-in generator ("toric", "surface", "color") with distance,
  // or a code file.
  std::string generator;
  std::size_t distance = 3;
  std::string code_file;
  std::string code_format = "matrix-text";

  std::vector<double> p_grid;
  double q = 0.0;
  int rounds = 1;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;

  std::string engine = "embedded";  // or "external"
  std::string solver_command;
  bool strict3 = false;
  std::int64_t scale = 10000;
  double solver_wall_seconds = 0.0;  // 0 = unbounded
  int jobs = 1;

  std::string output;  // JSONL sink; enables resume when set

  static ExperimentConfig from_json_string(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
  void validate() const;

  CssCode build_code() const;
  DecodeOptions decode_options() const;
};

struct ExperimentRecord {
  std::string code_name;
  std::size_t n = 0, k = 0, d = 0;
  double p = 0.0, q = 0.0;
  int rounds = 1;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t solver_noisy = 0;  // trials ending without a proven optimum
  double p_l = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  double mean_seconds = 0.0, p50_seconds = 0.0, p95_seconds = 0.0, max_seconds = 0.0;
  std::size_t num_vars = 0, num_clauses = 0;
  double actual_alpha = 0.0;
  std::uint64_t seed = 0;
  std::size_t point_index = 0;

  std::string to_json_line() const;
  static ExperimentRecord from_json_line(const std::string& line);
};

// Deterministic per-trial seed, independent of execution order.
std::uint64_t trial_seed(std::uint64_t master, std::size_t point_index, std::size_t trial_index);

// Noise specification file: `{"p": 0.1, "q": 0.0}` for uniform depolarizing
// noise, or per-qubit arrays `{"px": [...], "py": [...], "pz": [...],
// "q": 0.01}`. Sizes are validated against the code.
NoiseModel noise_from_json_string(const std::string& text, const CssCode& code);
NoiseModel noise_from_json_file(const std::string& path, const CssCode& code);

// Monte-Carlo sweep over the p grid. Completed grid points found in the
// output file are skipped, so interrupted sweeps resume to identical records.
std::vector<ExperimentRecord> mc_sweep(const ExperimentConfig& config);

std::vector<ExperimentRecord> read_records_jsonl(const std::string& path);
void write_records_jsonl(const std::string& path, const std::vector<ExperimentRecord>& records);
void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

}  // namespace cssdec
