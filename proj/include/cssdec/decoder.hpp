#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cssdec/css_code.hpp"
#include "cssdec/encoder.hpp"
#include "cssdec/noise.hpp"
#include "cssdec/solver.hpp"

namespace cssdec {

enum class EngineChoice { embedded, external };

struct DecodeOptions {
  EncodeOptions encode{.strict3 = false};  // compact keeps the embedded search small
  EngineChoice engine = EngineChoice::embedded;
  std::string solver_command;  // external engine: template with {wcnf}
  SolverBudget budget;
  std::int64_t quant_scale = 10000;  // external interchange only
  bool warm_start = true;
};

struct DecodeResult {
  BitVec data_correction;                  // e_dec folded over rounds, length n
  std::vector<BitVec> round_corrections;   // e^t per round
  BitVec meas_correction;                  // r literals, m*(L-1) bits
  double objective = 0.0;                  // sum w_j e_j (+ sum u_i r_i)
  SolveStatus status = SolveStatus::timeout;
  double seconds = 0.0;
  std::uint64_t nodes = 0;
  std::size_t num_vars = 0;
  std::size_t num_clauses = 0;
};

// Most-likely-error decoding of one sector: encode, solve, extract and fold
// the error literals. For L = 1, `s_or_sdiff` is the syndrome; for L > 1 it
// is the concatenated syndrome differences of length m*L.
DecodeResult decode_sector(const BitMatrix& h, const BitVec& s_or_sdiff,
                           const std::vector<double>& flip_priors,
                           const std::vector<double>& meas_priors, int rounds,
                           const DecodeOptions& options = {});

struct TrialOutcome {
  bool failed_x = false;
  bool failed_z = false;
  bool solver_clean = true;  // both sectors reached a proven optimum
  BitVec residual_x, residual_z;
  double objective_x = 0.0, objective_z = 0.0;
  SolveStatus status_x = SolveStatus::timeout, status_z = SolveStatus::timeout;
  double seconds = 0.0;

  bool failed() const { return failed_x || failed_z; }
};

// Samples errors for `rounds` measurement rounds, decodes the X sector
// (Hz with p_flip = px+py) and the Z sector (Hx with pz+py) independently,
// and evaluates logical failure of the residuals against the cumulative
// error. Deterministic given (code, noise, rounds, seed).
TrialOutcome run_trial(const CssCode& code, const NoiseModel& noise, int rounds,
                       std::uint64_t seed, const DecodeOptions& options = {});

}  // namespace cssdec
