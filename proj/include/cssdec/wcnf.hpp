#pragma once

#include <cstdint>
#include <vector>

namespace cssdec {

// Signed literals: +v is variable v, -v its negation; variable ids start at 1.
struct Clause {
  std::vector<int> lits;
};

// Deterministic id layout, contiguous blocks in this order: data-error
// literals e (n*L), measurement-error literals r (m*(L-1)), parity-chain
// auxiliaries a, soft padding auxiliaries b (2 per weighted variable in
// strict mode).
struct VariableMap {
  int n = 0;  // data qubits
  int m = 0;  // checks per round
  int rounds = 1;
  int e_begin = 1;
  int e_count = 0;
  int r_begin = 0;
  int r_count = 0;
  int a_begin = 0;
  int a_count = 0;
  int b_begin = 0;
  int b_count = 0;

  int num_vars() const { return e_count + r_count + a_count + b_count; }
  int e_var(int t, int j) const { return e_begin + t * n + j; }         // t in [0, rounds)
  int r_var(int t, int i) const { return r_begin + t * m + i; }        // t in [0, rounds-1)
  bool is_e(int v) const { return v >= e_begin && v < e_begin + e_count; }
  bool is_r(int v) const { return r_count > 0 && v >= r_begin && v < r_begin + r_count; }
};

// Per-check chain layout kept for warm starts and debugging: the variable
// ids in ascending column order plus the auxiliary ids (padding last).
struct RowChain {
  std::vector<int> support;
  std::vector<int> aux;
  int s_bit = 0;
};

struct WcnfFormula {
  int num_vars = 0;
  std::vector<Clause> hard;                        // infinite weight
  std::vector<std::pair<double, Clause>> soft;     // weight > 0
  VariableMap var_map;
  std::vector<RowChain> chains;

  // w per decode variable (e then r ranges), signed as ln((1-p)/p); zero for
  // free variables. The MaxSAT violated-soft cost equals
  // sum_j w_j x_j + soft_offset for any assignment of the decode variables.
  std::vector<double> decode_weights;
  double soft_offset = 0.0;

  // Set by quantize_weights.
  std::int64_t quant_scale = 0;
  double quant_distortion_bound = 0.0;
  bool quant_clamped = false;

  std::size_t clause_count() const { return hard.size() + soft.size(); }
};

// Clause density analytics (hard / MaxSAT, capacity / repeated-measurement
// forms) next to counts from an actually emitted formula.
struct DensityReport {
  double alpha_3sat = 0.0;             // hard clauses only, single round
  double alpha_max3sat = 0.0;          // hard + soft, single round
  double alpha_3sat_spacetime = 0.0;   // hard, L rounds
  double alpha_max3sat_spacetime = 0.0;
  double alpha_3sat_chain = 0.0;       // hard count with 4(w-1) clauses per check
  double actual_alpha = 0.0;           // counted from an emitted formula
  std::size_t actual_clauses = 0;
  std::size_t actual_vars = 0;
  bool easy_phase = false;             // below the 3-SAT transition at 4.2
};

inline constexpr double kHardPhaseAlpha = 4.2;

}  // namespace cssdec
