#pragma once

#include <vector>

#include "cssdec/bit_matrix.hpp"
#include "cssdec/wcnf.hpp"

namespace cssdec {

struct EncodeOptions {
  // Strict mode emits exactly-3-literal clauses everywhere: padded final
  // parity equations and four padded copies of each soft clause. Compact
  // mode uses the unpadded two-literal final equations and one unit soft
  // clause per variable; it changes clause counts but never the optimum.
  bool strict3 = true;
};

// Priors are clamped into [kPriorClamp, 1 - kPriorClamp] before taking
// w = ln((1-p)/p); p = 0.5 yields weight zero and no soft clause.
inline constexpr double kPriorClamp = 1e-12;
double log_likelihood_weight(double p);

struct VarAlloc {
  int next_id = 1;
  int alloc() { return next_id++; }
};

// Hard clauses whose satisfying assignments project exactly onto
// { x over support : xor(x) = s_bit }. Chain auxiliaries are drawn from
// `alloc` in order; the padding auxiliary (strict mode) comes last.
std::vector<Clause> encode_xor_chain(const std::vector<int>& support_vars, int s_bit,
                                     VarAlloc& alloc, const EncodeOptions& options,
                                     RowChain* chain_out = nullptr);

// Weighted soft clauses for the given decode variables. Positive weight
// penalizes assigning the variable true; negative weight (p > 1/2) penalizes
// false by |w|. `offset_out` accumulates sum of |w| over negative weights so
// that violated-cost = sum w_j x_j + offset.
std::vector<std::pair<double, Clause>> encode_soft(const std::vector<double>& priors,
                                                   const std::vector<int>& vars, VarAlloc& alloc,
                                                   const EncodeOptions& options,
                                                   double* offset_out);

// Single-round decoding instance: hard XOR chains for every row of H against
// syndrome s, soft clauses from the flip priors.
WcnfFormula build_capacity_wcnf(const BitMatrix& h, const BitVec& s,
                                const std::vector<double>& flip_priors,
                                const EncodeOptions& options = {});

// Block parity matrix over L measurement rounds: row block t carries H on
// data block t and identities on measurement blocks t-1 and t. Columns are
// ordered e^1, r^1, e^2, ..., r^{L-1}, e^L. L = 1 returns H itself.
BitMatrix build_spacetime_matrix(const BitMatrix& h, int rounds);

// Repeated-measurement instance over syndrome differences s'. For L = 1 the
// output is byte-identical to build_capacity_wcnf.
WcnfFormula build_spacetime_wcnf(const BitMatrix& h, const BitVec& s_diff_concat,
                                 const std::vector<double>& flip_priors,
                                 const std::vector<double>& meas_priors, int rounds,
                                 const EncodeOptions& options = {});

// Analytic densities from check weights (requires every weight >= 2) plus,
// when a formula is supplied, counts from the emitted instance.
DensityReport clause_density(const BitMatrix& h, int rounds);
DensityReport clause_density(const BitMatrix& h, int rounds, const WcnfFormula& emitted);

// Integer weights for WCNF interchange: w -> round(w * scale), clamped up to
// 1 for positive inputs. Throws when the hard-clause sentinel would overflow.
WcnfFormula quantize_weights(const WcnfFormula& formula, std::int64_t scale);

}  // namespace cssdec
