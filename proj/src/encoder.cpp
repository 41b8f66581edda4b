#include "cssdec/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cssdec {

double log_likelihood_weight(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0)
    throw std::invalid_argument("invalid-prior: p = " + std::to_string(p));
  p = std::clamp(p, kPriorClamp, 1.0 - kPriorClamp);
  return std::log((1.0 - p) / p);
}

namespace {

// a = x ^ y, four clauses per Tab-1.
void emit_xor_definition(std::vector<Clause>& out, int x, int y, int a) {
  out.push_back({{-x, -y, -a}});
  out.push_back({{x, y, -a}});
  out.push_back({{-x, y, a}});
  out.push_back({{x, -y, a}});
}

// s = a ^ e. Strict form spends one padding auxiliary to stay 3-SAT; the
// compact form uses the two-literal equivalence directly.
void emit_final_equation(std::vector<Clause>& out, int a, int e, int s_bit, bool strict,
                         VarAlloc& alloc, RowChain* chain) {
  if (strict) {
    int c = alloc.alloc();
    if (chain) chain->aux.push_back(c);
    if (s_bit == 0) {
      out.push_back({{-a, e, c}});
      out.push_back({{-a, e, -c}});
      out.push_back({{a, -e, c}});
      out.push_back({{a, -e, -c}});
    } else {
      out.push_back({{a, e, c}});
      out.push_back({{a, e, -c}});
      out.push_back({{-a, -e, c}});
      out.push_back({{-a, -e, -c}});
    }
  } else {
    if (s_bit == 0) {
      out.push_back({{-a, e}});
      out.push_back({{a, -e}});
    } else {
      out.push_back({{a, e}});
      out.push_back({{-a, -e}});
    }
  }
}

// Pads a forced literal to four 3-literal clauses with two fresh auxiliaries.
void emit_padded_unit(std::vector<Clause>& out, int lit, VarAlloc& alloc, RowChain* chain) {
  int b1 = alloc.alloc();
  int b2 = alloc.alloc();
  if (chain) {
    chain->aux.push_back(b1);
    chain->aux.push_back(b2);
  }
  out.push_back({{lit, b1, b2}});
  out.push_back({{lit, -b1, b2}});
  out.push_back({{lit, b1, -b2}});
  out.push_back({{lit, -b1, -b2}});
}

}  // namespace

std::vector<Clause> encode_xor_chain(const std::vector<int>& support_vars, int s_bit,
                                     VarAlloc& alloc, const EncodeOptions& options,
                                     RowChain* chain_out) {
  if (support_vars.empty()) throw std::invalid_argument("invalid-check: empty support");
  if (s_bit != 0 && s_bit != 1) throw std::invalid_argument("invalid-check: s_bit not binary");
  if (chain_out) {
    chain_out->support = support_vars;
    chain_out->aux.clear();
    chain_out->s_bit = s_bit;
  }

  std::vector<Clause> clauses;
  const std::size_t w = support_vars.size();
  if (w == 1) {
    int lit = s_bit ? support_vars[0] : -support_vars[0];
    if (options.strict3)
      emit_padded_unit(clauses, lit, alloc, chain_out);
    else
      clauses.push_back({{lit}});
    return clauses;
  }
  if (w == 2) {
    emit_final_equation(clauses, support_vars[0], support_vars[1], s_bit, options.strict3, alloc,
                        chain_out);
    return clauses;
  }

  // a_1 = x_1 ^ x_2, a_t = a_{t-1} ^ x_{t+1}, then s = a_{w-2} ^ x_w.
  int prev = alloc.alloc();
  if (chain_out) chain_out->aux.push_back(prev);
  emit_xor_definition(clauses, support_vars[0], support_vars[1], prev);
  for (std::size_t t = 2; t + 1 < w; ++t) {
    int next = alloc.alloc();
    if (chain_out) chain_out->aux.push_back(next);
    emit_xor_definition(clauses, prev, support_vars[t], next);
    prev = next;
  }
  emit_final_equation(clauses, prev, support_vars[w - 1], s_bit, options.strict3, alloc,
                      chain_out);
  return clauses;
}

std::vector<std::pair<double, Clause>> encode_soft(const std::vector<double>& priors,
                                                   const std::vector<int>& vars, VarAlloc& alloc,
                                                   const EncodeOptions& options,
                                                   double* offset_out) {
  if (priors.size() != vars.size())
    throw std::invalid_argument("encode_soft: priors/vars size mismatch");
  std::vector<std::pair<double, Clause>> soft;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    double w = log_likelihood_weight(priors[j]);
    if (w == 0.0) continue;  // p = 1/2: the variable is free
    int lit = w >= 0 ? -vars[j] : vars[j];
    double cost = std::abs(w);
    if (w < 0 && offset_out) *offset_out += cost;
    if (options.strict3) {
      int b1 = alloc.alloc();
      int b2 = alloc.alloc();
      soft.push_back({cost, {{lit, b1, b2}}});
      soft.push_back({cost, {{lit, -b1, b2}}});
      soft.push_back({cost, {{lit, b1, -b2}}});
      soft.push_back({cost, {{lit, -b1, -b2}}});
    } else {
      soft.push_back({cost, {{lit}}});
    }
  }
  return soft;
}

BitMatrix build_spacetime_matrix(const BitMatrix& h, int rounds) {
  if (rounds < 1) throw std::invalid_argument("build_spacetime_matrix: rounds must be >= 1");
  if (rounds == 1) return h;
  const std::size_t n = h.cols();
  const std::size_t m = h.rows();
  const std::size_t period = n + m;  // one e block plus one r block
  const std::size_t total_cols = n * rounds + m * (rounds - 1);

  BitMatrix out(0, 0);
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(m * rounds);
  for (int t = 0; t < rounds; ++t) {
    const std::size_t e_off = static_cast<std::size_t>(t) * period;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::uint32_t> row;
      if (t > 0) row.push_back(static_cast<std::uint32_t>((t - 1) * period + n + i));
      for (auto c : h.row(i)) row.push_back(static_cast<std::uint32_t>(e_off + c));
      if (t + 1 < rounds) row.push_back(static_cast<std::uint32_t>(e_off + n + i));
      rows.push_back(std::move(row));
    }
  }
  return BitMatrix::from_rows(total_cols, std::move(rows));
}

WcnfFormula build_spacetime_wcnf(const BitMatrix& h, const BitVec& s_diff_concat,
                                 const std::vector<double>& flip_priors,
                                 const std::vector<double>& meas_priors, int rounds,
                                 const EncodeOptions& options) {
  const int n = static_cast<int>(h.cols());
  const int m = static_cast<int>(h.rows());
  if (rounds < 1) throw std::invalid_argument("build_spacetime_wcnf: rounds must be >= 1");
  if (s_diff_concat.size() != static_cast<std::size_t>(m) * rounds)
    throw std::invalid_argument("build_spacetime_wcnf: syndrome length mismatch");
  if (flip_priors.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("build_spacetime_wcnf: flip prior size mismatch");
  if (rounds > 1 && meas_priors.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("build_spacetime_wcnf: measurement prior size mismatch");
  for (int i = 0; i < m; ++i)
    if (h.row_weight(i) == 0)
      throw std::invalid_argument("invalid-check: zero-weight row " + std::to_string(i));

  WcnfFormula f;
  VariableMap& vm = f.var_map;
  vm.n = n;
  vm.m = m;
  vm.rounds = rounds;
  vm.e_begin = 1;
  vm.e_count = n * rounds;
  vm.r_begin = vm.e_begin + vm.e_count;
  vm.r_count = m * (rounds - 1);
  vm.a_begin = vm.r_begin + vm.r_count;

  // Columns of the block matrix run e^1, r^1, e^2, ..., e^L; variable ids
  // keep all e literals first, then all r literals.
  const int period = n + m;
  auto col_to_var = [&](std::uint32_t c) {
    int t = static_cast<int>(c) / period;
    int off = static_cast<int>(c) % period;
    return off < n ? vm.e_var(t, off) : vm.r_var(t, off - n);
  };

  VarAlloc alloc{vm.a_begin};
  BitMatrix hp = build_spacetime_matrix(h, rounds);
  f.chains.reserve(hp.rows());
  for (std::size_t i = 0; i < hp.rows(); ++i) {
    std::vector<int> support;
    support.reserve(hp.row_weight(i));
    for (auto c : hp.row(i)) support.push_back(col_to_var(c));
    RowChain chain;
    auto clauses =
        encode_xor_chain(support, s_diff_concat.get(i) ? 1 : 0, alloc, options, &chain);
    for (auto& cl : clauses) f.hard.push_back(std::move(cl));
    f.chains.push_back(std::move(chain));
  }
  vm.a_count = alloc.next_id - vm.a_begin;
  vm.b_begin = alloc.next_id;

  // Soft clauses in decode-variable order: every e_j^t with weight w_j, then
  // every r_i^t with weight u_i.
  std::vector<double> priors;
  std::vector<int> decode_vars;
  priors.reserve(vm.e_count + vm.r_count);
  for (int t = 0; t < rounds; ++t)
    for (int j = 0; j < n; ++j) {
      priors.push_back(flip_priors[j]);
      decode_vars.push_back(vm.e_var(t, j));
    }
  for (int t = 0; t + 1 < rounds; ++t)
    for (int i = 0; i < m; ++i) {
      priors.push_back(meas_priors[i]);
      decode_vars.push_back(vm.r_var(t, i));
    }
  f.soft = encode_soft(priors, decode_vars, alloc, options, &f.soft_offset);
  vm.b_count = alloc.next_id - vm.b_begin;
  f.num_vars = alloc.next_id - 1;

  f.decode_weights.resize(priors.size());
  for (std::size_t j = 0; j < priors.size(); ++j)
    f.decode_weights[j] = log_likelihood_weight(priors[j]);
  return f;
}

WcnfFormula build_capacity_wcnf(const BitMatrix& h, const BitVec& s,
                                const std::vector<double>& flip_priors,
                                const EncodeOptions& options) {
  return build_spacetime_wcnf(h, s, flip_priors, {}, 1, options);
}

namespace {

DensityReport analytic_density(const BitMatrix& h, int rounds) {
  const double n = static_cast<double>(h.cols());
  const double m = static_cast<double>(h.rows());
  const double el = rounds;
  double sum_w = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (h.row_weight(i) < 2)
      throw std::invalid_argument("unsupported-weight: analytic density needs row weight >= 2");
    sum_w += static_cast<double>(h.row_weight(i));
  }
  DensityReport rep;
  rep.alpha_3sat = (4.0 * sum_w - 8.0 * m) / (n + sum_w - m);
  rep.alpha_max3sat = (4.0 * n + 4.0 * sum_w - 8.0 * m) / (3.0 * n + sum_w - m);
  rep.alpha_3sat_chain = (4.0 * sum_w - 4.0 * m) / (n + sum_w - m);
  rep.alpha_3sat_spacetime =
      (4.0 * el * sum_w) / (n * el + m * (el - 1.0) + el * (sum_w + m));
  rep.alpha_max3sat_spacetime = (4.0 * n * el + 4.0 * m * (el - 1.0) + 4.0 * el * sum_w) /
                                (3.0 * n * el + 3.0 * m * (el - 1.0) + el * (sum_w + m));
  return rep;
}

}  // namespace

DensityReport clause_density(const BitMatrix& h, int rounds) {
  DensityReport rep = analytic_density(h, rounds);
  double worst = std::max({rep.alpha_3sat, rep.alpha_max3sat, rep.alpha_3sat_chain,
                           rep.alpha_3sat_spacetime, rep.alpha_max3sat_spacetime});
  rep.easy_phase = worst < kHardPhaseAlpha;
  return rep;
}

DensityReport clause_density(const BitMatrix& h, int rounds, const WcnfFormula& emitted) {
  DensityReport rep = analytic_density(h, rounds);
  rep.actual_clauses = emitted.clause_count();
  rep.actual_vars = static_cast<std::size_t>(emitted.num_vars);
  rep.actual_alpha =
      static_cast<double>(rep.actual_clauses) / static_cast<double>(rep.actual_vars);
  rep.easy_phase = rep.actual_alpha < kHardPhaseAlpha;
  return rep;
}

WcnfFormula quantize_weights(const WcnfFormula& formula, std::int64_t scale) {
  if (scale < 1) throw std::invalid_argument("quantize_weights: scale must be >= 1");
  WcnfFormula out = formula;
  long double total = 0.0L;
  bool clamped = false;
  for (auto& [w, clause] : out.soft) {
    double q = std::round(w * static_cast<double>(scale));
    if (q < 1.0) {
      q = 1.0;  // originally positive weights never vanish
      clamped = true;
    }
    w = q;
    total += static_cast<long double>(q);
  }
  if (total + 1.0L > static_cast<long double>(std::numeric_limits<std::int64_t>::max()))
    throw std::overflow_error("quantize_weights: hard-clause sentinel overflows int64");
  out.quant_scale = scale;
  out.quant_clamped = clamped;
  std::size_t weighted_vars = 0;
  for (double w : formula.decode_weights)
    if (w != 0.0) ++weighted_vars;
  out.quant_distortion_bound = static_cast<double>(weighted_vars) * 0.5 / static_cast<double>(scale);
  return out;
}

}  // namespace cssdec
