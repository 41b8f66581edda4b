#include "cssdec/decoder.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "cssdec/external_solver.hpp"

namespace cssdec {

namespace {

// Feasible starting point: a GF(2) particular solution of H'v = s', improved
// by greedy kernel moves, then completed over the auxiliary variables.
std::vector<std::uint8_t> warm_start_values(const WcnfFormula& f, const BitMatrix& hp,
                                            const BitVec& sdiff) {
  auto particular = hp.solve(sdiff);
  if (!particular) return {};
  BitVec v = std::move(*particular);

  const auto& w = f.decode_weights;
  auto kernel = hp.kernel_basis();
  for (int pass = 0; pass < 64; ++pass) {
    bool improved = false;
    for (const auto& g : kernel) {
      double delta = 0.0;
      for (auto i : g.indices()) delta += v.get(i) ? -w[i] : w[i];
      if (delta < -1e-15) {
        v.xor_with(g);
        improved = true;
      }
    }
    if (!improved) break;
  }

  // Decode variables follow the block-column order e^1, r^1, ...; map them
  // onto the e-then-r id layout, then fill chain auxiliaries by simulation.
  const VariableMap& vm = f.var_map;
  std::vector<std::uint8_t> values(static_cast<std::size_t>(f.num_vars) + 1, 0);
  const int period = vm.n + vm.m;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (!v.get(c)) continue;
    int t = static_cast<int>(c) / period;
    int off = static_cast<int>(c) % period;
    int var = off < vm.n ? vm.e_var(t, off) : vm.r_var(t, off - vm.n);
    values[var] = 1;
  }
  for (const auto& chain : f.chains) {
    if (chain.support.size() < 3) continue;  // padding-only auxiliaries stay false
    int acc = values[chain.support[0]] ^ values[chain.support[1]];
    std::size_t ai = 0;
    values[chain.aux[ai++]] = static_cast<std::uint8_t>(acc);
    for (std::size_t t = 2; t + 1 < chain.support.size(); ++t) {
      acc ^= values[chain.support[t]];
      values[chain.aux[ai++]] = static_cast<std::uint8_t>(acc);
    }
  }
  return values;
}

}  // namespace

DecodeResult decode_sector(const BitMatrix& h, const BitVec& s_or_sdiff,
                           const std::vector<double>& flip_priors,
                           const std::vector<double>& meas_priors, int rounds,
                           const DecodeOptions& options) {
  auto t0 = std::chrono::steady_clock::now();

  WcnfFormula f = build_spacetime_wcnf(h, s_or_sdiff, flip_priors, meas_priors, rounds,
                                       options.encode);
  BitMatrix hp = build_spacetime_matrix(h, rounds);

  Assignment solved;
  if (options.engine == EngineChoice::external) {
    std::string cmd = options.solver_command.empty() ? default_solver_command()
                                                     : options.solver_command;
    if (cmd.empty())
      throw std::invalid_argument("decode_sector: external engine needs a solver command");
    solved = run_external(f, cmd, options.budget, {.scale = options.quant_scale});
  } else {
    std::vector<std::uint8_t> hint;
    SolveOptions sopt;
    if (options.warm_start) {
      hint = warm_start_values(f, hp, s_or_sdiff);
      if (!hint.empty()) sopt.warm_start = &hint;
    }
    solved = solve_exact(f, options.budget, sopt);
  }

  DecodeResult res;
  res.status = solved.status;
  res.nodes = solved.nodes;
  res.num_vars = static_cast<std::size_t>(f.num_vars);
  res.num_clauses = f.clause_count();
  res.data_correction = BitVec(h.cols());
  res.meas_correction = BitVec(f.var_map.r_count);

  if (solved.status == SolveStatus::hard_unsat)
    throw std::runtime_error("decode_sector: hard clauses unsatisfiable (internal error: "
                             "syndrome equations always admit a solution)");

  if (!solved.values.empty()) {
    const VariableMap& vm = f.var_map;
    BitVec v_dec(hp.cols());
    const int period = vm.n + vm.m;
    for (int t = 0; t < rounds; ++t) {
      BitVec round_e(vm.n);
      for (int j = 0; j < vm.n; ++j) {
        if (solved.values[vm.e_var(t, j)]) {
          round_e.set(j, true);
          res.data_correction.flip(j);
          v_dec.set(static_cast<std::size_t>(t) * period + j, true);
        }
      }
      res.round_corrections.push_back(std::move(round_e));
    }
    for (int t = 0; t + 1 < rounds; ++t)
      for (int i = 0; i < vm.m; ++i)
        if (solved.values[vm.r_var(t, i)]) {
          res.meas_correction.set(static_cast<std::size_t>(t) * vm.m + i, true);
          v_dec.set(static_cast<std::size_t>(t) * period + vm.n + i, true);
        }

    if (hp.mul(v_dec) != s_or_sdiff)
      throw std::runtime_error("decode_sector: correction violates the syndrome equations");

    double direct = 0.0;
    for (int var = 1; var <= vm.e_count + vm.r_count; ++var)
      if (solved.values[var]) direct += f.decode_weights[var - 1];
    res.objective = direct;
    if (std::abs((solved.objective - f.soft_offset) - direct) > 1e-6)
      throw std::runtime_error("decode_sector: objective bookkeeping mismatch");
  }

  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

TrialOutcome run_trial(const CssCode& code, const NoiseModel& noise, int rounds,
                       std::uint64_t seed, const DecodeOptions& options) {
  if (rounds < 1) throw std::invalid_argument("run_trial: rounds must be >= 1");
  Rng rng(seed);

  const std::size_t n = code.n;
  const std::size_t mx = code.hx.rows();
  const std::size_t mz = code.hz.rows();

  // Draw order per round: Pauli errors, then Hz measurement flips, then Hx
  // measurement flips. The order is part of the seeding contract.
  BitVec cum_ex(n), cum_ez(n);
  std::vector<BitVec> sx_hist, sz_hist;
  for (int t = 0; t < rounds; ++t) {
    PauliSample ps = sample_pauli(noise, rng);
    cum_ex.xor_with(ps.ex);
    cum_ez.xor_with(ps.ez);

    BitVec sx = code.hz.mul(cum_ex);
    BitVec sz = code.hx.mul(cum_ez);
    if (t + 1 < rounds) {
      for (std::size_t i = 0; i < mz; ++i)
        if (rng.bernoulli(noise.q_hz.empty() ? 0.0 : noise.q_hz[i])) sx.flip(i);
      for (std::size_t i = 0; i < mx; ++i)
        if (rng.bernoulli(noise.q_hx.empty() ? 0.0 : noise.q_hx[i])) sz.flip(i);
    }
    sx_hist.push_back(std::move(sx));
    sz_hist.push_back(std::move(sz));
  }

  auto concat_diffs = [rounds](const std::vector<BitVec>& hist, std::size_t m) {
    BitVec out(m * rounds);
    for (int t = 0; t < rounds; ++t) {
      for (std::size_t i = 0; i < m; ++i) {
        bool bit = hist[t].get(i);
        if (t > 0) bit ^= hist[t - 1].get(i);
        if (bit) out.set(static_cast<std::size_t>(t) * m + i, true);
      }
    }
    return out;
  };

  TrialOutcome out;
  auto decode_one = [&](const BitMatrix& h, const std::vector<BitVec>& hist,
                        const std::vector<double>& priors, const std::vector<double>& q,
                        const BitVec& truth, const BitMatrix& logicals, bool& failed,
                        double& objective, SolveStatus& status, BitVec& residual) {
    BitVec sdiff = concat_diffs(hist, h.rows());
    DecodeResult dec = decode_sector(h, sdiff, priors, q, rounds, options);
    out.seconds += dec.seconds;
    status = dec.status;
    objective = dec.objective;
    residual = BitVec(code.n);
    bool logical = false;
    if (dec.status == SolveStatus::optimum || dec.status == SolveStatus::satisfiable_bound) {
      residual = truth;
      residual.xor_with(dec.data_correction);
      for (std::size_t i = 0; i < logicals.rows() && !logical; ++i)
        if (logicals.row_as_bitvec(i).dot(residual)) logical = true;
    }
    if (dec.status != SolveStatus::optimum) out.solver_clean = false;
    // Non-optimal terminations count as failures; solver_clean reports them
    // separately so accuracy and speed are not conflated.
    failed = logical || dec.status != SolveStatus::optimum;
  };

  // X errors flip Hz checks and are caught by the Z logicals; vice versa.
  decode_one(code.hz, sx_hist, noise.flip_priors(), noise.q_hz, cum_ex, code.lz, out.failed_x,
             out.objective_x, out.status_x, out.residual_x);
  decode_one(code.hx, sz_hist, noise.phase_priors(), noise.q_hx, cum_ez, code.lx, out.failed_z,
             out.objective_z, out.status_z, out.residual_z);
  return out;
}

}  // namespace cssdec
