#pragma once

#include <vector>

#include "cssdec/bit_matrix.hpp"
#include "cssdec/css_code.hpp"
#include "cssdec/rng.hpp"

namespace cssdec {

// Per-qubit Pauli priors and per-check measurement flip priors. Immutable
// after construction; sized to a code.
struct NoiseModel {
  std::vector<double> px, py, pz;  // size n
  std::vector<double> q_hx;        // per row of Hx (Z-syndrome measurements)
  std::vector<double> q_hz;        // per row of Hz (X-syndrome measurements)

  std::size_t num_qubits() const { return px.size(); }

  // Bit-flip prior p_j = px + py feeding the Hz decoding problem.
  std::vector<double> flip_priors() const;
  // Phase-flip prior pz + py feeding the Hx decoding problem.
  std::vector<double> phase_priors() const;

  void validate() const;  // throws on out-of-range or inconsistent sizes
};

// Depolarizing channel: px = py = pz = p/3 on every qubit, measurement flips
// with probability q on every check.
NoiseModel uniform_depolarizing(const CssCode& code, double p, double q = 0.0);
NoiseModel uniform_depolarizing(std::size_t n, double p);

struct PauliSample {
  BitVec ex;  // bit-flip component (X or Y occurred)
  BitVec ez;  // phase-flip component (Z or Y occurred)
};

PauliSample sample_pauli(const NoiseModel& noise, Rng& rng);

// One sector's syndrome history under the phenomenological model: fresh data
// errors accumulate each round; all but the last measurement may flip.
struct SpaceTimeSample {
  std::vector<BitVec> e;       // fresh data errors, rounds 1..L
  std::vector<BitVec> r;       // measurement flips, rounds 1..L-1
  std::vector<BitVec> s;       // noisy syndromes, rounds 1..L
  std::vector<BitVec> s_diff;  // s'[1] = s[1], s'[t] = s[t-1] xor s[t]
  BitVec cumulative_error;     // xor of all fresh errors
};

BitVec syndrome(const BitMatrix& h, const BitVec& e);

SpaceTimeSample sample_spacetime(const BitMatrix& h, const std::vector<double>& flip_priors,
                                 const std::vector<double>& meas_priors, int rounds, Rng& rng);

}  // namespace cssdec
