#include "cssdec/noise.hpp"

#include <stdexcept>

namespace cssdec {

std::vector<double> NoiseModel::flip_priors() const {
  std::vector<double> p(px.size());
  for (std::size_t j = 0; j < px.size(); ++j) p[j] = px[j] + py[j];
  return p;
}

std::vector<double> NoiseModel::phase_priors() const {
  std::vector<double> p(pz.size());
  for (std::size_t j = 0; j < pz.size(); ++j) p[j] = pz[j] + py[j];
  return p;
}

void NoiseModel::validate() const {
  if (px.size() != py.size() || px.size() != pz.size())
    throw std::invalid_argument("NoiseModel: px/py/pz size mismatch");
  for (std::size_t j = 0; j < px.size(); ++j) {
    if (px[j] < 0 || py[j] < 0 || pz[j] < 0 || px[j] + py[j] + pz[j] > 1.0)
      throw std::invalid_argument("NoiseModel: Pauli priors out of range at qubit " +
                                  std::to_string(j));
  }
  for (double q : q_hx)
    if (q < 0 || q >= 1) throw std::invalid_argument("NoiseModel: q out of range");
  for (double q : q_hz)
    if (q < 0 || q >= 1) throw std::invalid_argument("NoiseModel: q out of range");
}

NoiseModel uniform_depolarizing(std::size_t n, double p) {
  if (p < 0 || p >= 1) throw std::invalid_argument("uniform_depolarizing: p must be in [0, 1)");
  NoiseModel nm;
  nm.px.assign(n, p / 3.0);
  nm.py.assign(n, p / 3.0);
  nm.pz.assign(n, p / 3.0);
  return nm;
}

NoiseModel uniform_depolarizing(const CssCode& code, double p, double q) {
  if (q < 0 || q >= 1) throw std::invalid_argument("uniform_depolarizing: q must be in [0, 1)");
  NoiseModel nm = uniform_depolarizing(code.n, p);
  nm.q_hx.assign(code.hx.rows(), q);
  nm.q_hz.assign(code.hz.rows(), q);
  return nm;
}

PauliSample sample_pauli(const NoiseModel& noise, Rng& rng) {
  const std::size_t n = noise.num_qubits();
  PauliSample s{BitVec(n), BitVec(n)};
  for (std::size_t j = 0; j < n; ++j) {
    double u = rng.uniform();
    if (u < noise.px[j]) {
      s.ex.set(j, true);
    } else if (u < noise.px[j] + noise.py[j]) {
      s.ex.set(j, true);
      s.ez.set(j, true);
    } else if (u < noise.px[j] + noise.py[j] + noise.pz[j]) {
      s.ez.set(j, true);
    }
  }
  return s;
}

BitVec syndrome(const BitMatrix& h, const BitVec& e) { return h.mul(e); }

SpaceTimeSample sample_spacetime(const BitMatrix& h, const std::vector<double>& flip_priors,
                                 const std::vector<double>& meas_priors, int rounds, Rng& rng) {
  if (rounds < 1) throw std::invalid_argument("sample_spacetime: need at least one round");
  const std::size_t n = h.cols();
  const std::size_t m = h.rows();
  if (flip_priors.size() != n) throw std::invalid_argument("sample_spacetime: prior size mismatch");

  SpaceTimeSample out;
  out.cumulative_error = BitVec(n);
  for (int t = 0; t < rounds; ++t) {
    BitVec fresh(n);
    for (std::size_t j = 0; j < n; ++j)
      if (rng.bernoulli(flip_priors[j])) fresh.set(j, true);
    out.cumulative_error.xor_with(fresh);
    out.e.push_back(std::move(fresh));

    BitVec syn = h.mul(out.cumulative_error);
    if (t + 1 < rounds) {  // the last measurement round is noise-free
      BitVec flips(m);
      for (std::size_t i = 0; i < m; ++i) {
        double q = meas_priors.empty() ? 0.0 : meas_priors[i];
        if (rng.bernoulli(q)) flips.set(i, true);
      }
      syn.xor_with(flips);
      out.r.push_back(std::move(flips));
    }
    out.s.push_back(std::move(syn));
  }
  out.s_diff.push_back(out.s[0]);
  for (int t = 1; t < rounds; ++t) {
    BitVec diff = out.s[t - 1];
    diff.xor_with(out.s[t]);
    out.s_diff.push_back(std::move(diff));
  }
  return out;
}

}  // namespace cssdec
