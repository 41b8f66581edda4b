#include "cssdec/css_code.hpp"

#include <stdexcept>

namespace cssdec {

namespace {

// Incremental row-echelon accumulator keyed by lowest set bit.
struct Echelon {
  std::vector<BitVec> rows;
  std::vector<std::size_t> pivots;

  // Returns false when v was already in the span.
  bool add(BitVec v) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (v.get(pivots[i])) v.xor_with(rows[i]);
    std::size_t p = v.first_set();
    if (p == v.size()) return false;
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }
};

// Independent vectors of `space` modulo span(done). Used to pick logical
// representatives above the stabilizer row space.
std::vector<BitVec> quotient_basis(const std::vector<BitVec>& space, const std::vector<BitVec>& done,
                                   std::size_t want) {
  Echelon ech;
  for (const auto& v : done) ech.add(v);
  std::vector<BitVec> picked;
  for (const auto& v : space) {
    if (picked.size() == want) break;
    if (ech.add(v)) picked.push_back(v);
  }
  return picked;
}

}  // namespace

std::pair<BitMatrix, BitMatrix> derive_logicals(const BitMatrix& hx, const BitMatrix& hz) {
  const std::size_t n = hx.cols();
  const std::size_t rx = hx.rank();
  const std::size_t rz = hz.rank();
  if (rx + rz > n) throw std::runtime_error("derive_logicals: rank(Hx)+rank(Hz) exceeds n");
  const std::size_t k = n - rx - rz;

  // X logicals: ker(Hz) modulo rowspace(Hx); Z logicals: ker(Hx) mod rows(Hz).
  auto lx_cand = quotient_basis(hz.kernel_basis(), hx.row_space_basis(), k);
  auto lz_cand = quotient_basis(hx.kernel_basis(), hz.row_space_basis(), k);
  if (lx_cand.size() != k || lz_cand.size() != k)
    throw std::runtime_error("derive_logicals: could not extract k logical representatives");

  // Symplectic pairing: M = Lx Lz^T must be invertible on the logical space;
  // replace Lz by (M^-1)^T Lz so that Lx_i . Lz_j = delta_ij.
  if (k > 0) {
    std::vector<BitVec> m_rows;
    m_rows.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      BitVec row(k);
      for (std::size_t j = 0; j < k; ++j)
        if (lx_cand[i].dot(lz_cand[j])) row.set(j, true);
      m_rows.push_back(std::move(row));
    }
    auto inv = gf2_invert(m_rows);
    std::vector<BitVec> lz_paired;
    lz_paired.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
      BitVec acc(n);
      // (M^-1)^T row j = column j of M^-1.
      for (std::size_t t = 0; t < k; ++t)
        if (inv[t].get(j)) acc.xor_with(lz_cand[t]);
      lz_paired.push_back(std::move(acc));
    }
    lz_cand = std::move(lz_paired);
  }

  auto to_matrix = [n](const std::vector<BitVec>& rows) {
    BitMatrix m(0, 0);
    std::vector<std::vector<std::uint32_t>> idx;
    idx.reserve(rows.size());
    for (const auto& v : rows) idx.push_back(v.indices());
    return BitMatrix::from_rows(n, std::move(idx));
  };
  return {to_matrix(lx_cand), to_matrix(lz_cand)};
}

ValidationReport validate_css(const CssCode& code) {
  ValidationReport rep;
  auto add = [&rep](std::string check, bool ok, std::string detail = "") {
    rep.entries.push_back({std::move(check), ok, std::move(detail)});
  };

  if (code.n == 0) {
    add("nonempty", false, "code has n = 0 qubits");
    return rep;
  }
  add("nonempty", true);

  bool dims_ok = code.hx.cols() == code.n && code.hz.cols() == code.n &&
                 code.lx.cols() == code.n && code.lz.cols() == code.n &&
                 code.lx.rows() == code.k && code.lz.rows() == code.k;
  add("dimensions", dims_ok);
  if (!dims_ok) return rep;

  auto pair = find_odd_overlap(code.hx, code.hz);
  add("Hx.Hz^T = 0", !pair.has_value(),
      pair ? "Hx row " + std::to_string(pair->first) + " anticommutes with Hz row " +
                 std::to_string(pair->second)
           : "");

  auto lx_hz = find_odd_overlap(code.lx, code.hz);
  add("Lx commutes with Hz", !lx_hz.has_value(),
      lx_hz ? "Lx row " + std::to_string(lx_hz->first) : "");
  auto lz_hx = find_odd_overlap(code.lz, code.hx);
  add("Lz commutes with Hx", !lz_hx.has_value(),
      lz_hx ? "Lz row " + std::to_string(lz_hx->first) : "");

  bool pairing_ok = true;
  std::string pairing_detail;
  for (std::size_t i = 0; i < code.k && pairing_ok; ++i) {
    BitVec lxi = code.lx.row_as_bitvec(i);
    for (std::size_t j = 0; j < code.k; ++j) {
      bool anti = lxi.dot(code.lz.row_as_bitvec(j));
      if (anti != (i == j)) {
        pairing_ok = false;
        pairing_detail = "Lx row " + std::to_string(i) + " vs Lz row " + std::to_string(j);
        break;
      }
    }
  }
  add("symplectic pairing", pairing_ok, pairing_detail);

  std::size_t rx = code.hx.rank();
  std::size_t rz = code.hz.rank();
  bool kn_ok = rx + rz <= code.n && code.k == code.n - rx - rz;
  add("k = n - rank(Hx) - rank(Hz)", kn_ok,
      kn_ok ? "" : "declared k=" + std::to_string(code.k) + ", rank-nullity gives " +
                       std::to_string(code.n - rx - rz));

  // Logicals must be independent of the stabilizers (rank grows by k).
  auto stacked_rank = [&code](const BitMatrix& h, const BitMatrix& l) {
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < h.rows(); ++i) rows.push_back(h.row_as_bitvec(i));
    for (std::size_t i = 0; i < l.rows(); ++i) rows.push_back(l.row_as_bitvec(i));
    return gf2_eliminate(rows).size();
  };
  add("Lx independent of Hx", stacked_rank(code.hx, code.lx) == rx + code.k);
  add("Lz independent of Hz", stacked_rank(code.hz, code.lz) == rz + code.k);

  bool weights_ok = true;
  for (std::size_t i = 0; i < code.hx.rows(); ++i)
    if (code.hx.row_weight(i) == 0) weights_ok = false;
  for (std::size_t i = 0; i < code.hz.rows(); ++i)
    if (code.hz.row_weight(i) == 0) weights_ok = false;
  add("no zero-weight checks", weights_ok);

  return rep;
}

CssCode make_css_code(std::string name, std::size_t d, BitMatrix hx, BitMatrix hz) {
  const std::size_t n = hx.cols();
  if (hz.cols() != n) throw std::invalid_argument("make_css_code: Hx/Hz column mismatch");
  auto pair = find_odd_overlap(hx, hz);
  if (pair)
    throw std::runtime_error("css-violation: Hx row " + std::to_string(pair->first) +
                             " anticommutes with Hz row " + std::to_string(pair->second));
  auto [lx, lz] = derive_logicals(hx, hz);
  CssCode code;
  code.name = std::move(name);
  code.n = n;
  code.k = lx.rows();
  code.d = d;
  code.hx = std::move(hx);
  code.hz = std::move(hz);
  code.lx = std::move(lx);
  code.lz = std::move(lz);
  return code;
}

CssCode make_css_code(std::string name, std::size_t d, BitMatrix hx, BitMatrix hz, BitMatrix lx,
                      BitMatrix lz) {
  CssCode code;
  code.name = std::move(name);
  code.n = hx.cols();
  code.k = lx.rows();
  code.d = d;
  code.hx = std::move(hx);
  code.hz = std::move(hz);
  code.lx = std::move(lx);
  code.lz = std::move(lz);
  auto rep = validate_css(code);
  if (!rep.all_ok()) {
    for (const auto& e : rep.entries)
      if (!e.ok)
        throw std::runtime_error("make_css_code: validation failed: " + e.check +
                                 (e.detail.empty() ? "" : " (" + e.detail + ")"));
  }
  return code;
}

bool logical_failure(const CssCode& code, const BitVec& residual_x, const BitVec& residual_z) {
  if (residual_x.size() != code.n || residual_z.size() != code.n)
    throw std::invalid_argument("logical_failure: residual length mismatch");
  if (code.hz.mul(residual_x).any() || code.hx.mul(residual_z).any())
    throw std::invalid_argument("invalid-residual: residual not in the code's normalizer");
  for (std::size_t i = 0; i < code.k; ++i) {
    if (code.lz.row_as_bitvec(i).dot(residual_x)) return true;
    if (code.lx.row_as_bitvec(i).dot(residual_z)) return true;
  }
  return false;
}

}  // namespace cssdec
