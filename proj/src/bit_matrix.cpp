#include "cssdec/bit_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace cssdec {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), row_cols_(rows) {}

BitMatrix BitMatrix::from_rows(std::size_t cols, std::vector<std::vector<std::uint32_t>> rows) {
  BitMatrix m;
  m.cols_ = cols;
  m.row_cols_.reserve(rows.size());
  for (auto& r : rows) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    if (!r.empty() && r.back() >= cols)
      throw std::invalid_argument("BitMatrix: column index " + std::to_string(r.back()) +
                                  " out of range (cols=" + std::to_string(cols) + ")");
    m.row_cols_.push_back(std::move(r));
  }
  return m;
}

std::vector<std::size_t> BitMatrix::row_weights() const {
  std::vector<std::size_t> w(rows());
  for (std::size_t i = 0; i < rows(); ++i) w[i] = row_cols_[i].size();
  return w;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
  const auto& row = row_cols_[r];
  return std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(c));
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  if (c >= cols_) throw std::invalid_argument("BitMatrix::set column out of range");
  auto& row = row_cols_[r];
  auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(c));
  bool present = it != row.end() && *it == c;
  if (v && !present)
    row.insert(it, static_cast<std::uint32_t>(c));
  else if (!v && present)
    row.erase(it);
}

void BitMatrix::append_row(std::vector<std::uint32_t> cols) {
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  if (!cols.empty() && cols.back() >= cols_)
    throw std::invalid_argument("BitMatrix::append_row column out of range");
  row_cols_.push_back(std::move(cols));
}

BitVec BitMatrix::row_as_bitvec(std::size_t i) const {
  return BitVec::from_indices(cols_, row_cols_[i]);
}

BitVec BitMatrix::mul(const BitVec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("BitMatrix::mul dimension mismatch");
  BitVec y(rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    unsigned parity = 0;
    for (auto c : row_cols_[i]) parity ^= static_cast<unsigned>(x.get(c));
    if (parity) y.set(i, true);
  }
  return y;
}

BitMatrix BitMatrix::transposed() const {
  std::vector<std::vector<std::uint32_t>> t(cols_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (auto c : row_cols_[i]) t[c].push_back(static_cast<std::uint32_t>(i));
  BitMatrix m;
  m.cols_ = rows();
  m.row_cols_ = std::move(t);
  return m;
}

std::vector<std::size_t> gf2_eliminate(std::vector<BitVec>& rows) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  if (rows.empty()) return pivots;
  const std::size_t ncols = rows[0].size();
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && !rows[pivot].get(c)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i].get(c)) rows[i].xor_with(rows[r]);
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::size_t BitMatrix::rank() const {
  std::vector<BitVec> dense;
  dense.reserve(rows());
  for (std::size_t i = 0; i < rows(); ++i) dense.push_back(row_as_bitvec(i));
  return gf2_eliminate(dense).size();
}

std::optional<BitVec> BitMatrix::solve(const BitVec& s) const {
  if (s.size() != rows()) throw std::invalid_argument("BitMatrix::solve dimension mismatch");
  // Augmented elimination: last column carries the syndrome bit.
  std::vector<BitVec> aug;
  aug.reserve(rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    BitVec v(cols_ + 1);
    for (auto c : row_cols_[i]) v.set(c, true);
    if (s.get(i)) v.set(cols_, true);
    aug.push_back(std::move(v));
  }
  auto pivots = gf2_eliminate(aug);
  BitVec x(cols_);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols_) return std::nullopt;  // 0 = 1 row: inconsistent
    if (aug[i].get(cols_)) x.set(pivots[i], true);
  }
  return x;
}

std::vector<BitVec> BitMatrix::kernel_basis() const {
  std::vector<BitVec> dense;
  dense.reserve(rows());
  for (std::size_t i = 0; i < rows(); ++i) dense.push_back(row_as_bitvec(i));
  auto pivots = gf2_eliminate(dense);

  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<BitVec> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    BitVec v(cols_);
    v.set(f, true);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (dense[i].get(f)) v.set(pivots[i], true);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<BitVec> BitMatrix::row_space_basis() const {
  std::vector<BitVec> dense;
  dense.reserve(rows());
  for (std::size_t i = 0; i < rows(); ++i) dense.push_back(row_as_bitvec(i));
  gf2_eliminate(dense);
  return dense;
}

std::optional<std::pair<std::size_t, std::size_t>> find_odd_overlap(const BitMatrix& a,
                                                                    const BitMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto& ra = a.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const auto& rb = b.row(j);
      std::size_t overlap = 0;
      auto ia = ra.begin();
      auto ib = rb.begin();
      while (ia != ra.end() && ib != rb.end()) {
        if (*ia < *ib)
          ++ia;
        else if (*ib < *ia)
          ++ib;
        else {
          ++overlap;
          ++ia;
          ++ib;
        }
      }
      if (overlap & 1) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

std::vector<BitVec> gf2_invert(const std::vector<BitVec>& rows) {
  const std::size_t k = rows.size();
  // Work on [M | I]; reduce M to identity.
  std::vector<BitVec> work;
  work.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (rows[i].size() != k) throw std::invalid_argument("gf2_invert: matrix not square");
    BitVec v(2 * k);
    for (std::size_t c = 0; c < k; ++c)
      if (rows[i].get(c)) v.set(c, true);
    v.set(k + i, true);
    work.push_back(std::move(v));
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = c;
    while (pivot < k && !work[pivot].get(c)) ++pivot;
    if (pivot == k) throw std::runtime_error("gf2_invert: singular matrix");
    std::swap(work[c], work[pivot]);
    for (std::size_t i = 0; i < k; ++i)
      if (i != c && work[i].get(c)) work[i].xor_with(work[c]);
  }
  std::vector<BitVec> inv;
  inv.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    BitVec v(k);
    for (std::size_t c = 0; c < k; ++c)
      if (work[i].get(k + c)) v.set(c, true);
    inv.push_back(std::move(v));
  }
  return inv;
}

}  // namespace cssdec
