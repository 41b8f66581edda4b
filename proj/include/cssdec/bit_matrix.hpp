#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cssdec/bitvec.hpp"

namespace cssdec {

// Binary matrix stored as sorted column-index lists per row. Rows of QEC
// parity-check matrices are sparse; rank/solve/kernel work on dense views.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  // Rows are sorted and deduplicated; throws on out-of-range indices.
  static BitMatrix from_rows(std::size_t cols, std::vector<std::vector<std::uint32_t>> rows);

  std::size_t rows() const { return row_cols_.size(); }
  std::size_t cols() const { return cols_; }

  const std::vector<std::uint32_t>& row(std::size_t i) const { return row_cols_[i]; }
  std::size_t row_weight(std::size_t i) const { return row_cols_[i].size(); }
  std::vector<std::size_t> row_weights() const;

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v);
  void append_row(std::vector<std::uint32_t> cols);

  BitVec row_as_bitvec(std::size_t i) const;
  BitVec mul(const BitVec& x) const;  // y = M x over GF(2)
  BitMatrix transposed() const;

  std::size_t rank() const;

  // One solution of M x = s, if consistent.
  std::optional<BitVec> solve(const BitVec& s) const;

  // Basis of { x : M x = 0 }.
  std::vector<BitVec> kernel_basis() const;

  // Maximal independent subset of the rows, as dense vectors.
  std::vector<BitVec> row_space_basis() const;

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.cols_ == b.cols_ && a.row_cols_ == b.row_cols_;
  }
  friend bool operator!=(const BitMatrix& a, const BitMatrix& b) { return !(a == b); }

 private:
  std::size_t cols_ = 0;
  std::vector<std::vector<std::uint32_t>> row_cols_;
};

// First (i, j) with odd overlap between rows a.row(i) and b.row(j), if any.
// Used to report CSS commutation violations.
std::optional<std::pair<std::size_t, std::size_t>> find_odd_overlap(const BitMatrix& a,
                                                                    const BitMatrix& b);

// Dense GF(2) Gaussian elimination over a list of row vectors. Returns the
// pivot column of each retained row; `rows` is reduced in place to row
// echelon form (zero rows dropped).
std::vector<std::size_t> gf2_eliminate(std::vector<BitVec>& rows);

// Inverse of a k x k GF(2) matrix given as dense rows; throws if singular.
std::vector<BitVec> gf2_invert(const std::vector<BitVec>& rows);

}  // namespace cssdec
