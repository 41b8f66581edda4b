#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cssdec {

// Dense bit vector over GF(2), packed into 64-bit words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static BitVec from_indices(std::size_t n, const std::vector<std::uint32_t>& idx) {
    BitVec v(n);
    for (auto i : idx) v.set(i, true);
    return v;
  }

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool v) {
    std::uint64_t mask = std::uint64_t(1) << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  void xor_with(const BitVec& other) {
    if (other.n_ != n_) throw std::invalid_argument("BitVec size mismatch in xor");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Parity of the AND with another vector (symplectic overlap test).
  bool dot(const BitVec& other) const {
    if (other.n_ != n_) throw std::invalid_argument("BitVec size mismatch in dot");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
  }

  std::vector<std::uint32_t> indices() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (get(i)) out.push_back(static_cast<std::uint32_t>(i));
    return out;
  }

  // Index of the lowest set bit, or size() when all zero.
  std::size_t first_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return n_;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace cssdec
