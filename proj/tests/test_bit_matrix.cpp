#include <doctest.h>

#include "cssdec/bit_matrix.hpp"
#include "cssdec/rng.hpp"

using namespace cssdec;

TEST_CASE("rank and kernel of a small matrix") {
  // rows: 110, 011, 101 -> rank 2, kernel {111}
  BitMatrix m = BitMatrix::from_rows(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(m.rank() == 2);
  auto kernel = m.kernel_basis();
  REQUIRE(kernel.size() == 1);
  CHECK(kernel[0].popcount() == 3);
  CHECK_FALSE(m.mul(kernel[0]).any());
}

TEST_CASE("solve finds a particular solution or reports inconsistency") {
  BitMatrix m = BitMatrix::from_rows(4, {{0, 1}, {1, 2}, {2, 3}});
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    BitVec e(4);
    for (int j = 0; j < 4; ++j)
      if (rng.bernoulli(0.5)) e.set(j, true);
    BitVec s = m.mul(e);
    auto x = m.solve(s);
    REQUIRE(x.has_value());
    CHECK(m.mul(*x) == s);
  }
  // 100 is unreachable for the all-ones-sum matrix below.
  BitMatrix parity = BitMatrix::from_rows(2, {{0, 1}, {0, 1}});
  BitVec bad(2);
  bad.set(0, true);
  CHECK_FALSE(parity.solve(bad).has_value());
}

TEST_CASE("kernel basis spans exactly the null space") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<std::uint32_t>> rows;
    for (int i = 0; i < 4; ++i) {
      std::vector<std::uint32_t> r;
      for (std::uint32_t c = 0; c < 8; ++c)
        if (rng.bernoulli(0.4)) r.push_back(c);
      if (r.empty()) r.push_back(0);
      rows.push_back(r);
    }
    BitMatrix m = BitMatrix::from_rows(8, rows);
    auto kernel = m.kernel_basis();
    CHECK(kernel.size() == 8 - m.rank());
    for (const auto& v : kernel) CHECK_FALSE(m.mul(v).any());
  }
}

TEST_CASE("transpose and multiply agree with direct indexing") {
  BitMatrix m = BitMatrix::from_rows(5, {{0, 2, 4}, {1, 3}});
  BitMatrix t = m.transposed();
  REQUIRE(t.rows() == 5);
  REQUIRE(t.cols() == 2);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) CHECK(m.get(r, c) == t.get(c, r));
}

TEST_CASE("odd overlap detection pinpoints the offending pair") {
  BitMatrix a = BitMatrix::from_rows(4, {{0, 1}, {2, 3}});
  BitMatrix b = BitMatrix::from_rows(4, {{0, 1}, {1, 2}});
  auto hit = find_odd_overlap(a, b);
  REQUIRE(hit.has_value());
  CHECK(hit->first == 0);
  CHECK(hit->second == 1);
  BitMatrix c = BitMatrix::from_rows(4, {{0, 1}});
  CHECK_FALSE(find_odd_overlap(a, c).has_value());
}

TEST_CASE("gf2_invert round-trips") {
  std::vector<BitVec> rows;
  BitVec r0(3), r1(3), r2(3);
  r0.set(0, true); r0.set(1, true);
  r1.set(1, true);
  r2.set(0, true); r2.set(2, true);
  rows = {r0, r1, r2};
  auto inv = gf2_invert(rows);
  // M * M^-1 = I
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int acc = 0;
      for (int k = 0; k < 3; ++k) acc ^= (rows[i].get(k) && inv[k].get(j)) ? 1 : 0;
      CHECK(acc == (i == j ? 1 : 0));
    }
}

TEST_CASE("out-of-range column indices are rejected") {
  CHECK_THROWS(BitMatrix::from_rows(3, {{0, 3}}));
}
