#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cssdec/bit_matrix.hpp"

namespace cssdec {

// CSS stabilizer code: X/Z parity checks plus one symplectic pair of logical
// operators per logical qubit. Immutable after construction.
struct CssCode {
  std::string name;
  std::size_t n = 0;  // data qubits
  std::size_t k = 0;  // logical qubits
  std::size_t d = 0;  // claimed distance
  BitMatrix hx;       // m_X x n, detects Z errors
  BitMatrix hz;       // m_Z x n, detects X errors
  BitMatrix lx;       // k x n
  BitMatrix lz;       // k x n
};

struct ValidationIssue {
  std::string check;
  bool ok = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> entries;
  bool all_ok() const {
    for (const auto& e : entries)
      if (!e.ok) return false;
    return true;
  }
};

// Pure function of the code; failures become report entries, never throws.
ValidationReport validate_css(const CssCode& code);

// (Lx, Lz) from the kernel/complement construction, symplectically paired so
// that Lx row i anti-commutes with Lz row j exactly when i = j.
std::pair<BitMatrix, BitMatrix> derive_logicals(const BitMatrix& hx, const BitMatrix& hz);

// Assembles a code from parity checks, deriving k by rank-nullity and the
// logical operators when not supplied. Throws on CSS violations.
CssCode make_css_code(std::string name, std::size_t d, BitMatrix hx, BitMatrix hz);
CssCode make_css_code(std::string name, std::size_t d, BitMatrix hx, BitMatrix hz, BitMatrix lx,
                      BitMatrix lz);

// True when the post-correction residual flips some logical operator.
// Residuals must lie in the normalizer: Hz r_x = 0 and Hx r_z = 0.
bool logical_failure(const CssCode& code, const BitVec& residual_x, const BitVec& residual_z);

// ---- built-in code families ----

// Toric code [[2d^2, 2, d]] on a d x d periodic lattice, all checks weight 4.
CssCode gen_toric(std::size_t d);

// Rotated surface code [[d^2, 1, d]], d odd; boundary checks weight 2.
CssCode gen_rotated_surface(std::size_t d);

// Triangular 6.6.6 color code [[(3d^2+1)/4, 1, d]], d odd; self-dual with
// face weights in {4, 6}. d=3 is the Steane code.
CssCode gen_color_666(std::size_t d);

}  // namespace cssdec
