#pragma once

#include <iosfwd>
#include <string>

#include "cssdec/wcnf.hpp"

namespace cssdec {

enum class WcnfDialect {
  classic,   // `p wcnf <vars> <clauses> <top>` header; hard clauses weighted top
  fmt2022,   // `h <lits> 0` hard lines, `<weight> <lits> 0` soft, no header
};

// Requires integral soft weights (see quantize_weights). Emits `c varmap`
// comments so the variable layout round-trips.
void write_wcnf(std::ostream& out, const WcnfFormula& formula, WcnfDialect dialect);
std::string wcnf_to_string(const WcnfFormula& formula, WcnfDialect dialect);

// Reads either dialect, detected from the content.
WcnfFormula read_wcnf(std::istream& in);
WcnfFormula read_wcnf_file(const std::string& path);

}  // namespace cssdec
