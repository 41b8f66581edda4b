#pragma once

#include <iosfwd>
#include <string>

#include "cssdec/css_code.hpp"

namespace cssdec {

enum class CodeFormat { matrix_text, alist };

// Matrix-text interchange: header `css <name> <n> <k> <d>`, then sections
// Hx/Hz/Lx/Lz, one line of 0-based set-column indices per row, blank line
// ending each section.
CssCode read_code_text(std::istream& in);
void write_code_text(std::ostream& out, const CssCode& code);

// Standard LDPC alist adjacency format, one matrix per file.
BitMatrix read_alist(std::istream& in);
void write_alist(std::ostream& out, const BitMatrix& m);

// matrix-text: `path` is one file. alist: `path` is "hx_file,hz_file", or a
// single file for a self-dual code (Hx = Hz). Logical operators are derived
// when absent; all CSS invariants are verified at load.
CssCode load_code(const std::string& path, CodeFormat format = CodeFormat::matrix_text);
void save_code(const std::string& path, const CssCode& code);

}  // namespace cssdec
