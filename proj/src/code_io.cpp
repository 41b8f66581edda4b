#include "cssdec/code_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cssdec {

namespace {

std::vector<std::vector<std::uint32_t>> read_section_rows(std::istream& in,
                                                          const std::string& section) {
  std::vector<std::vector<std::uint32_t>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") break;
    std::istringstream ls(line);
    std::vector<std::uint32_t> row;
    long v;
    while (ls >> v) {
      if (v < 0) throw std::runtime_error("parse failure: negative column index in " + section);
      row.push_back(static_cast<std::uint32_t>(v));
    }
    if (!ls.eof()) throw std::runtime_error("parse failure: bad token in section " + section);
    if (row.empty())
      throw std::runtime_error("parse failure: zero-weight row in section " + section);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

CssCode read_code_text(std::istream& in) {
  std::string tag, name;
  std::size_t n = 0, k = 0, d = 0;
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("parse failure: empty code file");
  {
    std::istringstream hs(header);
    if (!(hs >> tag >> name >> n >> k >> d) || tag != "css")
      throw std::runtime_error("parse failure: expected header `css <name> <n> <k> <d>`");
  }
  if (n == 0) throw std::runtime_error("parse failure: degenerate code with n = 0");

  std::vector<std::vector<std::uint32_t>> hx, hz, lx, lz;
  bool have_lx = false, have_lz = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (line == "Hx")
      hx = read_section_rows(in, "Hx");
    else if (line == "Hz")
      hz = read_section_rows(in, "Hz");
    else if (line == "Lx") {
      lx = read_section_rows(in, "Lx");
      have_lx = true;
    } else if (line == "Lz") {
      lz = read_section_rows(in, "Lz");
      have_lz = true;
    } else {
      throw std::runtime_error("parse failure: unknown section `" + line + "`");
    }
  }
  if (hx.empty() || hz.empty()) throw std::runtime_error("parse failure: missing Hx or Hz section");

  BitMatrix mhx = BitMatrix::from_rows(n, std::move(hx));
  BitMatrix mhz = BitMatrix::from_rows(n, std::move(hz));

  CssCode code;
  if (have_lx != have_lz)
    throw std::runtime_error("parse failure: Lx and Lz must both be present or both absent");
  if (have_lx) {
    code = make_css_code(name, d, std::move(mhx), std::move(mhz),
                         BitMatrix::from_rows(n, std::move(lx)),
                         BitMatrix::from_rows(n, std::move(lz)));
  } else {
    code = make_css_code(name, d, std::move(mhx), std::move(mhz));
  }
  if (code.k != k)
    throw std::runtime_error("rank inconsistency: declared k=" + std::to_string(k) +
                             " but rank-nullity gives k=" + std::to_string(code.k));
  return code;
}

void write_code_text(std::ostream& out, const CssCode& code) {
  out << "css " << code.name << " " << code.n << " " << code.k << " " << code.d << "\n";
  auto section = [&out](const char* title, const BitMatrix& m) {
    out << title << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto& row = m.row(i);
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
      out << "\n";
    }
    out << "\n";
  };
  section("Hx", code.hx);
  section("Hz", code.hz);
  section("Lx", code.lx);
  section("Lz", code.lz);
}

BitMatrix read_alist(std::istream& in) {
  std::size_t ncols = 0, nrows = 0;
  if (!(in >> ncols >> nrows)) throw std::runtime_error("parse failure: alist header");
  std::size_t max_col_w = 0, max_row_w = 0;
  if (!(in >> max_col_w >> max_row_w)) throw std::runtime_error("parse failure: alist max weights");
  std::vector<std::size_t> col_w(ncols), row_w(nrows);
  for (auto& w : col_w)
    if (!(in >> w)) throw std::runtime_error("parse failure: alist column weights");
  for (auto& w : row_w)
    if (!(in >> w)) throw std::runtime_error("parse failure: alist row weights");

  // Column adjacency lists (1-based, zero-padded to max_col_w) are read and
  // ignored beyond validation; rows carry the authoritative data.
  for (std::size_t c = 0; c < ncols; ++c) {
    for (std::size_t t = 0; t < max_col_w; ++t) {
      long v;
      if (!(in >> v)) throw std::runtime_error("parse failure: alist column adjacency");
      if (v < 0 || static_cast<std::size_t>(v) > nrows)
        throw std::runtime_error("parse failure: alist column entry out of range");
    }
  }
  std::vector<std::vector<std::uint32_t>> rows(nrows);
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t t = 0; t < max_row_w; ++t) {
      long v;
      if (!(in >> v)) throw std::runtime_error("parse failure: alist row adjacency");
      if (v < 0 || static_cast<std::size_t>(v) > ncols)
        throw std::runtime_error("parse failure: alist row entry out of range");
      if (v > 0) rows[r].push_back(static_cast<std::uint32_t>(v - 1));
    }
    if (rows[r].size() != row_w[r])
      throw std::runtime_error("parse failure: alist row weight mismatch at row " +
                               std::to_string(r));
  }
  return BitMatrix::from_rows(ncols, std::move(rows));
}

void write_alist(std::ostream& out, const BitMatrix& m) {
  const std::size_t nrows = m.rows(), ncols = m.cols();
  std::vector<std::vector<std::uint32_t>> col_adj(ncols);
  std::size_t max_row_w = 0;
  for (std::size_t r = 0; r < nrows; ++r) {
    max_row_w = std::max(max_row_w, m.row_weight(r));
    for (auto c : m.row(r)) col_adj[c].push_back(static_cast<std::uint32_t>(r));
  }
  std::size_t max_col_w = 0;
  for (const auto& col : col_adj) max_col_w = std::max(max_col_w, col.size());

  out << ncols << " " << nrows << "\n" << max_col_w << " " << max_row_w << "\n";
  for (std::size_t c = 0; c < ncols; ++c) out << (c ? " " : "") << col_adj[c].size();
  out << "\n";
  for (std::size_t r = 0; r < nrows; ++r) out << (r ? " " : "") << m.row_weight(r);
  out << "\n";
  for (std::size_t c = 0; c < ncols; ++c) {
    for (std::size_t t = 0; t < max_col_w; ++t)
      out << (t ? " " : "") << (t < col_adj[c].size() ? col_adj[c][t] + 1 : 0);
    out << "\n";
  }
  for (std::size_t r = 0; r < nrows; ++r) {
    const auto& row = m.row(r);
    for (std::size_t t = 0; t < max_row_w; ++t)
      out << (t ? " " : "") << (t < row.size() ? row[t] + 1 : 0);
    out << "\n";
  }
}

CssCode load_code(const std::string& path, CodeFormat format) {
  if (format == CodeFormat::matrix_text) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file: " + path);
    return read_code_text(in);
  }
  // alist: "hx,hz" pair, or one file for a self-dual code.
  auto comma = path.find(',');
  std::string hx_path = path.substr(0, comma);
  std::string hz_path = comma == std::string::npos ? hx_path : path.substr(comma + 1);
  std::ifstream fx(hx_path);
  if (!fx) throw std::runtime_error("cannot open alist file: " + hx_path);
  BitMatrix hx = read_alist(fx);
  std::ifstream fz(hz_path);
  if (!fz) throw std::runtime_error("cannot open alist file: " + hz_path);
  BitMatrix hz = read_alist(fz);
  return make_css_code(hx_path, 0, std::move(hx), std::move(hz));
}

void save_code(const std::string& path, const CssCode& code) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write code file: " + path);
  write_code_text(out, code);
}

}  // namespace cssdec
