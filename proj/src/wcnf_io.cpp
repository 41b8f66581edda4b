#include "cssdec/wcnf_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cssdec {

namespace {

std::int64_t integral_weight(double w) {
  double r = std::round(w);
  if (r < 1.0 || std::abs(w - r) > 1e-9)
    throw std::invalid_argument("write_wcnf: soft weights must be positive integers; "
                                "run quantize_weights first");
  return static_cast<std::int64_t>(r);
}

void write_varmap_comment(std::ostream& out, const WcnfFormula& f) {
  const VariableMap& vm = f.var_map;
  out << "c varmap n " << vm.n << " m " << vm.m << " L " << vm.rounds << " e " << vm.e_begin
      << " " << vm.e_count << " r " << vm.r_begin << " " << vm.r_count << " a " << vm.a_begin
      << " " << vm.a_count << " b " << vm.b_begin << " " << vm.b_count << "\n";
  if (f.quant_scale > 0) out << "c scale " << f.quant_scale << "\n";
}

void write_lits(std::ostream& out, const Clause& c) {
  for (int lit : c.lits) out << lit << " ";
  out << "0\n";
}

}  // namespace

void write_wcnf(std::ostream& out, const WcnfFormula& formula, WcnfDialect dialect) {
  std::int64_t total = 0;
  std::vector<std::int64_t> weights;
  weights.reserve(formula.soft.size());
  for (const auto& [w, clause] : formula.soft) {
    weights.push_back(integral_weight(w));
    total += weights.back();
  }
  write_varmap_comment(out, formula);
  if (dialect == WcnfDialect::classic) {
    const std::int64_t top = total + 1;
    out << "p wcnf " << formula.num_vars << " " << formula.clause_count() << " " << top << "\n";
    for (const auto& c : formula.hard) {
      out << top << " ";
      write_lits(out, c);
    }
    for (std::size_t i = 0; i < formula.soft.size(); ++i) {
      out << weights[i] << " ";
      write_lits(out, formula.soft[i].second);
    }
  } else {
    for (const auto& c : formula.hard) {
      out << "h ";
      write_lits(out, c);
    }
    for (std::size_t i = 0; i < formula.soft.size(); ++i) {
      out << weights[i] << " ";
      write_lits(out, formula.soft[i].second);
    }
  }
}

std::string wcnf_to_string(const WcnfFormula& formula, WcnfDialect dialect) {
  std::ostringstream os;
  write_wcnf(os, formula, dialect);
  return os.str();
}

WcnfFormula read_wcnf(std::istream& in) {
  WcnfFormula f;
  bool have_header = false;
  std::int64_t top = -1;
  int max_var = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == 'c') {
      std::string c, key;
      ls >> c >> key;
      if (key == "varmap") {
        VariableMap& vm = f.var_map;
        std::string tag;
        while (ls >> tag) {
          if (tag == "n")
            ls >> vm.n;
          else if (tag == "m")
            ls >> vm.m;
          else if (tag == "L")
            ls >> vm.rounds;
          else if (tag == "e")
            ls >> vm.e_begin >> vm.e_count;
          else if (tag == "r")
            ls >> vm.r_begin >> vm.r_count;
          else if (tag == "a")
            ls >> vm.a_begin >> vm.a_count;
          else if (tag == "b")
            ls >> vm.b_begin >> vm.b_count;
        }
      } else if (key == "scale") {
        ls >> f.quant_scale;
      }
      continue;
    }
    if (line[0] == 'p') {
      std::string p, kind;
      std::size_t nvars = 0, nclauses = 0;
      if (!(ls >> p >> kind >> nvars >> nclauses >> top) || kind != "wcnf")
        throw std::runtime_error("read_wcnf: malformed p line");
      f.num_vars = static_cast<int>(nvars);
      have_header = true;
      continue;
    }

    bool is_hard_2022 = line[0] == 'h';
    std::int64_t weight = 0;
    if (is_hard_2022) {
      char h;
      ls >> h;
    } else {
      if (!(ls >> weight)) throw std::runtime_error("read_wcnf: malformed clause line");
    }
    Clause clause;
    long long lit;
    bool terminated = false;
    while (ls >> lit) {
      if (lit == 0) {
        terminated = true;
        break;
      }
      clause.lits.push_back(static_cast<int>(lit));
      max_var = std::max(max_var, std::abs(static_cast<int>(lit)));
    }
    if (!terminated) throw std::runtime_error("read_wcnf: clause missing 0 terminator");
    if (is_hard_2022 || (have_header && weight == top))
      f.hard.push_back(std::move(clause));
    else if (weight <= 0)
      throw std::runtime_error("read_wcnf: non-positive soft weight");
    else
      f.soft.push_back({static_cast<double>(weight), std::move(clause)});
  }
  if (!have_header) f.num_vars = max_var;
  if (f.num_vars < max_var)
    throw std::runtime_error("read_wcnf: literal exceeds declared variable count");
  return f;
}

WcnfFormula read_wcnf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open WCNF file: " + path);
  return read_wcnf(in);
}

}  // namespace cssdec
