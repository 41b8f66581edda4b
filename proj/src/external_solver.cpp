#include "cssdec/external_solver.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cssdec/encoder.hpp"

namespace cssdec {

std::string default_solver_command() {
  const char* env = std::getenv("MAXSAT_SOLVER_CMD");
  return env ? std::string(env) : std::string();
}

std::optional<std::vector<std::uint8_t>> parse_value_tokens(const std::vector<std::string>& tokens,
                                                            int num_vars) {
  if (tokens.empty()) return std::nullopt;
  // 2022 convention: one contiguous 0/1 string (possibly split over lines)
  // covering every variable in order.
  std::string joined;
  bool binary = true;
  for (const auto& t : tokens) {
    for (char c : t)
      if (c != '0' && c != '1') binary = false;
    joined += t;
  }
  std::vector<std::uint8_t> values(static_cast<std::size_t>(num_vars) + 1, 0);
  if (binary && joined.size() == static_cast<std::size_t>(num_vars)) {
    for (int v = 1; v <= num_vars; ++v) values[v] = joined[v - 1] == '1';
    return values;
  }
  // Classic convention: space-separated signed literals, optional trailing 0.
  bool any = false;
  for (const auto& t : tokens) {
    long lit;
    try {
      lit = std::stol(t);
    } catch (...) {
      return std::nullopt;
    }
    if (lit == 0) continue;
    long var = std::labs(lit);
    if (var > num_vars) return std::nullopt;
    values[var] = lit > 0;
    any = true;
  }
  if (!any) return std::nullopt;
  return values;
}

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const char* pattern) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s", pattern);
    int fd = mkstemp(buf);
    if (fd < 0) throw std::runtime_error("external-solver process failure: mkstemp failed");
    ::close(fd);
    path = buf;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

Assignment run_external(const WcnfFormula& formula, const std::string& command_template,
                        const SolverBudget& budget, const ExternalOptions& options) {
  auto pos = command_template.find("{wcnf}");
  if (pos == std::string::npos)
    throw std::invalid_argument("run_external: command template must contain {wcnf}");

  WcnfFormula quantized = quantize_weights(formula, options.scale);
  TempFile wcnf_file("/tmp/cssdec-XXXXXX");
  TempFile err_file("/tmp/cssdec-err-XXXXXX");
  {
    std::ofstream out(wcnf_file.path);
    write_wcnf(out, quantized, options.dialect);
  }

  std::string cmd = command_template;
  while ((pos = cmd.find("{wcnf}")) != std::string::npos) cmd.replace(pos, 6, wcnf_file.path);
  if (budget.wall_seconds)
    cmd = "timeout " + std::to_string(static_cast<long>(*budget.wall_seconds) + 1) + " " + cmd;
  cmd += " 2>" + err_file.path;

  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("external-solver process failure: popen: " + cmd);
  std::string output;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  pclose(pipe);  // exit status ignored in favor of the s/v protocol

  std::string status_line;
  std::vector<std::string> value_tokens;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("s ", 0) == 0) {
      status_line = line.substr(2);
    } else if (line.rfind("v", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
      std::istringstream ls(line.substr(1));
      std::string tok;
      while (ls >> tok) value_tokens.push_back(tok);
    }
  }

  auto diagnostics = [&err_file]() {
    std::ifstream err(err_file.path);
    std::stringstream ss;
    ss << err.rdbuf();
    std::string text = ss.str();
    return text.empty() ? std::string() : ("; stderr: " + text.substr(0, 500));
  };

  if (status_line.empty())
    throw std::runtime_error("external-solver unparsable output: no `s` status line" +
                             diagnostics());

  Assignment result;
  if (status_line.find("UNSATISFIABLE") != std::string::npos) {
    result.status = SolveStatus::hard_unsat;
    return result;
  }
  bool optimal = status_line.find("OPTIMUM FOUND") != std::string::npos;
  bool satisfiable = status_line.find("SATISFIABLE") != std::string::npos;
  if (!optimal && !satisfiable)
    throw std::runtime_error("external-solver unparsable output: status `" + status_line + "`" +
                             diagnostics());

  auto values = parse_value_tokens(value_tokens, formula.num_vars);
  if (!values)
    throw std::runtime_error("external-solver unparsable output: missing or malformed v lines" +
                             diagnostics());

  auto [hard_ok, objective] = check_assignment(formula, *values);
  if (!hard_ok)
    throw std::runtime_error(
        "external-solver verification failure: returned model violates hard clauses");
  result.values = std::move(*values);
  result.objective = objective;  // unquantized units
  result.status = optimal ? SolveStatus::optimum : SolveStatus::satisfiable_bound;
  return result;
}

}  // namespace cssdec
