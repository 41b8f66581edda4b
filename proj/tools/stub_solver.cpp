// Reference external MaxSAT solver speaking the s/v line protocol: reads a
// WCNF file in either dialect, solves it with the embedded engine and prints
// the model as signed literals or as a 2022-style 0/1 value string.
#include <cmath>
#include <cstring>
#include <iostream>
#include <string>

#include "cssdec/solver.hpp"
#include "cssdec/wcnf_io.hpp"

int main(int argc, char** argv) {
  bool bitstring = false;
  double wall_seconds = 0.0;
  std::string path;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--v-bitstring") == 0)
      bitstring = true;
    else if (std::strcmp(argv[i], "--timeout") == 0 && i + 1 < argc)
      wall_seconds = std::stod(argv[++i]);
    else
      path = argv[i];
  }
  if (path.empty()) {
    std::cerr << "usage: cssdec-stub-solver [--v-bitstring] [--timeout SECS] <file.wcnf>\n";
    return 2;
  }

  try {
    cssdec::WcnfFormula f = cssdec::read_wcnf_file(path);
    cssdec::SolverBudget budget;
    if (wall_seconds > 0) budget.wall_seconds = wall_seconds;
    cssdec::Assignment a = cssdec::solve_exact(f, budget);

    std::cout << "c cssdec stub solver\n";
    switch (a.status) {
      case cssdec::SolveStatus::hard_unsat:
        std::cout << "s UNSATISFIABLE\n";
        return 0;
      case cssdec::SolveStatus::timeout:
        std::cout << "s UNKNOWN\n";
        return 0;
      case cssdec::SolveStatus::satisfiable_bound:
        std::cout << "o " << static_cast<long long>(std::llround(a.objective)) << "\n";
        std::cout << "s SATISFIABLE\n";
        break;
      case cssdec::SolveStatus::optimum:
        std::cout << "o " << static_cast<long long>(std::llround(a.objective)) << "\n";
        std::cout << "s OPTIMUM FOUND\n";
        break;
    }
    if (bitstring) {
      std::cout << "v ";
      for (int v = 1; v <= f.num_vars; ++v) std::cout << (a.values[v] ? '1' : '0');
      std::cout << "\n";
    } else {
      std::cout << "v";
      for (int v = 1; v <= f.num_vars; ++v) std::cout << " " << (a.values[v] ? v : -v);
      std::cout << " 0\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
