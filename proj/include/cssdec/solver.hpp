#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cssdec/wcnf.hpp"

namespace cssdec {

enum class SolveStatus { optimum, satisfiable_bound, hard_unsat, timeout };

const char* to_string(SolveStatus status);

struct Assignment {
  std::vector<std::uint8_t> values;  // 1-based; index 0 unused
  double objective = 0.0;            // sum of violated soft weights
  SolveStatus status = SolveStatus::timeout;
  std::uint64_t nodes = 0;
};

struct SolverBudget {
  std::optional<double> wall_seconds;
  std::optional<std::uint64_t> node_limit;
};

struct SolveOptions {
  // Full assignment used as the initial incumbent when it satisfies the
  // hard clauses.
  const std::vector<std::uint8_t>* warm_start = nullptr;
};

// Exact branch and bound: unit propagation with two watched literals on the
// hard clauses, static ascending variable order, false-first value order,
// lower bound from violated soft weight. Conflicts — hard or bound — learn
// clauses, so pruning accumulates across the search. Deterministic given
// its inputs.
Assignment solve_exact(const WcnfFormula& formula, const SolverBudget& budget = {},
                       const SolveOptions& options = {});

// Solver-independent verifier: recomputes hard satisfaction and the violated
// soft weight from scratch.
std::pair<bool, double> check_assignment(const WcnfFormula& formula,
                                         const std::vector<std::uint8_t>& values);

}  // namespace cssdec
