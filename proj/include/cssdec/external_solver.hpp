#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cssdec/solver.hpp"
#include "cssdec/wcnf_io.hpp"

namespace cssdec {

struct ExternalOptions {
  std::int64_t scale = 10000;
  WcnfDialect dialect = WcnfDialect::classic;
};

// Writes the quantized WCNF to a unique temporary file, substitutes it for
// `{wcnf}` in the command template, runs the command and parses the `s`/`v`
// line protocol (signed literals or the 2022 0/1 value string). The returned
// model is re-verified against the unquantized formula; objective is in
// unquantized units. Exit status is ignored in favor of the line protocol.
Assignment run_external(const WcnfFormula& formula, const std::string& command_template,
                        const SolverBudget& budget = {}, const ExternalOptions& options = {});

// `MAXSAT_SOLVER_CMD`, or empty when unset.
std::string default_solver_command();

// Exposed for tests: decodes accumulated `v`-line tokens in either output
// convention into a 1-based assignment.
std::optional<std::vector<std::uint8_t>> parse_value_tokens(const std::vector<std::string>& tokens,
                                                            int num_vars);

}  // namespace cssdec
