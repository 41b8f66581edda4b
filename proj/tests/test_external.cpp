#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "cssdec/css_code.hpp"
#include "cssdec/encoder.hpp"
#include "cssdec/external_solver.hpp"
#include "cssdec/rng.hpp"
#include "cssdec/solver.hpp"

using namespace cssdec;

namespace {

std::string stub_solver_path() {
  const char* env = std::getenv("CSSDEC_STUB_SOLVER");
  return env ? std::string(env) : std::string();
}

}  // namespace

TEST_CASE("v-line conventions parse to the same assignment") {
  auto signed_form = parse_value_tokens({"-1", "2", "-3"}, 3);
  auto binary_form = parse_value_tokens({"010"}, 3);
  REQUIRE(signed_form.has_value());
  REQUIRE(binary_form.has_value());
  CHECK(*signed_form == *binary_form);

  // Trailing zero terminator is tolerated in the signed form.
  auto with_zero = parse_value_tokens({"-1", "2", "-3", "0"}, 3);
  REQUIRE(with_zero.has_value());
  CHECK(*with_zero == *signed_form);

  // Split binary strings concatenate across v lines.
  auto split = parse_value_tokens({"01", "0"}, 3);
  REQUIRE(split.has_value());
  CHECK(*split == *binary_form);

  CHECK_FALSE(parse_value_tokens({}, 3).has_value());
  CHECK_FALSE(parse_value_tokens({"5"}, 3).has_value());  // out of range
}

TEST_CASE("command template must mention the wcnf placeholder") {
  WcnfFormula f;
  f.num_vars = 1;
  f.hard.push_back({{1}});
  CHECK_THROWS(run_external(f, "solver-without-placeholder"));
}

TEST_CASE("a scripted stub echoing a fixed model is parsed and verified") {
  // Fixture: fake solver printing a known optimum for x1 & !x2.
  std::string script = "/tmp/cssdec-fixture-solver.sh";
  {
    std::ofstream out(script);
    out << "#!/bin/sh\n"
           "echo 'c fixture'\n"
           "echo 's OPTIMUM FOUND'\n"
           "echo 'v 1 -2 0'\n";
  }
  REQUIRE(std::system(("chmod +x " + script).c_str()) == 0);

  WcnfFormula f;
  f.num_vars = 2;
  f.hard.push_back({{1}});
  f.soft.push_back({2.0, {{2}}});
  f.soft.push_back({1.0, {{-2}}});
  Assignment a = run_external(f, script + " {wcnf}");
  CHECK(a.status == SolveStatus::optimum);
  CHECK(a.values[1] == 1);
  CHECK(a.values[2] == 0);
  CHECK(a.objective == doctest::Approx(2.0));  // violated soft (x2), unquantized
  std::remove(script.c_str());
}

TEST_CASE("a model violating the hard clauses is a verification failure") {
  std::string script = "/tmp/cssdec-bad-solver.sh";
  {
    std::ofstream out(script);
    out << "#!/bin/sh\necho 's OPTIMUM FOUND'\necho 'v -1 0'\n";
  }
  REQUIRE(std::system(("chmod +x " + script).c_str()) == 0);
  WcnfFormula f;
  f.num_vars = 1;
  f.hard.push_back({{1}});
  CHECK_THROWS_WITH_AS(run_external(f, script + " {wcnf}"),
                       doctest::Contains("verification failure"), std::runtime_error);
  std::remove(script.c_str());
}

TEST_CASE("garbage output is an unparsable-output error") {
  WcnfFormula f;
  f.num_vars = 1;
  f.hard.push_back({{1}});
  CHECK_THROWS_WITH_AS(run_external(f, "echo nonsense; true {wcnf}"),
                       doctest::Contains("unparsable"), std::runtime_error);
}

TEST_CASE("bundled stub solver matches the embedded engine on steane instances") {
  std::string stub = stub_solver_path();
  if (stub.empty()) return;  // only meaningful under ctest

  CssCode steane = gen_color_666(3);
  Rng rng(31);
  for (int variant = 0; variant < 2; ++variant) {
    std::string cmd = stub + (variant ? " --v-bitstring {wcnf}" : " {wcnf}");
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> priors(steane.n);
      for (auto& p : priors) p = 0.02 + 0.45 * rng.uniform();
      BitVec e(steane.n);
      for (std::size_t j = 0; j < steane.n; ++j)
        if (rng.bernoulli(0.2)) e.set(j, true);
      BitVec s = steane.hz.mul(e);
      WcnfFormula f = build_capacity_wcnf(steane.hz, s, priors);

      Assignment embedded = solve_exact(f);
      Assignment external = run_external(f, cmd);
      REQUIRE(embedded.status == SolveStatus::optimum);
      REQUIRE(external.status == SolveStatus::optimum);
      double bound = static_cast<double>(steane.n) * 0.5 / 10000.0;
      CHECK(std::abs(embedded.objective - external.objective) <= bound + 1e-9);
    }
  }
}
