#include <doctest.h>

#include <sstream>

#include "cssdec/css_code.hpp"
#include "cssdec/encoder.hpp"
#include "cssdec/solver.hpp"
#include "cssdec/wcnf_io.hpp"

using namespace cssdec;

namespace {

WcnfFormula steane_instance(bool strict) {
  CssCode steane = gen_color_666(3);
  BitVec e(steane.n);
  e.set(4, true);
  BitVec s = steane.hz.mul(e);
  return build_capacity_wcnf(steane.hz, s, std::vector<double>(steane.n, 0.1),
                             EncodeOptions{.strict3 = strict});
}

}  // namespace

TEST_CASE("classic dialect round trip preserves clauses, weights and varmap") {
  WcnfFormula f = quantize_weights(steane_instance(true), 10000);
  std::string text = wcnf_to_string(f, WcnfDialect::classic);
  CHECK(text.find("p wcnf ") != std::string::npos);
  CHECK(text.find("c varmap ") != std::string::npos);

  std::istringstream in(text);
  WcnfFormula back = read_wcnf(in);
  CHECK(back.num_vars == f.num_vars);
  REQUIRE(back.hard.size() == f.hard.size());
  REQUIRE(back.soft.size() == f.soft.size());
  for (std::size_t i = 0; i < f.hard.size(); ++i) CHECK(back.hard[i].lits == f.hard[i].lits);
  for (std::size_t i = 0; i < f.soft.size(); ++i) {
    CHECK(back.soft[i].first == f.soft[i].first);
    CHECK(back.soft[i].second.lits == f.soft[i].second.lits);
  }
  CHECK(back.var_map.n == f.var_map.n);
  CHECK(back.var_map.e_count == f.var_map.e_count);
  CHECK(back.var_map.a_begin == f.var_map.a_begin);
  CHECK(back.var_map.b_count == f.var_map.b_count);
  CHECK(back.quant_scale == 10000);
}

TEST_CASE("2022 dialect uses h-lines and no header") {
  WcnfFormula f = quantize_weights(steane_instance(false), 10000);
  std::string text = wcnf_to_string(f, WcnfDialect::fmt2022);
  CHECK(text.find("p wcnf") == std::string::npos);
  CHECK(text.find("h ") != std::string::npos);

  std::istringstream in(text);
  WcnfFormula back = read_wcnf(in);
  CHECK(back.num_vars == f.num_vars);  // inferred from the literals
  CHECK(back.hard.size() == f.hard.size());
  CHECK(back.soft.size() == f.soft.size());

  // Both dialects describe the same optimization problem.
  Assignment a = solve_exact(back);
  Assignment b = solve_exact(f);
  CHECK(a.objective == doctest::Approx(b.objective));
}

TEST_CASE("writer rejects non-integral weights") {
  WcnfFormula f = steane_instance(false);  // raw ln-ratio weights
  std::ostringstream out;
  CHECK_THROWS(write_wcnf(out, f, WcnfDialect::classic));
}

TEST_CASE("reader rejects malformed input") {
  {
    std::istringstream in("p wcnf x y z\n");
    CHECK_THROWS(read_wcnf(in));
  }
  {
    std::istringstream in("p wcnf 2 1 5\n5 1 2\n");  // missing terminator
    CHECK_THROWS(read_wcnf(in));
  }
  {
    std::istringstream in("h 1 0\n-3 2 0\n");  // negative soft weight
    CHECK_THROWS(read_wcnf(in));
  }
}

TEST_CASE("hard clauses are recognized by the top weight in classic files") {
  std::istringstream in(
      "p wcnf 3 3 100\n"
      "100 1 2 0\n"
      "7 -1 0\n"
      "100 -2 3 0\n");
  WcnfFormula f = read_wcnf(in);
  CHECK(f.hard.size() == 2);
  REQUIRE(f.soft.size() == 1);
  CHECK(f.soft[0].first == 7.0);
}
