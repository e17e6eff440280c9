#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "djets/dsl.hpp"
#include "djets/error.hpp"
#include "djets/random.hpp"

using namespace djets;

namespace {

const char* kX = R"(
dvariety X {
  vars: x, y;
  ideal: [];
  section: [x^2 - y^2, x^2 - x*y];
}
restrict W on X with u, v { x = y; delta x = 0 }
point p on X { 1, 2 }
point q on X { integrate from p }
)";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("the quadratic field document") {
  DslDocument d = parse_dsl(kX);
  REQUIRE(d.varieties.size() == 1);
  const DVariety& x = d.variety("X");
  CHECK(x.vars == std::vector<std::string>{"x", "y"});
  CHECK(x.ideal.empty());
  CHECK(x.section[1].to_string() == "x^2 - x*y");
  CHECK(validate_section(x).valid);
  CHECK(d.initial_value("q") == std::vector<Rational>{1, 2});

  LinearDVariety w = apply_restriction(d, d.restriction("W"));
  CHECK(w.equations() ==
        std::vector<std::string>{"x = y", "delta x = 0", "delta u = 2*x*u - 2*x*v", "delta v = x*u - x*v"});
}

TEST_CASE("empty and comment-only input") {
  CHECK(parse_dsl("").empty());
  CHECK(parse_dsl("# nothing here\n\n").empty());
}

TEST_CASE("arity errors") {
  CHECK_THROWS_AS(parse_dsl("dvariety A { vars: x, y; ideal: []; section: [x^2] }"), ArityError);
  CHECK_THROWS_AS(parse_dsl("dvariety A { vars: x; section: [x] } point p on A { 1, 2 }"), ArityError);
  CHECK_THROWS_AS(parse_dsl("dvariety A { vars: x; section: [x] } restrict R on A with u, v { x = 0 }"),
                  ArityError);
}

TEST_CASE("parse errors carry a location") {
  try {
    parse_dsl("dvariety A {\n  vars: x;\n  section: [x +];\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 16);
  }
  CHECK_THROWS_AS(parse_dsl("dvariety A { vars: x; }"), ParseError);
  CHECK_THROWS_AS(parse_dsl("manifold A {}"), ParseError);
  CHECK_THROWS_AS(parse_dsl("dvariety A { vars: x; section: [x] } point p on A { x }"), UnknownName);
  CHECK_THROWS_AS(parse_dsl("dvariety A { vars: x; section: [x] } point p on A { 1 $ }"), ParseError);
}

TEST_CASE("names must resolve") {
  CHECK_THROWS_AS(parse_dsl("point p on Nowhere { 1 }"), UnknownName);
  CHECK_THROWS_AS(parse_dsl("restrict R on Nowhere { x = 0 }"), UnknownName);
  CHECK_THROWS_AS(parse_dsl("dvariety A { vars: x; section: [x + w] }"), UnknownName);
  CHECK_THROWS_AS(parse_dsl("dvariety A { vars: x; section: [x] } restrict R on A { delta w = 0 }"),
                  UnknownName);
  CHECK_THROWS_AS(parse_dsl("dvariety A { vars: x; section: [x] } point q on A { integrate from p }"),
                  UnknownName);
  DslDocument d = parse_dsl(kX);
  CHECK_THROWS_AS(d.point("nope"), UnknownName);
}

TEST_CASE("restrictions without a target keep their own variables") {
  DslDocument d = parse_dsl("restrict R { y = x + 1; delta z = y*z }");
  REQUIRE(d.restrictions.size() == 1);
  CHECK(d.restrictions[0].rules[1].delta);
  CHECK(d.restrictions[0].rules[1].rhs.to_string() == "y*z");
  CHECK(parse_dsl(print_dsl(d)) == d);
  CHECK_THROWS_AS(apply_restriction(d, d.restrictions[0]), UnknownName);
}

TEST_CASE("print and parse round trip") {
  DslDocument d = parse_dsl(kX);
  std::string printed = print_dsl(d);
  DslDocument again = parse_dsl(printed);
  CHECK(again == d);
  CHECK(print_dsl(again) == printed);
}

TEST_CASE("round trip on the corpus") {
  for (const auto& entry : std::filesystem::directory_iterator(DJETS_CORPUS_DIR)) {
    CAPTURE(entry.path().string());
    DslDocument d = parse_dsl(slurp(entry.path()));
    CHECK(parse_dsl(print_dsl(d)) == d);
  }
}

TEST_CASE("round trip on random documents") {
  Sampler s(81);
  const std::vector<std::string> names{"x", "y", "z"};
  for (int trial = 0; trial < 100; ++trial) {
    DslDocument d;
    std::size_t n = static_cast<std::size_t>(s.integer(1, 3));
    std::vector<std::string> vars(names.begin(), names.begin() + static_cast<long>(n));
    std::vector<RPoly> ideal, section;
    for (int k = s.integer(0, 2); k > 0; --k) ideal.push_back(s.polynomial(vars, 3));
    for (std::size_t k = 0; k < n; ++k) section.push_back(s.polynomial(vars, 3));
    d.varieties.emplace_back("V", vars, ideal, section);
    PointDecl p{"p", "V", {}, std::nullopt};
    for (std::size_t k = 0; k < n; ++k) p.coords.push_back(s.rational());
    d.points.push_back(p);
    d.points.push_back({"q", "V", {}, std::string("p")});
    Restriction r{"R", std::string("V"), {}, {}};
    std::vector<std::string> bundle = vars;
    for (const auto& v : vars) bundle.push_back("d" + v);
    r.rules.push_back({true, vars[0], s.polynomial(bundle, 2)});
    d.restrictions.push_back(r);
    d.validate();
    std::string printed = print_dsl(d);
    CAPTURE(printed);
    CHECK(parse_dsl(printed) == d);
  }
}

TEST_CASE("session configuration bounds") {
  SessionConfig c;
  CHECK_NOTHROW(c.validate());
  c.precision = 3;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.precision = 4;
  c.order = 4;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.order = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.order = 3;
  CHECK_NOTHROW(c.validate());
}
