#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "djets/diffpoly.hpp"
#include "djets/dvariety.hpp"
#include "djets/error.hpp"
#include "djets/parse.hpp"
#include "djets/random.hpp"

using namespace djets;

namespace {

const std::vector<std::string> xy{"x", "y"};
const std::vector<std::string> xuv{"x", "u", "v"};

DiffPoly var(const std::vector<std::string>& base, std::size_t j, unsigned k = 0) {
  return DiffPoly::variable(base, j, k);
}

// The restricted system on the free coordinates x, u, v.
SubstitutionSystem w_rules(const std::string& dv = "x*(u - v)") {
  SubstitutionSystem s(xuv);
  s.set_derivative(0, RPoly(xuv));
  s.set_derivative(1, parse_polynomial("2*x*(u - v)", xuv));
  s.set_derivative(2, parse_polynomial(dv, xuv));
  return s;
}

DiffPoly random_diffpoly(Sampler& s, const std::vector<std::string>& base, unsigned max_order) {
  DiffPoly p = DiffPoly::constant(base, s.rational());
  for (int k = s.integer(1, 4); k > 0; --k) {
    DiffPoly term = DiffPoly::constant(base, s.nonzero_rational());
    for (int f = s.integer(1, 3); f > 0; --f)
      term = term * var(base, static_cast<std::size_t>(s.integer(0, static_cast<int>(base.size()) - 1)),
                        static_cast<unsigned>(s.integer(0, static_cast<int>(max_order))));
    p += term;
  }
  return p;
}

// Evaluates a differential polynomial along a series point by sending the
// symbol x_j^(k) to the k-th derivative of the j-th coordinate.
TSeries along(const DiffPoly& p, const std::vector<TSeries>& point) {
  std::vector<TSeries> symbols;
  const std::size_t n = point.size();
  std::vector<TSeries> current = point;
  for (unsigned k = 0; k <= p.max_order(); ++k) {
    for (std::size_t j = 0; j < n; ++j) symbols.push_back(current[j]);
    for (auto& c : current) c = c.derive();
  }
  return p.poly().evaluate(symbols);
}

}  // namespace

TEST_CASE("total derivative") {
  DiffPoly x = var(xy, 0), y = var(xy, 1);
  CHECK(total_derivative(x * x) == Rational(2) * x * var(xy, 0, 1));
  CHECK(total_derivative(x * y) == var(xy, 0, 1) * y + x * var(xy, 1, 1));
  std::vector<std::string> uv{"u", "v"};
  CHECK(total_derivative(var(uv, 0) - var(uv, 1)) == var(uv, 0, 1) - var(uv, 1, 1));
  CHECK(total_derivative(DiffPoly::constant(xy, 5)).is_zero());
  CHECK(total_derivative(x * x).to_string() == "2*x*x'");
}

TEST_CASE("total derivative is a derivation") {
  Sampler s(31);
  for (int trial = 0; trial < 100; ++trial) {
    DiffPoly p = random_diffpoly(s, xy, 2), q = random_diffpoly(s, xy, 2);
    CHECK(total_derivative(p * q) == total_derivative(p) * q + p * total_derivative(q));
    CHECK(total_derivative(p + q) == total_derivative(p) + total_derivative(q));
  }
}

TEST_CASE("reduction by the restricted rules") {
  SubstitutionSystem s = w_rules();
  DiffPoly w = var(xuv, 1) - var(xuv, 2);
  CHECK(reduce(total_derivative(w), s) == parse_polynomial("x*(u - v)", xuv));
  CHECK(reduce(var(xuv, 0, 1), s).is_zero());
  CHECK(reduce(var(xy, 0), SubstitutionSystem(xy)) == RPoly::variable(xy, 0));
}

TEST_CASE("log-derivative constancy identity") {
  KernelIdentity k = log_derivative_constancy_identity(w_rules());
  CHECK(k.holds);
  CHECK(k.normal_form.is_zero());
  CHECK(k.ratio_residual.is_zero());

  KernelIdentity bad = log_derivative_constancy_identity(w_rules("x*u"));
  CHECK_FALSE(bad.holds);
  CHECK_FALSE(bad.normal_form.is_zero());

  SubstitutionSystem still(xuv);
  for (std::size_t j = 0; j < 3; ++j) still.set_derivative(j, RPoly(xuv));
  CHECK(log_derivative_constancy_identity(still).holds);
}

TEST_CASE("hand reduction of the perturbed system") {
  // With delta u = 2x(u - v), delta v = x u and delta x = 0:
  //   delta w = x u - 2 x v, delta^2 w = x (2x(u - v)) - 2x (x u) = -2x^2 v,
  // so delta^2 w * w - (delta w)^2 = -2x^2 v (u - v) - x^2 (u - 2v)^2
  //                                 = -x^2 u^2 + 2 x^2 u v - 2 x^2 v^2.
  KernelIdentity bad = log_derivative_constancy_identity(w_rules("x*u"));
  CHECK(bad.normal_form == parse_polynomial("-x^2*u^2 + 2*x^2*u*v - 2*x^2*v^2", xuv));
}

TEST_CASE("eliminations and equations") {
  std::vector<std::string> v4{"x", "y", "u", "v"};
  SubstitutionSystem s(v4);
  s.add_equation(RPoly::variable(v4, 0), RPoly::variable(v4, 1));
  CHECK(s.is_eliminated(1));
  CHECK_FALSE(s.is_eliminated(0));
  CHECK(s.normal_form(parse_polynomial("x*y - y^2", v4)).is_zero());

  SubstitutionSystem cyc(xy);
  cyc.add_elimination(0, RPoly::variable(xy, 1) + RPoly::constant(xy, 1));
  cyc.add_elimination(1, RPoly::variable(xy, 0));
  CHECK_THROWS_AS(cyc.normal_form(RPoly::variable(xy, 0)), NonTriangular);

  SubstitutionSystem none(xy);
  CHECK_THROWS_AS(none.derivative(RPoly::variable(xy, 0)), MissingRule);
  CHECK_THROWS_AS(none.index_of("w"), UnknownName);
  CHECK_THROWS_AS(none.add_equation(parse_polynomial("x*y", xy), RPoly::variable(xy, 0)), NonTriangular);
}

TEST_CASE("reduce is idempotent on its output") {
  Sampler s(32);
  SubstitutionSystem sys = w_rules();
  for (int trial = 0; trial < 100; ++trial) {
    DiffPoly p = random_diffpoly(s, xuv, 3);
    RPoly r = reduce(p, sys);
    CHECK(reduce(DiffPoly::from_poly(r), sys) == r);
  }
}

TEST_CASE("rewriting commutes with evaluation along sharp points") {
  Sampler s(33);
  DVariety x = make_dvariety("X", xy, {}, {"x^2 - y^2", "x^2 - x*y"});
  SubstitutionSystem sys(xy);
  for (std::size_t j = 0; j < 2; ++j) sys.set_derivative(j, x.section[j]);
  SharpPoint a = sharp_integrate(x, {1, 2}, 20);
  for (int trial = 0; trial < 100; ++trial) {
    DiffPoly p = random_diffpoly(s, xy, 3);
    TSeries lhs = along(p, a.coords);
    TSeries rhs = reduce(p, sys).evaluate(a.coords);
    CHECK(lhs.precision() >= 17);
    CHECK(lhs == rhs);
  }
}
