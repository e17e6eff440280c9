#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "djets/dvariety.hpp"
#include "djets/error.hpp"
#include "djets/parse.hpp"
#include "djets/random.hpp"
#include "djets/series_ode.hpp"
#include "oracles.hpp"

using namespace djets;

namespace {

const std::vector<std::string> x1{"x"};
const std::vector<std::string> xy{"x", "y"};

DVariety parabola() { return make_dvariety("P", xy, {"y - x^2"}, {"1", "2*x"}); }
DVariety counterexample() { return make_dvariety("X", xy, {}, {"x^2 - y^2", "x^2 - x*y"}); }
DVariety circle() { return make_dvariety("C", xy, {"x^2 + y^2 - 1"}, {"-y", "x"}); }

Vector<TSeries> vec(std::initializer_list<TSeries> xs) {
  Vector<TSeries> v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

// A first-order infinitesimal: value + eps * tangent, with eps^2 = 0.
struct Dual {
  TSeries value, tangent;
  Dual() = default;
  Dual(int c) : value(c), tangent(0) {}
  Dual(const Rational& c) : value(c), tangent(0) {}
  Dual(TSeries v, TSeries t) : value(std::move(v)), tangent(std::move(t)) {}
  Dual& operator+=(const Dual& o) {
    value += o.value;
    tangent += o.tangent;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    tangent = tangent * o.value + value * o.tangent;
    value *= o.value;
    return *this;
  }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
};

// Integrates x' = s(x) from a0 + eps*b0 by the same coefficient recursion the
// engine uses, but over dual numbers; returns the eps-part of the path.
std::vector<TSeries> flow_derivative(const DVariety& v, const std::vector<Rational>& a0,
                                     const std::vector<Rational>& b0, int order) {
  const std::size_t n = v.dimension();
  std::vector<std::vector<Rational>> a(n), b(n);
  for (std::size_t j = 0; j < n; ++j) {
    a[j].push_back(a0[j]);
    b[j].push_back(b0[j]);
  }
  for (int k = 0; k < order; ++k) {
    std::vector<Dual> point;
    for (std::size_t j = 0; j < n; ++j) point.emplace_back(TSeries(a[j], k), TSeries(b[j], k));
    for (std::size_t j = 0; j < n; ++j) {
      Dual s = v.section[j].evaluate(point);
      a[j].push_back(s.value[static_cast<std::size_t>(k)] / Rational(k + 1));
      b[j].push_back(s.tangent[static_cast<std::size_t>(k)] / Rational(k + 1));
    }
  }
  std::vector<TSeries> out;
  for (std::size_t j = 0; j < n; ++j) out.emplace_back(b[j], order);
  return out;
}

}  // namespace

TEST_CASE("prolongation equations") {
  CHECK(prolongation(xy, {}).empty());
  std::vector<std::string> all{"x", "y", "u_x", "u_y"};
  CHECK(prolongation_variables(xy) == std::vector<std::string>{"u_x", "u_y"});
  auto para = prolongation(xy, parabola().ideal);
  REQUIRE(para.size() == 2);
  CHECK(para[0] == parse_polynomial("y - x^2", all));
  CHECK(para[1] == parse_polynomial("u_y - 2*x*u_x", all));
  auto circ = prolongation(xy, circle().ideal);
  CHECK(circ[1] == parse_polynomial("2*x*u_x + 2*y*u_y", all));
}

TEST_CASE("section validation") {
  CHECK(validate_section(counterexample()).valid);
  CHECK(validate_section(parabola()).valid);
  CHECK(validate_section(circle()).valid);

  SectionCheck bad = validate_section(make_dvariety("B", xy, {"y - x^2"}, {"1", "1"}));
  CHECK_FALSE(bad.valid);
  REQUIRE(bad.residuals.size() == 1);
  CHECK(bad.residuals[0] == parse_polynomial("1 - 2*x", xy));

  CHECK_THROWS_AS(make_dvariety("A", xy, {}, {"x^2"}), ArityError);
}

TEST_CASE("section validation by sampling when the ideal is not triangular") {
  const std::vector<std::string> xyz{"x", "y", "z"};
  std::vector<std::vector<Rational>> samples{{1, 1, 1}, {1, -1, 1}, {2, 2, -2}};
  SectionCheck ok = validate_section(make_dvariety("S", xyz, {"x^2 - y^2", "x^2 - z^2"}, {"x", "y", "z"}), samples);
  CHECK(ok.valid);
  CHECK(ok.sampled_only);
  SectionCheck bad = validate_section(make_dvariety("S", xyz, {"x^2 - y^2", "x^2 - z^2"}, {"x", "2*y", "z"}), samples);
  CHECK_FALSE(bad.valid);
  CHECK_THROWS_AS(validate_section(make_dvariety("S", xyz, {"x^2 - y^2", "x^2 - z^2"}, {"x", "y", "z"})),
                  NonTriangular);
}

TEST_CASE("sharp points") {
  SharpPoint e = sharp_integrate(make_dvariety("E", x1, {}, {"x"}), {1}, 4);
  CHECK(e.precision == 4);
  CHECK(oracle::coefficients_are(e.coords[0], oracle::exp_coefficients(1, 4)));
  SharpPoint g = sharp_integrate(make_dvariety("R", x1, {}, {"x^2"}), {1}, 4);
  CHECK(oracle::coefficients_are(g.coords[0], {1, 1, 1, 1, 1}));
  SharpPoint eq = sharp_integrate(make_dvariety("Q", xy, {}, {"x - 1", "x*y"}), {1, 0}, 10);
  CHECK(eq.coords[0] == TSeries(1));
  CHECK(eq.coords[1] == TSeries(0));

  SharpPoint c = sharp_integrate(circle(), {Rational(3) / Rational(5), Rational(4) / Rational(5)}, 16);
  CHECK((c.coords[0] * c.coords[0] + c.coords[1] * c.coords[1]) == TSeries(1));

  CHECK_THROWS_AS(sharp_integrate(parabola(), {1, 2}, 8), PointNotOnVariety);
  CHECK_THROWS_AS(sharp_integrate(make_dvariety("B", xy, {"y - x^2"}, {"1", "1"}), {1, 1}, 8), PointNotOnVariety);
}

TEST_CASE("induced derivation matrices") {
  DVariety e = make_dvariety("E", x1, {}, {"x"});
  SharpPoint a = sharp_integrate(e, {2}, 10);
  Matrix<TSeries> d = induced_module_derivation(e, a, 1);
  CHECK(d(0, 0) == TSeries(1));

  DVariety k = make_dvariety("K", x1, {}, {"3"});
  CHECK(induced_module_derivation(k, sharp_integrate(k, {0}, 10), 1)(0, 0) == TSeries(0));

  DVariety x = counterexample();
  SharpPoint p = sharp_integrate(x, {1, 2}, 12);
  Matrix<TSeries> j = induced_module_derivation(x, p, 1);
  const TSeries &a1 = p.coords[0], &a2 = p.coords[1];
  CHECK(j(0, 0) == TSeries(2) * a1);
  CHECK(j(0, 1) == TSeries(-2) * a2);
  CHECK(j(1, 0) == TSeries(2) * a1 - a2);
  CHECK(j(1, 1) == -a1);
}

TEST_CASE("induced derivation obeys Leibniz modulo M^(m+1)") {
  Sampler s(51);
  std::vector<DVariety> vs{counterexample(), circle(), make_dvariety("A", xy, {}, {"x*y + 1", "y^2 - x"})};
  std::vector<std::vector<Rational>> starts{{1, 2}, {Rational(3) / Rational(5), Rational(4) / Rational(5)}, {1, 1}};
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t which = static_cast<std::size_t>(s.integer(0, 2));
    const DVariety& v = vs[which];
    SharpPoint a = sharp_integrate(v, starts[which], 12);
    unsigned m = static_cast<unsigned>(s.integer(1, 3));
    Exponent al{static_cast<unsigned>(s.integer(0, 2)), static_cast<unsigned>(s.integer(0, 2))};
    Exponent be{static_cast<unsigned>(s.integer(0, 2)), static_cast<unsigned>(s.integer(0, 2))};
    auto ma = MPoly<TSeries>::monomial(xy, al, s.series(12)), mb = MPoly<TSeries>::monomial(xy, be, s.series(12));
    MPoly<TSeries> lhs = apply_induced_derivation(v, a, m, truncated_product(ma, mb, m));
    MPoly<TSeries> rhs = truncated_product(apply_induced_derivation(v, a, m, ma), mb, m) +
                         truncated_product(ma, apply_induced_derivation(v, a, m, mb), m);
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("dual derivation formula (Dv)(mu) = delta(v(mu)) - v(d mu)") {
  Sampler s(52);
  DVariety x = counterexample();
  SharpPoint a = sharp_integrate(x, {1, 2}, 14);
  for (unsigned m = 1; m <= 3; ++m) {
    JetIndexSet lambda(2, m);
    Matrix<TSeries> d = induced_module_derivation(x, a, m);
    for (int trial = 0; trial < 30; ++trial) {
      Vector<TSeries> v(static_cast<Index>(lambda.size()));
      MPoly<TSeries> mu(xy);
      std::vector<TSeries> mu_c;
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        v(static_cast<Index>(i)) = s.series(14);
        mu_c.push_back(s.series(14));
        mu.add_term(lambda[i], mu_c.back());
      }
      auto pair = [&](const MPoly<TSeries>& f) {
        TSeries acc(0);
        for (std::size_t i = 0; i < lambda.size(); ++i) acc += v(static_cast<Index>(i)) * f.coefficient(lambda[i]);
        return acc;
      };
      Vector<TSeries> dv = apply_dual_derivation(d, v);
      TSeries lhs(0);
      for (std::size_t i = 0; i < lambda.size(); ++i) lhs += dv(static_cast<Index>(i)) * mu_c[i];
      TSeries rhs = pair(mu).derive() - pair(apply_induced_derivation(x, a, m, mu));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("delta jet spaces") {
  DVariety still = make_dvariety("Z", x1, {}, {"0"});
  DeltaJetSpace z = delta_jet_space(still, constant_point({5}, 12), 1);
  REQUIRE(z.dim_C() == 1);
  CHECK(z.horizontal[0](0) == TSeries(1));

  DVariety e = make_dvariety("E", x1, {}, {"x"});
  DeltaJetSpace ej = delta_jet_space(e, sharp_integrate(e, {1}, 16), 1);
  REQUIRE(ej.dim_C() == 1);
  // v' = 1 * v: the horizontal jet is a constant multiple of exp(t).
  Matrix<TSeries> one = Matrix<TSeries>::Constant(1, 1, TSeries(1));
  Vector<TSeries> expected = fundamental_matrix(one, 16).col(0);
  CHECK(ej.horizontal[0](0) == expected(0) * TSeries(ej.horizontal[0](0)[0]));

  DVariety x = counterexample();
  SharpPoint a = sharp_integrate(x, {1, 2}, 20);
  DeltaJetSpace xj = delta_jet_space(x, a, 1);
  CHECK(xj.dim_K() == 2);
  REQUIRE(xj.dim_C() == 2);
  const TSeries &ax = a.coords[0], &ay = a.coords[1];
  for (const auto& h : xj.horizontal) {
    const TSeries &u = h(0), &v = h(1);
    CHECK(u.derive() == TSeries(2) * (ax * u - ay * v));
    CHECK(v.derive() == TSeries(2) * ax * u - ay * u - ax * v);
  }
}

TEST_CASE("horizontal dimension equals jet dimension") {
  struct Case {
    DVariety v;
    std::vector<Rational> a;
  };
  std::vector<Case> cases{{parabola(), {1, 1}},
                          {counterexample(), {1, 2}},
                          {circle(), {Rational(3) / Rational(5), Rational(4) / Rational(5)}},
                          {make_dvariety("A2", xy, {}, {"x", "2*y"}), {1, 1}}};
  for (const auto& c : cases)
    for (unsigned m = 1; m <= 2; ++m) {
      DeltaJetSpace d = delta_jet_space(c.v, sharp_integrate(c.v, c.a, 20), m);
      CHECK(d.dim_C() == d.dim_K());
      for (const auto& h : d.horizontal) {
        CHECK(is_zero(Vector<TSeries>(d.jets.equations * h)));
        CHECK(is_zero(apply_dual_derivation(d.derivation, h)));
      }
    }
}

TEST_CASE("jets of the constant points") {
  DeltaJetSpace p = constants_variety_jets(xy, parabola().ideal, {1, 1}, 1);
  REQUIRE(p.dim_C() == 1);
  CHECK(is_constant(p.horizontal[0]));
  CHECK(p.horizontal[0](0) == TSeries(1));
  CHECK(p.horizontal[0](1) == TSeries(2));

  DeltaJetSpace l = constants_variety_jets(x1, {}, {0}, 2);
  CHECK(l.dim_C() == 2);
  for (const auto& h : l.horizontal) CHECK(is_constant(h));

  Rational c = Rational(-7) / Rational(2);
  DeltaJetSpace diag = constants_variety_jets(xy, {parse_polynomial("x - y", xy)}, {c, c}, 1);
  REQUIRE(diag.dim_C() == 1);
  CHECK(diag.horizontal[0](0) == TSeries(1));
  CHECK(diag.horizontal[0](1) == TSeries(1));
}

TEST_CASE("flow derivatives are horizontal tangent jets") {
  struct Case {
    DVariety v;
    std::vector<Rational> a, b;
  };
  std::vector<Case> cases{{parabola(), {1, 1}, {1, 2}},
                          {counterexample(), {1, 2}, {3, -1}},
                          {circle(), {Rational(3) / Rational(5), Rational(4) / Rational(5)}, {-4, 3}}};
  for (const auto& c : cases) {
    const int n = 18;
    SharpPoint a = sharp_integrate(c.v, c.a, n);
    std::vector<TSeries> b = flow_derivative(c.v, c.a, c.b, n);
    Vector<TSeries> jet(static_cast<Index>(b.size()));
    for (std::size_t j = 0; j < b.size(); ++j) jet(static_cast<Index>(j)) = b[j];
    DeltaJetSpace d = delta_jet_space(c.v, a, 1);
    CHECK(is_zero(apply_dual_derivation(d.derivation, jet)));
    CHECK(is_zero(Vector<TSeries>(d.jets.equations * jet)));
    SpanCheck in = constant_span_contains(d.horizontal, {jet});
    CHECK(in.ok());
  }
}

TEST_CASE("products") {
  DVariety p = product(parabola(), counterexample());
  CHECK(p.vars == std::vector<std::string>{"x", "y", "x_2", "y_2"});
  CHECK(p.ideal.size() == 1);
  CHECK(p.section[2] == parse_polynomial("x_2^2 - y_2^2", p.vars));
  CHECK(validate_section(p).valid);
  SharpPoint a = product_point(sharp_integrate(parabola(), {1, 1}, 10), sharp_integrate(counterexample(), {1, 2}, 8));
  CHECK(a.precision == 8);
  CHECK(a.coords.size() == 4);
}
