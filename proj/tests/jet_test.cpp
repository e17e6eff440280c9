#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "djets/error.hpp"
#include "djets/jet.hpp"
#include "djets/linalg.hpp"
#include "djets/parse.hpp"
#include "djets/random.hpp"
#include "oracles.hpp"

using namespace djets;

namespace {

const std::vector<std::string> x1{"x"};
const std::vector<std::string> xy{"x", "y"};
const std::vector<std::string> xyz{"x", "y", "z"};
const std::vector<Rational> one_one{1, 1};

RPoly P(const std::string& s, const std::vector<std::string>& vars) { return parse_polynomial(s, vars); }

Matrix<Rational> rows(std::initializer_list<std::initializer_list<int>> r) {
  Matrix<Rational> m(static_cast<Index>(r.size()), static_cast<Index>(r.begin()->size()));
  Index i = 0;
  for (const auto& row : r) {
    Index j = 0;
    for (int v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

oracle::Table table(const Matrix<Rational>& m) {
  oracle::Table t(static_cast<std::size_t>(m.rows()), std::vector<mpq_class>(static_cast<std::size_t>(m.cols())));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = oracle::q(m(i, j));
  return t;
}

}  // namespace

TEST_CASE("index set order") {
  JetIndexSet l(2, 2);
  REQUIRE(l.size() == 5);
  CHECK(l[0] == Exponent{1, 0});
  CHECK(l[1] == Exponent{0, 1});
  CHECK(l[2] == Exponent{2, 0});
  CHECK(l[3] == Exponent{1, 1});
  CHECK(l[4] == Exponent{0, 2});
  CHECK(l.find({1, 1}) == 3);
  CHECK(l.find({3, 0}) == -1);
}

TEST_CASE("jet equations") {
  Matrix<Rational> none = jet_equations<Rational>({}, {Rational(3), Rational(-1)}, 1);
  CHECK(none.rows() == 0);
  CHECK(jet_space<Rational>({}, {Rational(3), Rational(-1)}, 1).dim() == 2);

  CHECK(jet_equations<Rational>({P("y - x^2", xy)}, one_one, 1) == rows({{-2, 1}}));

  // Order 2: the classical row carries the Hasse coefficients of y - x^2 at
  // (1,1), i.e. its Taylor coefficients; the shifted rows vanish on
  // (y - x^2)(x - 1) and (y - x^2)(y - 1).
  auto t = taylor_coeffs(P("y - x^2", xy), one_one, 2);
  Matrix<Rational> e2 = jet_equations<Rational>({P("y - x^2", xy)}, one_one, 2);
  REQUIRE(e2.rows() == 3);
  JetIndexSet l(2, 2);
  for (std::size_t c = 0; c < l.size(); ++c) CHECK(e2(0, static_cast<Index>(c)) == t.at(l[c]));
  CHECK(e2(0, 2) == Rational(-1));
  CHECK(e2(0, 3) == Rational(0));
  CHECK(e2(0, 4) == Rational(0));
  CHECK(e2 == rows({{-2, 1, -1, 0, 0}, {0, 0, -2, 1, 0}, {0, 0, 0, -2, 1}}));

  CHECK_THROWS_AS(jet_equations<Rational>({P("y - x^2", xy)}, {Rational(1), Rational(2)}, 1), PointNotOnVariety);
}

TEST_CASE("jet spaces") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (unsigned m = 1; m <= 3; ++m) {
      std::vector<Rational> a(n, Rational(2));
      std::size_t choose = 1;  // binom(n + m, m)
      for (std::size_t k = 1; k <= m; ++k) choose = choose * (n + k) / k;
      CHECK(jet_space<Rational>({}, a, m).dim() == choose - 1);
    }
  auto para = jet_space<Rational>({P("y - x^2", xy)}, one_one, 1);
  REQUIRE(para.dim() == 1);
  CHECK(para.basis[0](0) == Rational(1));
  CHECK(para.basis[0](1) == Rational(2));
  CHECK(jet_space<Rational>({}, one_one, 2).dim() == 5);
  CHECK(jet_space<Rational>({P("y - x^2", xy)}, one_one, 2).dim() == 2);
}

TEST_CASE("dimension law against an independent rank") {
  Sampler s(41);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> a{s.rational(), s.rational(), s.rational()};
    std::vector<RPoly> gens;
    for (int g = s.integer(0, 2); g > 0; --g) {
      RPoly p = s.polynomial(xyz, 3, 4);
      gens.push_back(p - RPoly::constant(xyz, p.evaluate(a)));
    }
    unsigned m = static_cast<unsigned>(s.integer(1, 3));
    Matrix<Rational> e = jet_equations(gens, a, m);
    auto js = jet_space(gens, a, m);
    CHECK(static_cast<int>(js.dim()) == static_cast<int>(js.lambda.size()) - oracle::rank(table(e)));
    for (const auto& v : js.basis) CHECK(is_zero(Vector<Rational>(e * v)));
  }
}

TEST_CASE("jets of morphisms") {
  std::vector<RPoly> id{P("x", xy), P("y", xy)};
  for (unsigned m = 1; m <= 3; ++m) {
    Matrix<Rational> j = jet_of_morphism(id, std::vector<Rational>{2, -1}, m);
    CHECK(j == Matrix<Rational>::Identity(j.rows(), j.cols()));
  }
  CHECK(jet_of_morphism({P("x^2", x1)}, std::vector<Rational>{1}, 1) == rows({{2}}));
  // x^2 - 1 = 2h + h^2 and (x^2 - 1)^2 = 4h^2 + O(h^3).
  CHECK(jet_of_morphism({P("x^2", x1)}, std::vector<Rational>{1}, 2) == rows({{2, 1}, {0, 4}}));
}

TEST_CASE("functoriality on random polynomial maps") {
  Sampler s(42);
  const std::vector<std::string> uvw{"u", "v", "w"};
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = static_cast<std::size_t>(s.integer(1, 3));
    std::vector<std::string> src(xyz.begin(), xyz.begin() + static_cast<long>(n));
    std::vector<std::string> mid(uvw.begin(), uvw.begin() + static_cast<long>(n));
    std::vector<RPoly> f, g, gf;
    for (std::size_t i = 0; i < n; ++i) f.push_back(s.polynomial(src, 2, 3));
    for (std::size_t i = 0; i < n; ++i) g.push_back(s.polynomial(mid, 2, 3));
    for (const auto& gi : g) gf.push_back(gi.substitute(f));
    std::vector<Rational> a, fa;
    for (std::size_t i = 0; i < n; ++i) a.push_back(s.rational());
    for (const auto& fi : f) fa.push_back(fi.evaluate(a));
    unsigned m = static_cast<unsigned>(s.integer(1, 3));
    CHECK(jet_of_morphism(gf, a, m) == jet_of_morphism(g, fa, m) * jet_of_morphism(f, a, m));
  }
}

TEST_CASE("squaring map is a jet isomorphism at a unit series point") {
  TSeries a = TSeries({1, 1, Rational(1) / Rational(3)}, 12);
  for (unsigned m = 1; m <= 3; ++m) {
    Matrix<TSeries> j = jet_of_morphism({P("x^2", x1)}, std::vector<TSeries>{a}, m);
    CHECK(rank(j) == static_cast<Index>(m));
  }
}

TEST_CASE("jets between explicit jet spaces") {
  auto para = jet_space<Rational>({P("y - x^2", xy)}, one_one, 1);
  auto line = jet_space<Rational>({}, std::vector<Rational>{1}, 1);
  Matrix<Rational> proj = jet_of_morphism({P("x", xy)}, para, line);
  CHECK(proj == rows({{1, 0}}));
  auto elsewhere = jet_space<Rational>({}, std::vector<Rational>{2}, 1);
  CHECK_THROWS_AS(jet_of_morphism({P("x", xy)}, para, elsewhere), BasePointMismatch);
  // The lift x -> (x, x^2) lands in the parabola's jet space.
  Matrix<Rational> lift = jet_of_morphism({P("x", x1), P("x^2", x1)}, line, para);
  CHECK(lift == rows({{1}, {2}}));
  // A map whose image jets leave the target's jet space.
  CHECK_THROWS_AS(jet_of_morphism({P("x", x1), P("1", x1)}, line, para), InvarianceViolation);
}
