#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "djets/delta_module.hpp"
#include "djets/error.hpp"
#include "djets/random.hpp"
#include "djets/series_ode.hpp"
#include "oracles.hpp"

using namespace djets;

namespace {

constexpr int kN = 24;

DeltaModule scalar(const TSeries& a) { return DeltaModule(Matrix<TSeries>::Constant(1, 1, a)); }

Vector<TSeries> single(const TSeries& s) { return Vector<TSeries>::Constant(1, s); }

}  // namespace

TEST_CASE("duals") {
  CHECK(dual(scalar(0)).a(0, 0) == TSeries(0));
  CHECK(dual(scalar(1)).a(0, 0) == TSeries(-1));
  Sampler s(61);
  for (int trial = 0; trial < 30; ++trial) {
    Index d = s.integer(1, 4);
    DeltaModule m(s.polynomial_matrix(d, d, 2));
    CHECK(is_zero(Matrix<TSeries>(dual(dual(m)).a - m.a)));
  }
}

TEST_CASE("tensor products") {
  CHECK(tensor(scalar(1), scalar(2)).a(0, 0) == TSeries(3));
  Sampler s(62);
  DeltaModule n(s.polynomial_matrix(3, 3, 2));
  DeltaModule trivial(Matrix<TSeries>::Constant(2, 2, TSeries(0)));
  Matrix<TSeries> expected = kronecker(Matrix<TSeries>(Matrix<TSeries>::Identity(2, 2)), n.a);
  CHECK(is_zero(Matrix<TSeries>(tensor(trivial, n).a - expected)));
}

TEST_CASE("tensor derivation is Leibniz on pure tensors") {
  Sampler s(63);
  for (int trial = 0; trial < 30; ++trial) {
    Index dm = s.integer(1, 3), dn = s.integer(1, 3);
    DeltaModule m(s.polynomial_matrix(dm, dm, 2)), n(s.polynomial_matrix(dn, dn, 2));
    Vector<TSeries> a(dm), b(dn);
    for (Index i = 0; i < dm; ++i) a(i) = s.series(kN);
    for (Index i = 0; i < dn; ++i) b(i) = s.series(kN);
    Vector<TSeries> lhs = tensor(m, n).apply(kronecker(a, b));
    Vector<TSeries> rhs = kronecker(m.apply(a), b) + kronecker(a, n.apply(b));
    CHECK(is_zero(Vector<TSeries>(lhs - rhs)));
  }
}

TEST_CASE("horizontal sections") {
  auto z = horizontal_sections(scalar(0), kN);
  REQUIRE(z.size() == 1);
  CHECK(z[0](0) == TSeries(1));

  auto e = horizontal_sections(scalar(-1), kN);
  REQUIRE(e.size() == 1);
  CHECK(oracle::coefficients_are(e[0](0), oracle::exp_coefficients(1, kN)));

  Sampler s(64);
  for (int trial = 0; trial < 20; ++trial) {
    DeltaModule m(s.polynomial_matrix(3, 3, 2));
    auto h = horizontal_sections(m, kN);
    REQUIRE(h.size() == 3);
    for (const auto& c : h) CHECK(is_horizontal(m, c));
    oracle::Table t(3, std::vector<mpq_class>(3));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) t[i][j] = oracle::q(h[j](static_cast<Index>(i))[0]);
    CHECK(oracle::rank(t) == 3);
  }
}

TEST_CASE("pairing of horizontal elements") {
  Pairing one = pairing_phi(scalar(0), scalar(0), single(TSeries(1)), single(TSeries(1)));
  CHECK(one.horizontal);
  CHECK(one.value(0) == TSeries(1));

  // dual(A = 1) has horizontal exp(t); dual(A = -1) has exp(-t).
  Pairing p = pairing_phi(scalar(1), scalar(-1), single(exp_series(1, kN)), single(exp_series(-1, kN)));
  CHECK(p.horizontal);
  CHECK(p.value(0) == TSeries(1));

  Pairing q = pairing_phi(scalar(1), scalar(-1), single(exp_series(1, kN)), single(TSeries(1)));
  CHECK_FALSE(q.horizontal);
}

TEST_CASE("horizontals of a tensor product") {
  TensorHorizontalReport t = verify_tensor_horizontals(scalar(0), scalar(0), kN);
  CHECK(t.passed());
  CHECK(t.left_dim == 1);

  TensorHorizontalReport e = verify_tensor_horizontals(scalar(1), scalar(2), kN);
  CHECK(e.passed());
  CHECK(e.right_dim == 1);
  auto right = horizontal_sections(dual(tensor(scalar(1), scalar(2))), kN);
  CHECK(right[0](0) == exp_series(1, kN) * exp_series(2, kN));

  Sampler s(65);
  for (int trial = 0; trial < 10; ++trial) {
    DeltaModule m(s.polynomial_matrix(2, 2, 2)), n(s.polynomial_matrix(3, 3, 2));
    TensorHorizontalReport r = verify_tensor_horizontals(m, n, kN);
    CHECK(r.passed());
    CHECK(r.left_dim == 6);
    CHECK(r.right_dim == 6);
  }
}

TEST_CASE("product jet decomposition") {
  DVariety l1 = make_dvariety("L1", {"x"}, {}, {"x"});
  DVariety l2 = make_dvariety("L2", {"z"}, {}, {"2*z"});
  SharpPoint a1 = sharp_integrate(l1, {1}, kN), a2 = sharp_integrate(l2, {1}, kN);

  SUBCASE("embedding") {
    auto w1 = delta_jet_space(l1, a1, 1).horizontal, w2 = delta_jet_space(l2, a2, 1).horizontal;
    Vector<TSeries> v(2);
    v << w1[0](0), TSeries(0);
    ProductDecomposition d = product_jet_decompose(v, 1, 1, 1, w1, w2);
    CHECK(d.all_constant);
    CHECK(d.c1 == TSeries(0));
    CHECK(d.c_w[0] == TSeries(1));
    CHECK(d.c_w2[0] == TSeries(0));
    CHECK(d.c_ww[0] == TSeries(0));
  }

  SUBCASE("same factor twice") {
    ProductReport r = verify_product(l1, a1, l1, a1, 1);
    CHECK(r.dim_product == 2);
    REQUIRE(r.decompositions.size() == 2);
    for (const auto& d : r.decompositions) CHECK(d.all_constant);
  }

  SUBCASE("mixed index at order 2") {
    auto w1 = delta_jet_space(l1, a1, 2).horizontal, w2 = delta_jet_space(l2, a2, 2).horizontal;
    DVariety p = product(l1, l2);
    DeltaJetSpace pj = delta_jet_space(p, product_point(a1, a2), 2);
    REQUIRE(pj.dim_C() == 5);
    JetIndexSet lp(2, 2), l(1, 2);
    Index mixed = lp.find({1, 1});
    for (const auto& v : pj.horizontal) {
      ProductDecomposition d = product_jet_decompose(v, 1, 1, 2, w1, w2);
      CHECK(d.all_constant);
      // Only w (x) w' terms reach the mixed index, through w_(1) * w'_(1).
      TSeries expected(0);
      for (std::size_t i = 0; i < w1.size(); ++i)
        for (std::size_t j = 0; j < w2.size(); ++j)
          expected += d.c_ww[i * w2.size() + j] * w1[i](l.find({1})) * w2[j](l.find({1}));
      CHECK(v(mixed) == expected);
      // And the pure index (2,0) is reproduced by the c_w terms alone.
      TSeries pure(0);
      for (std::size_t i = 0; i < w1.size(); ++i) pure += d.c_w[i] * w1[i](l.find({2}));
      CHECK(v(lp.find({2, 0})) == pure);
    }
  }

  SUBCASE("non-horizontal input is rejected") {
    auto w1 = delta_jet_space(l1, a1, 1).horizontal, w2 = delta_jet_space(l2, a2, 1).horizontal;
    Vector<TSeries> v(2);
    v << TSeries(1), TSeries(0);
    CHECK_THROWS_AS(product_jet_decompose(v, 1, 1, 1, w1, w2), DecompositionFailure);
  }
}

TEST_CASE("product decomposition of the counterexample with a line") {
  DVariety x = make_dvariety("X", {"x", "y"}, {}, {"x^2 - y^2", "x^2 - x*y"});
  DVariety l = make_dvariety("L", {"z"}, {}, {"z"});
  SharpPoint a = sharp_integrate(x, {1, 2}, kN), b = sharp_integrate(l, {1}, kN);
  for (unsigned m = 1; m <= 2; ++m) {
    ProductReport r = verify_product(x, a, l, b, m);
    CHECK(r.decompositions.size() == r.dim_product);
    for (const auto& d : r.decompositions) {
      CHECK(d.all_constant);
      CHECK(d.residual.is_zero());
    }
  }
}
