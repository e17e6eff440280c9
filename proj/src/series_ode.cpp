#include "djets/series_ode.hpp"

#include <vector>

#include "djets/error.hpp"
#include "djets/linalg.hpp"

namespace djets {

TSeries exp_series(const Rational& c, int order) {
  if (order < 0) throw InsufficientPrecision("negative order");
  std::vector<Rational> coeffs(static_cast<std::size_t>(order) + 1);
  coeffs[0] = Rational(1);
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    coeffs[k] = coeffs[k - 1] * c / Rational(static_cast<long>(k));
  return TSeries(std::move(coeffs), order);
}

Matrix<TSeries> fundamental_matrix(const Matrix<TSeries>& a, int order) {
  if (a.rows() != a.cols()) throw DimensionError("fundamental_matrix needs a square matrix");
  if (order < 0) throw InsufficientPrecision("negative order");
  if (order > 0 && min_precision(a) < order - 1)
    throw InsufficientPrecision("coefficient matrix known to order " +
                                std::to_string(min_precision(a)) + ", need " +
                                std::to_string(order - 1));
  const Index n = a.rows();
  const auto steps = static_cast<std::size_t>(order);
  std::vector<Matrix<Rational>> ak;
  ak.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) ak.push_back(coefficient(a, k));

  std::vector<Matrix<Rational>> phi;
  phi.reserve(steps + 1);
  phi.push_back(Matrix<Rational>::Identity(n, n));
  for (std::size_t k = 0; k < steps; ++k) {
    Matrix<Rational> acc = Matrix<Rational>::Zero(n, n);
    for (std::size_t i = 0; i <= k; ++i) acc += ak[i] * phi[k - i];
    Rational inv = Rational(1) / Rational(static_cast<long>(k + 1));
    phi.push_back(acc * inv);
  }

  Matrix<TSeries> out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      std::vector<Rational> c(steps + 1);
      for (std::size_t k = 0; k <= steps; ++k) c[k] = phi[k](i, j);
      out(i, j) = TSeries(std::move(c), order);
    }
  }
  return out;
}

HorizontalTest horizontal_test(const Vector<TSeries>& v, const Matrix<TSeries>& a) {
  if (a.rows() != v.size() || a.cols() != v.size())
    throw DimensionError("horizontal_test: matrix and vector sizes disagree");
  HorizontalTest out;
  if (v.size() == 0) {
    out.horizontal = true;
    out.constants = Vector<Rational>(0);
    return out;
  }
  Vector<TSeries> residual = derive(v) - a * v;
  if (!is_zero(residual)) return out;
  int precision = min_precision(v);
  if (precision == TSeries::kExact) {
    int pa = min_precision(a);
    precision = pa == TSeries::kExact ? kDefaultPrecision : pa + 1;
  }
  Matrix<TSeries> phi = fundamental_matrix(a, precision);
  auto c = solve(phi, v);
  if (!c || !is_constant(*c)) return out;
  out.horizontal = true;
  out.constants = c->unaryExpr([](const TSeries& s) { return s[0]; });
  return out;
}

}  // namespace djets
