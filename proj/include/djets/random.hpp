#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "djets/mpoly.hpp"
#include "djets/scalar.hpp"

namespace djets {

/// Seeded generator of small random exact objects for the property suites.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(int span = 5, int max_den = 4) {
    return Rational(integer(-span, span)) / Rational(integer(1, max_den));
  }

  Rational nonzero_rational(int span = 5, int max_den = 4) {
    Rational r;
    do {
      r = rational(span, max_den);
    } while (r.is_zero());
    return r;
  }

  /// Up to `terms` monomials of total degree <= max_degree.
  RPoly polynomial(const std::vector<std::string>& vars, unsigned max_degree, int terms = 4) {
    RPoly p(vars);
    int count = integer(1, terms);
    for (int k = 0; k < count; ++k) {
      Exponent e(vars.size(), 0);
      unsigned budget = static_cast<unsigned>(integer(0, static_cast<int>(max_degree)));
      for (unsigned d = 0; d < budget && !vars.empty(); ++d) ++e[static_cast<std::size_t>(integer(0, static_cast<int>(vars.size()) - 1))];
      p.add_term(std::move(e), rational());
    }
    return p;
  }

  /// Exact polynomial in t of degree <= max_degree.
  TSeries polynomial_series(unsigned max_degree) {
    std::vector<Rational> c;
    for (unsigned k = 0; k <= max_degree; ++k) c.push_back(rational());
    return TSeries::exact(std::move(c));
  }

  /// Truncated series known through t^precision; a unit when asked.
  TSeries series(int precision, bool unit = false) {
    std::vector<Rational> c;
    for (int k = 0; k <= precision; ++k) c.push_back(rational());
    if (unit && c[0].is_zero()) c[0] = nonzero_rational();
    return TSeries(std::move(c), precision);
  }

  Matrix<TSeries> polynomial_matrix(Index rows, Index cols, unsigned max_degree) {
    Matrix<TSeries> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = polynomial_series(max_degree);
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace djets
