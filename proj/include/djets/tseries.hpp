#pragma once

#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "djets/rational.hpp"

namespace djets {

/// Truncated power series in t over Q, modelling the differential field
/// (K, d/dt) whose constants are exactly Q.
///
/// A series is either *truncated*, knowing coefficients 0..precision(), or
/// *exact*, a polynomial in t known to all orders (precision() == kExact).
/// Exact series arise from literals; every arithmetic result carries the
/// smallest precision its inputs guarantee.
class TSeries {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max();

  TSeries() = default;
  TSeries(int c) : TSeries(Rational(c)) {}
  TSeries(const Rational& c);

  /// Truncated series with the given coefficients, known through t^precision.
  TSeries(std::vector<Rational> coeffs, int precision);

  static TSeries exact(std::vector<Rational> coeffs);
  static TSeries constant(const Rational& c, int precision);
  /// The series t itself.
  static TSeries variable(int precision);

  int precision() const { return precision_; }
  bool is_exact() const { return precision_ == kExact; }

  /// Coefficient of t^k; zero past the stored coefficients.
  const Rational& operator[](std::size_t k) const;
  const std::vector<Rational>& coefficients() const { return c_; }

  /// All known coefficients vanish.
  bool is_zero() const;
  /// Coefficients 1..precision vanish.
  bool is_constant() const;
  /// Nonzero constant term.
  bool is_unit() const { return !(*this)[0].is_zero(); }

  /// d/dt; a truncated input of precision N yields precision N-1.
  TSeries derive() const;
  TSeries truncate(int precision) const;
  TSeries inverse() const;

  std::string to_string() const;

  TSeries& operator+=(const TSeries& o);
  TSeries& operator-=(const TSeries& o);
  TSeries& operator*=(const TSeries& o);
  TSeries& operator/=(const TSeries& o);

  friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
  friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
  friend TSeries operator*(TSeries a, const TSeries& b) { return a *= b; }
  friend TSeries operator/(TSeries a, const TSeries& b) { return a /= b; }
  friend TSeries operator-(const TSeries& a);

  /// Agreement to the common guaranteed precision.
  friend bool operator==(const TSeries& a, const TSeries& b) { return (a - b).is_zero(); }

  friend std::ostream& operator<<(std::ostream& os, const TSeries& s) {
    return os << s.to_string();
  }

 private:
  void normalize();

  std::vector<Rational> c_;
  int precision_ = kExact;
};

inline bool is_zero(const TSeries& s) { return s.is_zero(); }
inline bool is_unit(const TSeries& s) { return s.is_unit(); }
inline TSeries derive(const TSeries& s) { return s.derive(); }

/// Largest absolute value among the known coefficients ("0" for a series
/// that vanishes to its precision).
Rational max_abs_coefficient(const TSeries& s);

}  // namespace djets
