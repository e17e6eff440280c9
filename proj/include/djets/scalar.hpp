#pragma once

#include <Eigen/Core>

#include "djets/rational.hpp"
#include "djets/tseries.hpp"

namespace Eigen {

template <>
struct NumTraits<djets::Rational> : GenericNumTraits<djets::Rational> {
  using Real = djets::Rational;
  using NonInteger = djets::Rational;
  using Nested = djets::Rational;
  using Literal = djets::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<djets::TSeries> : GenericNumTraits<djets::TSeries> {
  using Real = djets::TSeries;
  using NonInteger = djets::TSeries;
  using Nested = djets::TSeries;
  using Literal = djets::TSeries;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 50,
    MulCost = 400
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace djets {

/// Working truncation order when nothing else is specified.
inline constexpr int kDefaultPrecision = 24;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

template <class S>
bool is_zero(const Matrix<S>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class S>
bool is_zero(const Vector<S>& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) return false;
  return true;
}

inline Matrix<TSeries> derive(const Matrix<TSeries>& m) {
  return m.unaryExpr([](const TSeries& s) { return s.derive(); });
}

inline Vector<TSeries> derive(const Vector<TSeries>& v) {
  return v.unaryExpr([](const TSeries& s) { return s.derive(); });
}

inline bool is_constant(const Vector<TSeries>& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_constant()) return false;
  return true;
}

/// Smallest precision among the entries (kExact when empty).
template <class Derived>
int min_precision(const Eigen::MatrixBase<Derived>& m) {
  int p = TSeries::kExact;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) p = std::min(p, m(i, j).precision());
  return p;
}

template <class Derived>
Rational max_abs_coefficient(const Eigen::MatrixBase<Derived>& m) {
  Rational r;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r = std::max(r, max_abs_coefficient(m(i, j)));
  return r;
}

inline Vector<TSeries> to_series(const Vector<Rational>& v, int precision) {
  return v.unaryExpr([precision](const Rational& r) { return TSeries::constant(r, precision); });
}

/// Coefficient of t^k of every entry.
inline Matrix<Rational> coefficient(const Matrix<TSeries>& m, std::size_t k) {
  return m.unaryExpr([k](const TSeries& s) { return s[k]; });
}

}  // namespace djets
