#include "djets/tseries.hpp"

#include <algorithm>
#include <sstream>

#include "djets/error.hpp"

namespace djets {

namespace {

const Rational& zero_rational() {
  static const Rational z;
  return z;
}

int min_precision(int a, int b) { return std::min(a, b); }

}  // namespace

TSeries::TSeries(const Rational& c) : c_{c} { normalize(); }

TSeries::TSeries(std::vector<Rational> coeffs, int precision)
    : c_(std::move(coeffs)), precision_(precision) {
  if (precision < 0) throw InsufficientPrecision("negative series precision");
  normalize();
}

TSeries TSeries::exact(std::vector<Rational> coeffs) {
  TSeries s;
  s.c_ = std::move(coeffs);
  s.normalize();
  return s;
}

TSeries TSeries::constant(const Rational& c, int precision) {
  return TSeries(std::vector<Rational>{c}, precision);
}

TSeries TSeries::variable(int precision) {
  return TSeries(std::vector<Rational>{Rational(0), Rational(1)}, precision);
}

void TSeries::normalize() {
  if (is_exact()) {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  } else {
    c_.resize(static_cast<std::size_t>(precision_) + 1);
  }
}

const Rational& TSeries::operator[](std::size_t k) const {
  return k < c_.size() ? c_[k] : zero_rational();
}

bool TSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool TSeries::is_constant() const {
  return std::all_of(c_.begin() + std::min<std::size_t>(1, c_.size()), c_.end(),
                     [](const Rational& r) { return r.is_zero(); });
}

TSeries TSeries::derive() const {
  if (!is_exact() && precision_ < 1)
    throw InsufficientPrecision("derivative of a series known only to order 0");
  std::vector<Rational> d;
  d.reserve(c_.size());
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Rational(static_cast<long>(k)));
  if (is_exact()) return exact(std::move(d));
  return TSeries(std::move(d), precision_ - 1);
}

TSeries TSeries::truncate(int precision) const {
  if (precision >= precision_) return *this;
  return TSeries(c_, precision);
}

TSeries TSeries::inverse() const {
  if (!is_unit()) throw NonUnitDivisor("series with zero constant term is not invertible");
  if (is_exact()) {
    if (c_.size() == 1) return TSeries(c_[0].inverse());
    throw InsufficientPrecision("inverse of an exact non-constant series needs a truncation order");
  }
  // b_k = -(sum_{i=1..k} a_i b_{k-i}) / a_0
  std::vector<Rational> b(static_cast<std::size_t>(precision_) + 1);
  Rational inv0 = c_[0].inverse();
  b[0] = inv0;
  for (std::size_t k = 1; k < b.size(); ++k) {
    Rational acc;
    for (std::size_t i = 1; i <= k; ++i)
      if (!c_[i].is_zero()) acc += c_[i] * b[k - i];
    b[k] = -acc * inv0;
  }
  return TSeries(std::move(b), precision_);
}

TSeries& TSeries::operator+=(const TSeries& o) {
  precision_ = min_precision(precision_, o.precision_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  normalize();
  return *this;
}

TSeries& TSeries::operator-=(const TSeries& o) {
  precision_ = min_precision(precision_, o.precision_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  normalize();
  return *this;
}

TSeries& TSeries::operator*=(const TSeries& o) {
  int prec = min_precision(precision_, o.precision_);
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    precision_ = prec;
    normalize();
    return *this;
  }
  std::size_t len = c_.size() + o.c_.size() - 1;
  if (prec != kExact) len = std::min(len, static_cast<std::size_t>(prec) + 1);
  std::vector<Rational> r(len);
  for (std::size_t i = 0; i < c_.size() && i < len; ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size() && i + j < len; ++j)
      if (!o.c_[j].is_zero()) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  precision_ = prec;
  normalize();
  return *this;
}

TSeries& TSeries::operator/=(const TSeries& o) {
  if (!o.is_unit()) throw NonUnitDivisor("division by a series with zero constant term");
  if (o.is_exact() && o.c_.size() == 1) {
    Rational inv = o.c_[0].inverse();
    for (auto& c : c_) c *= inv;
    normalize();
    return *this;
  }
  int prec = min_precision(precision_, o.precision_);
  if (prec == kExact)
    throw InsufficientPrecision("quotient of exact series by a non-constant divisor");
  return *this *= o.truncate(prec).inverse();
}

TSeries operator-(const TSeries& a) {
  TSeries r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

std::string TSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& c = c_[k];
    if (c.is_zero()) continue;
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != Rational(1)) os << mag << "*";
    os << "t";
    if (k > 1) os << "^" << k;
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(t^" << precision_ + 1 << ")";
  return os.str();
}

Rational max_abs_coefficient(const TSeries& s) {
  Rational m;
  for (const auto& c : s.coefficients()) m = std::max(m, c.abs());
  return m;
}

}  // namespace djets
