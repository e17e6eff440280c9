#include "djets/rational.hpp"

#include "djets/error.hpp"

namespace djets {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw NonUnitDivisor("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s), mpz_class(1));
    return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw Error("not a rational number: '" + s + "'");
  }
}

Rational Rational::inverse() const {
  if (is_zero()) throw NonUnitDivisor("inverse of zero");
  return Rational(mpq_class(1 / v_));
}

Rational Rational::pow(unsigned k) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), k);
  return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw NonUnitDivisor("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r, 1);
}

Rational factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r, 1);
}

}  // namespace djets
