#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "djets/error.hpp"
#include "djets/rational.hpp"
#include "djets/tseries.hpp"

namespace djets {

using Exponent = std::vector<unsigned>;

inline unsigned total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

/// Graded lexicographic order, largest first: higher total degree first,
/// ties broken lexicographically with the first variable most significant.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

namespace detail {

inline void write_coefficient(std::ostream& os, const Rational& c, bool first, bool has_monomial) {
  Rational mag = c.abs();
  if (first)
    os << (c.sign() < 0 ? "-" : "");
  else
    os << (c.sign() < 0 ? " - " : " + ");
  if (!has_monomial)
    os << mag;
  else if (mag != Rational(1))
    os << mag << "*";
}

inline void write_coefficient(std::ostream& os, const TSeries& c, bool first, bool has_monomial) {
  if (c.is_exact() && c.coefficients().size() <= 1) {
    write_coefficient(os, c[0], first, has_monomial);
    return;
  }
  if (!first) os << " + ";
  os << "(" << c.to_string() << ")";
  if (has_monomial) os << "*";
}

}  // namespace detail

/// Sparse multivariate polynomial over a coefficient ring C (Rational or
/// TSeries), keyed by exponent vectors. Zero coefficients are never stored.
template <class C>
class MPoly {
 public:
  using Coefficient = C;
  using Terms = std::map<Exponent, C, GrlexGreater>;

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MPoly constant(std::vector<std::string> vars, const C& c) {
    MPoly p(std::move(vars));
    p.add_term(Exponent(p.nvars(), 0), c);
    return p;
  }

  static MPoly variable(std::vector<std::string> vars, std::size_t j) {
    MPoly p(std::move(vars));
    Exponent e(p.nvars(), 0);
    e.at(j) = 1;
    p.add_term(std::move(e), C(1));
    return p;
  }

  static MPoly monomial(std::vector<std::string> vars, Exponent e, const C& c) {
    MPoly p(std::move(vars));
    p.add_term(std::move(e), c);
    return p;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  C coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0) : it->second;
  }

  C constant_term() const { return coefficient(Exponent(nvars(), 0)); }

  void add_term(Exponent e, const C& c) {
    if (e.size() != nvars()) throw DimensionError("exponent length does not match variable count");
    if (djets::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (djets::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
    return d;
  }

  /// Degree in variable j; -1 for the zero polynomial.
  int degree_in(std::size_t j) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(j)));
    return d;
  }

  std::ptrdiff_t index_of(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : it - vars_.begin();
  }

  MPoly& operator+=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  MPoly& operator-=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  MPoly& operator*=(const C& s) {
    if (djets::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    Terms r;
    for (auto& [e, c] : terms_) {
      C v = c * s;
      if (!djets::is_zero(v)) r.emplace(e, std::move(v));
    }
    terms_ = std::move(r);
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const C& s) { return a *= s; }
  friend MPoly operator*(const C& s, MPoly a) { return a *= s; }
  friend MPoly operator-(MPoly a) { return a *= C(-1); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_compatible(b);
    MPoly r(a.vars_);
    Exponent e(a.nvars());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly pow(unsigned k) const {
    MPoly r = constant(vars_, C(1));
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// Ordinary partial derivative with respect to variable j.
  MPoly partial(std::size_t j) const {
    MPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(j) == 0) continue;
      Exponent f = e;
      f[j] -= 1;
      r.add_term(std::move(f), c * C(static_cast<int>(e[j])));
    }
    return r;
  }

  /// Divided-power derivative D^alpha = d^alpha / (alpha! dx^alpha): the
  /// monomial x^beta maps to prod_j binom(beta_j, alpha_j) x^(beta - alpha).
  MPoly hasse(const Exponent& alpha) const {
    if (alpha.size() != nvars())
      throw DimensionError("Hasse derivative order has wrong length");
    MPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      Rational factor(1);
      Exponent f(e.size());
      bool vanishes = false;
      for (std::size_t j = 0; j < e.size() && !vanishes; ++j) {
        if (e[j] < alpha[j]) {
          vanishes = true;
          break;
        }
        f[j] = e[j] - alpha[j];
        factor *= binomial(e[j], alpha[j]);
      }
      if (!vanishes) r.add_term(std::move(f), c * C(factor));
    }
    return r;
  }

  /// Evaluates at a point whose coordinates live in T (C must convert to T).
  template <class T>
  T evaluate(std::span<const T> point) const {
    if (point.size() != nvars()) throw DimensionError("point dimension does not match variables");
    std::vector<std::vector<T>> powers(nvars());
    auto power = [&](std::size_t j, unsigned k) -> const T& {
      auto& cache = powers[j];
      if (cache.empty()) cache.push_back(T(1));
      while (cache.size() <= k) cache.push_back(cache.back() * point[j]);
      return cache[k];
    };
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T term(c);
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] != 0) term *= power(j, e[j]);
      acc += term;
    }
    return acc;
  }

  template <class T>
  T evaluate(const std::vector<T>& point) const {
    return evaluate(std::span<const T>(point));
  }

  /// Composition: replaces variable j by images[j]. All images must share
  /// one variable list, which becomes the variable list of the result.
  MPoly substitute(const std::vector<MPoly>& images) const {
    if (images.size() != nvars()) throw DimensionError("substitution arity mismatch");
    std::vector<std::string> target;
    if (!images.empty()) target = images.front().vars_;
    for (const auto& im : images)
      if (im.vars_ != target) throw DimensionError("substitution images disagree on variables");
    std::vector<std::vector<MPoly>> powers(nvars());
    auto power = [&](std::size_t j, unsigned k) -> const MPoly& {
      auto& cache = powers[j];
      if (cache.empty()) cache.push_back(constant(target, C(1)));
      while (cache.size() <= k) cache.push_back(cache.back() * images[j]);
      return cache[k];
    };
    MPoly acc(target);
    for (const auto& [e, c] : terms_) {
      MPoly term = constant(target, c);
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j] != 0) term = term * power(j, e[j]);
      acc += term;
    }
    return acc;
  }

  /// Re-expresses the polynomial over another variable list, matching by
  /// name. Every variable that actually occurs must exist in `vars`.
  MPoly with_variables(const std::vector<std::string>& vars) const {
    std::vector<std::ptrdiff_t> where(nvars(), -1);
    for (std::size_t j = 0; j < nvars(); ++j) {
      auto it = std::find(vars.begin(), vars.end(), vars_[j]);
      if (it != vars.end()) where[j] = it - vars.begin();
    }
    MPoly r(vars);
    for (const auto& [e, c] : terms_) {
      Exponent f(vars.size(), 0);
      for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        if (where[j] < 0) throw UnknownName("variable '" + vars_[j] + "' has no counterpart");
        f[static_cast<std::size_t>(where[j])] += e[j];
      }
      r.add_term(std::move(f), c);
    }
    return r;
  }

  template <class D, class F>
  MPoly<D> map_coefficients(F&& f) const {
    MPoly<D> r(vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  /// Canonical text: graded-lex order, explicit `*` and `^`, e.g. `x^2 - y^2`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      bool has_monomial = total_degree(e) > 0;
      detail::write_coefficient(os, c, first, has_monomial);
      first = false;
      bool first_factor = true;
      for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        if (!first_factor) os << "*";
        first_factor = false;
        os << vars_[j];
        if (e[j] > 1) os << "^" << e[j];
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

 private:
  void check_compatible(const MPoly& o) const {
    if (vars_ != o.vars_) throw DimensionError("polynomials over different variable lists");
  }

  std::vector<std::string> vars_;
  Terms terms_;
};

using RPoly = MPoly<Rational>;

/// Lifts a rational polynomial to series coefficients.
inline MPoly<TSeries> to_series(const RPoly& p) {
  return p.map_coefficients<TSeries>([](const Rational& c) { return TSeries(c); });
}

}  // namespace djets
