#pragma once

#include <map>
#include <string>
#include <vector>

#include "djets/linalg.hpp"
#include "djets/mpoly.hpp"

namespace djets {

/// Lambda = { alpha in N^n : 0 < |alpha| <= m }, ordered by total degree and
/// within a degree with the first variable most significant:
/// (1,0), (0,1), (2,0), (1,1), (0,2), ...
class JetIndexSet {
 public:
  JetIndexSet() = default;
  JetIndexSet(std::size_t n, unsigned m);

  std::size_t dimension() const { return n_; }
  unsigned order() const { return m_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<Exponent>& indices() const { return indices_; }
  const Exponent& operator[](std::size_t i) const { return indices_[i]; }

  /// Position of alpha in Lambda, or -1.
  std::ptrdiff_t find(const Exponent& alpha) const;

  /// Lambda plus the zero index in front.
  std::vector<Exponent> with_zero() const;

 private:
  std::size_t n_ = 0;
  unsigned m_ = 0;
  std::vector<Exponent> indices_;
  std::map<Exponent, std::size_t> position_;
};

/// All exponents of the given total degree in n variables, first variable
/// most significant.
std::vector<Exponent> exponents_of_degree(std::size_t n, unsigned degree);

/// Taylor coefficients of p at a through order m: alpha -> (D^alpha p)(a),
/// for every |alpha| <= m including alpha = 0.
template <class S>
std::map<Exponent, S> taylor_coeffs(const RPoly& p, const std::vector<S>& a, unsigned m) {
  if (a.size() != p.nvars()) throw DimensionError("taylor_coeffs: point dimension mismatch");
  std::map<Exponent, S> out;
  for (unsigned d = 0; d <= m; ++d)
    for (const auto& alpha : exponents_of_degree(p.nvars(), d))
      out.emplace(alpha, p.hasse(alpha).evaluate(a));
  return out;
}

/// p(a + h) as a polynomial in h truncated at total degree m.
template <class S>
MPoly<S> taylor_shift(const RPoly& p, const std::vector<S>& a, unsigned m) {
  MPoly<S> out(p.variables());
  for (auto& [alpha, c] : taylor_coeffs(p, a, m)) out.add_term(alpha, c);
  return out;
}

/// Drops every term of total degree > m.
template <class C>
MPoly<C> truncate_degree(const MPoly<C>& p, unsigned m) {
  MPoly<C> out(p.variables());
  for (const auto& [e, c] : p.terms())
    if (total_degree(e) <= m) out.add_term(e, c);
  return out;
}

template <class C>
MPoly<C> truncated_product(const MPoly<C>& a, const MPoly<C>& b, unsigned m) {
  MPoly<C> out(a.variables());
  Exponent e(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    unsigned da = total_degree(ea);
    if (da > m) continue;
    for (const auto& [eb, cb] : b.terms()) {
      if (da + total_degree(eb) > m) continue;
      for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

/// Algebraic jet space Jet^m(V)_a as a subspace of K^Lambda.
template <class S>
struct JetSpace {
  std::vector<S> point;
  JetIndexSet lambda;
  /// One row per (generator P, shift beta), |beta| <= m-1: the functional
  /// must vanish on P*(x-a)^beta. The beta = 0 rows are the classical
  /// equations sum_alpha D^alpha P(a) z_alpha = 0.
  Matrix<S> equations;
  std::vector<Vector<S>> basis;

  std::size_t dim() const { return basis.size(); }
};

/// Linear equations cutting Jet^m(V)_a out of K^Lambda. Throws
/// PointNotOnVariety when some generator does not vanish at a.
template <class S>
Matrix<S> jet_equations(const std::vector<RPoly>& generators, const std::vector<S>& a,
                        unsigned m) {
  JetIndexSet lambda(a.size(), m);
  std::vector<Exponent> shifts;
  for (unsigned d = 0; d + 1 <= m; ++d)
    for (auto& beta : exponents_of_degree(a.size(), d)) shifts.push_back(beta);

  Matrix<S> rows = Matrix<S>::Constant(
      static_cast<Index>(generators.size() * shifts.size()), static_cast<Index>(lambda.size()), S(0));
  Index r = 0;
  for (const auto& p : generators) {
    if (p.nvars() != a.size()) throw DimensionError("generator over the wrong number of variables");
    auto coeffs = taylor_coeffs(p, a, m);
    if (!is_zero(coeffs.at(Exponent(a.size(), 0))))
      throw PointNotOnVariety("generator " + p.to_string() + " does not vanish at the base point");
    for (const auto& beta : shifts) {
      for (const auto& [gamma, c] : coeffs) {
        Exponent alpha(gamma.size());
        for (std::size_t j = 0; j < alpha.size(); ++j) alpha[j] = gamma[j] + beta[j];
        auto col = lambda.find(alpha);
        if (col >= 0) rows(r, col) = c;
      }
      ++r;
    }
  }
  return rows;
}

template <class S>
JetSpace<S> jet_space(const std::vector<RPoly>& generators, const std::vector<S>& a, unsigned m) {
  JetSpace<S> js;
  js.point = a;
  js.lambda = JetIndexSet(a.size(), m);
  js.equations = jet_equations(generators, a, m);
  js.basis = nullspace(js.equations);
  return js;
}

/// Matrix of Jet^m(f)_a in the monomial coordinates: row beta (target),
/// column alpha (source), entry = coefficient of (x-a)^alpha in
/// (f(x) - f(a))^beta. A source jet v maps to (matrix * v).
template <class S>
Matrix<S> jet_of_morphism(const std::vector<RPoly>& f, const std::vector<S>& a, unsigned m) {
  JetIndexSet source(a.size(), m), target(f.size(), m);
  std::vector<MPoly<S>> shifted;
  shifted.reserve(f.size());
  for (const auto& fi : f) {
    MPoly<S> s = taylor_shift(fi, a, m);
    s.add_term(Exponent(a.size(), 0), -s.constant_term());
    shifted.push_back(std::move(s));
  }
  Matrix<S> out = Matrix<S>::Constant(static_cast<Index>(target.size()),
                                      static_cast<Index>(source.size()), S(0));
  for (std::size_t row = 0; row < target.size(); ++row) {
    const Exponent& beta = target[row];
    MPoly<S> prod = MPoly<S>::constant(f.empty() ? std::vector<std::string>{} : f[0].variables(), S(1));
    for (std::size_t i = 0; i < beta.size(); ++i)
      for (unsigned k = 0; k < beta[i]; ++k) prod = truncated_product(prod, shifted[i], m);
    for (const auto& [alpha, c] : prod.terms()) {
      auto col = source.find(alpha);
      if (col >= 0) out(static_cast<Index>(row), col) = c;
    }
  }
  return out;
}

/// Jet^m(f)_a between explicit jet spaces; checks that f(a) is the target
/// base point and that the image of every source jet satisfies the target
/// equations.
template <class S>
Matrix<S> jet_of_morphism(const std::vector<RPoly>& f, const JetSpace<S>& source,
                          const JetSpace<S>& target) {
  if (f.size() != target.point.size()) throw DimensionError("morphism arity does not match target");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!is_zero(f[i].evaluate(source.point) - target.point[i]))
      throw BasePointMismatch("f(a) differs from the target base point");
  Matrix<S> map = jet_of_morphism(f, source.point, source.lambda.order());
  for (const auto& v : source.basis) {
    Vector<S> image = map * v;
    if (target.equations.rows() > 0 && !is_zero(Vector<S>(target.equations * image)))
      throw InvarianceViolation("jet image leaves the target jet space");
  }
  return map;
}

}  // namespace djets
