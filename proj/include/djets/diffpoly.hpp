#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "djets/mpoly.hpp"

namespace djets {

/// Ordinary differential polynomial with constant rational coefficients in
/// base variables x_1..x_n and their derivatives x_j^(k). Internally a
/// polynomial over the symbols x_j^(k), k <= max_order(), with symbol index
/// k*n + j and display names x, x', x'', ...
class DiffPoly {
 public:
  DiffPoly() = default;
  explicit DiffPoly(std::vector<std::string> base);

  static DiffPoly variable(std::vector<std::string> base, std::size_t j, unsigned order = 0);
  static DiffPoly constant(std::vector<std::string> base, const Rational& c);
  /// An ordinary polynomial in the base variables.
  static DiffPoly from_poly(const RPoly& p);

  const std::vector<std::string>& base() const { return base_; }
  unsigned max_order() const { return max_order_; }
  const RPoly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  /// Highest derivative order that actually occurs (0 if none).
  unsigned order() const;

  /// Same polynomial over symbols up to at least `order`.
  DiffPoly extended(unsigned order) const;

  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const Rational& c, DiffPoly a);
  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

  std::string to_string() const { return poly_.to_string(); }

  friend DiffPoly total_derivative(const DiffPoly& p);

 private:
  static std::vector<std::string> symbol_names(const std::vector<std::string>& base, unsigned order);

  std::vector<std::string> base_;
  unsigned max_order_ = 0;
  RPoly poly_;
};

/// The formal total derivative: x_j^(k) contributes through x_j^(k+1) by
/// the Leibniz rule; coefficients are constants.
DiffPoly total_derivative(const DiffPoly& p);

/// A presentation of a D-variety (or a restriction of one) by rewrite rules:
/// first-order rules  delta x_j -> s_j(x)  and triangular algebraic rules
/// x_j -> q(x) eliminating one variable each.
class SubstitutionSystem {
 public:
  SubstitutionSystem() = default;
  explicit SubstitutionSystem(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t index_of(const std::string& name) const;

  /// delta vars[j] -> rhs (rhs over variables()).
  void set_derivative(std::size_t j, RPoly rhs);
  /// vars[j] -> rhs, appended to the elimination list.
  void add_elimination(std::size_t j, RPoly rhs);
  /// Records the identification  lhs = rhs  as an elimination rule. When
  /// both sides are single variables the one later in variables() is
  /// eliminated in favour of the earlier one; otherwise lhs must be a
  /// variable and is eliminated.
  void add_equation(const RPoly& lhs, const RPoly& rhs);

  const std::map<std::size_t, RPoly>& derivatives() const { return derivative_; }
  const std::vector<std::pair<std::size_t, RPoly>>& eliminations() const { return eliminate_; }

  bool is_eliminated(std::size_t j) const;
  std::optional<RPoly> derivative_rule(std::size_t j) const;

  /// Normal form modulo the algebraic rules only: a polynomial in the
  /// variables that are not eliminated. Throws NonTriangular on cycles.
  RPoly normal_form(const RPoly& p) const;

  /// Total derivative of a normal-form polynomial using the first-order
  /// rules of its free variables, returned in normal form. Throws
  /// MissingRule when a free variable that occurs has no rule.
  RPoly derivative(const RPoly& p) const;

  /// Normal form of the symbol x_j^(k).
  RPoly symbol_normal_form(std::size_t j, unsigned k) const;

 private:
  RPoly variable_normal_form(std::size_t j, std::vector<bool>& visiting) const;

  std::vector<std::string> vars_;
  std::map<std::size_t, RPoly> derivative_;
  std::vector<std::pair<std::size_t, RPoly>> eliminate_;
};

/// Normal form of a differential polynomial modulo the presentation: every
/// derivative symbol is rewritten through the first-order rules (x^(k+1) via
/// delta of the rewrite of x^(k)) and eliminated variables are substituted.
/// The result is a polynomial in the free base variables.
RPoly reduce(const DiffPoly& p, const SubstitutionSystem& system);

/// The cleared-denominator form of delta(delta w / w) = 0 for w = u - v:
/// delta(delta w)*w - (delta w)^2 reduces to 0 on the presentation.
struct KernelIdentity {
  bool holds = false;
  RPoly normal_form;       // of delta(delta w)*w - (delta w)^2
  RPoly log_derivative;    // normal form of delta w
  /// delta w - x*w in normal form; zero when delta w / w is the base
  /// coordinate x.
  RPoly ratio_residual;
};

KernelIdentity log_derivative_constancy_identity(const SubstitutionSystem& w_system,
                                        const std::string& u = "u", const std::string& v = "v",
                                        const std::string& ratio = "x");

}  // namespace djets
