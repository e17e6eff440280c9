#pragma once

#include <string>
#include <vector>

#include "djets/diffpoly.hpp"
#include "djets/dvariety.hpp"

namespace djets {

/// A bundle over a D-variety whose fibres are cut out by linear
/// homogeneous equations delta u = J(x) u, presented as rewrite rules over
/// (x, u). Restriction adds triangular algebraic rules.
struct LinearDVariety {
  DVariety base;
  std::vector<std::string> fiber_vars;
  /// Rules over base vars followed by fibre vars.
  SubstitutionSystem system;
  /// Algebraic equations that must vanish besides the elimination rules:
  /// the ideal of V and its order-1 jet constraints, in normal form.
  std::vector<RPoly> constraints;

  std::vector<std::string> variables() const { return system.variables(); }
  std::size_t base_dim() const { return base.dimension(); }

  /// Fibre matrix: entry (i, j) is the coefficient of u_j in the rule for
  /// delta u_i (a polynomial in the base variables).
  std::vector<std::vector<RPoly>> fiber_matrix() const;

  /// Displayed equations, `x = y` for eliminations (as the canonical
  /// equation leading-term = rest) and `delta u = ...` for every free
  /// variable with a rule.
  std::vector<std::string> equations() const;
};

/// Jacobian of the section, rows = components.
std::vector<std::vector<RPoly>> section_jacobian(const DVariety& v);

/// Kolchin tangent bundle by linearization: delta u = J_s(x) u, plus the
/// ideal and sum_j dP/dx_j u_j = 0 for V smaller than A^n. Fibre variables
/// default to "d<var>".
LinearDVariety delta_tangent(const DVariety& v, std::vector<std::string> fiber_vars = {});

/// Applies extra rules (eliminations and first-order rules) and stores
/// normal forms. A supplied first-order rule that disagrees with the
/// reduced original becomes a constraint, as does an eliminated variable
/// whose derivative is inconsistent with its original rule.
LinearDVariety restrict(const LinearDVariety& t, const SubstitutionSystem& rules);

/// delta(a)/a.
TSeries log_derivative(const TSeries& a);

/// Membership in G = { a unit : delta(delta a / a) = 0 }.
bool in_G(const TSeries& a);

struct GElement {
  TSeries value;
  Rational ratio;
};

/// exp(c t) with its certified constant logarithmic derivative c.
GElement make_G_element(const Rational& c, int order);

/// Residuals of every rule of a presentation at a series point (ordered as
/// the system's variables): eliminations x - q(x), rules x' - s(x), and
/// constraints.
struct PointResiduals {
  std::vector<std::string> labels;
  std::vector<TSeries> values;
  bool all_zero() const;
};

PointResiduals residuals_at(const LinearDVariety& t, const std::vector<TSeries>& point);

/// The full check that u - v maps the restricted bundle W onto G.
struct GroupImageReport {
  std::vector<std::string> tangent_equations;
  std::vector<std::string> restricted_equations;
  KernelIdentity kernel;
  struct Witness {
    Rational c;
    std::vector<TSeries> point;
    PointResiduals residuals;
    bool image_ok = false;  // f(point) == exp(ct)
    bool side_condition = false;  // u - v is a unit
  };
  std::vector<Witness> witnesses;
  bool passed() const;
};

/// The D-variety delta x = x^2 - y^2, delta y = x^2 - x*y on A^2.
DVariety counterexample_variety();
/// Its tangent bundle restricted to the constant diagonal (x = y, delta x = 0).
LinearDVariety counterexample_restriction();

GroupImageReport verify_group_image(const std::vector<Rational>& constants, int order);

/// Degree comparison for P Q y = P^d Q - Q^d P in y (coefficientwise d).
struct DegreeReport {
  int deg_p = 0, deg_q = 0, deg_rhs = 0, deg_lhs = 0;
  bool bound_holds = false;   // deg_rhs <= deg_p + deg_q
  bool lhs_exact = false;     // deg_lhs == deg_p + deg_q + 1
  bool sides_differ = false;
};

DegreeReport degree_identity_check(const MPoly<TSeries>& p, const MPoly<TSeries>& q,
                                   const std::string& y = "y");

/// Closure of solution fibres over constant base points under addition,
/// constant scaling and zero.
struct FiberLinearityReport {
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  bool passed() const { return failures == 0; }
};

/// Whether `fiber` solves the fibre equations over the (constant) base
/// point of t.
bool satisfies_fiber(const LinearDVariety& t, const std::vector<Rational>& base_point,
                     const std::vector<TSeries>& fiber);

/// Fundamental solutions of the fibre system over a constant base point.
std::vector<Vector<TSeries>> fiber_solutions(const LinearDVariety& t,
                                             const std::vector<Rational>& base_point, int order);

FiberLinearityReport fiber_linearity_check(const LinearDVariety& t,
                                           const std::vector<std::vector<Rational>>& samples,
                                           const std::vector<Rational>& scalars, int order);

/// Solutions of delta u = J_s(a(t)) u that satisfy the linearized ideal:
/// Phi * c for c in the rational kernel of the order-1 jet equations at a0.
std::vector<Vector<TSeries>> tangent_solutions(const DVariety& v, const SharpPoint& a);

/// Mutual containment of the order-1 horizontal jets and the tangent
/// solutions.
struct CrossCheck {
  std::size_t dim_jets = 0, dim_tangent = 0;
  bool jets_in_tangent = false, tangent_in_jets = false;
  Rational residual;
  bool passed() const {
    return dim_jets == dim_tangent && jets_in_tangent && tangent_in_jets && residual.is_zero();
  }
};

CrossCheck tangent_jet_cross_check(const DVariety& v, const SharpPoint& a);

}  // namespace djets
