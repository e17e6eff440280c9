#pragma once

#include <string>
#include <vector>

#include "djets/diffpoly.hpp"
#include "djets/jet.hpp"
#include "djets/linalg.hpp"

namespace djets {

/// An algebraic D-variety (V, s): V in A^n cut out by `ideal`, with the
/// polynomial section s = (s_1..s_n) to its prolongation. Its sharp points
/// are the a with a' = s(a).
struct DVariety {
  std::string name;
  std::vector<std::string> vars;
  std::vector<RPoly> ideal;
  std::vector<RPoly> section;

  DVariety() = default;
  DVariety(std::string name, std::vector<std::string> vars, std::vector<RPoly> ideal,
           std::vector<RPoly> section);

  std::size_t dimension() const { return vars.size(); }
  /// Throws ArityError unless every polynomial lives over `vars` and the
  /// section has one component per variable.
  void check_arity() const;
};

/// Parses generator and section strings over the given variables.
DVariety make_dvariety(std::string name, std::vector<std::string> vars,
                       const std::vector<std::string>& ideal,
                       const std::vector<std::string>& section);

/// X1 x X2; variables of the second factor that clash get a "_2" suffix.
DVariety product(const DVariety& x1, const DVariety& x2);

/// Names of the prolongation fibre coordinates, u_<var>.
std::vector<std::string> prolongation_variables(const std::vector<std::string>& vars);

/// Equations of tau V over (x, u): each generator P together with
/// sum_j dP/dx_j * u_j.
std::vector<RPoly> prolongation(const std::vector<std::string>& vars, const std::vector<RPoly>& ideal);

struct SectionCheck {
  bool valid = false;
  /// Decided only by sampling sharp points (ideal neither triangular nor
  /// principal after elimination).
  bool sampled_only = false;
  /// Per generator: sum_j dP/dx_j * s_j reduced modulo the ideal.
  std::vector<RPoly> residuals;
};

/// Whether s lands in tau V: every sum_j dP/dx_j * s_j lies in the ideal.
/// Decided by triangular elimination plus division by a single remaining
/// generator; otherwise by integrating from `samples` (rational points on
/// V) to `order` and checking vanishing along the trajectories.
SectionCheck validate_section(const DVariety& v,
                              const std::vector<std::vector<Rational>>& samples = {},
                              int order = kDefaultPrecision);

/// A point of (V, s)^# in the series model.
struct SharpPoint {
  std::vector<TSeries> coords;
  int precision = 0;
  std::vector<Rational> initial;
};

/// Integrates a' = s(a), a(0) = a0, by a_{k+1} = [s(a)]_k / (k+1).
SharpPoint sharp_integrate(const DVariety& v, const std::vector<Rational>& a0, int order);

/// The constant point c viewed as a series point of precision `order`.
SharpPoint constant_point(const std::vector<Rational>& c, int order);

SharpPoint product_point(const SharpPoint& a1, const SharpPoint& a2);

/// d applied to f in the local monomial coordinates h = x - a(t), truncated
/// at order m: d(c h^g) = c' h^g + c * sum_j g_j h^(g - e_j) (s_j(a+h) - s_j(a)).
MPoly<TSeries> apply_induced_derivation(const DVariety& v, const SharpPoint& a, unsigned m,
                                        const MPoly<TSeries>& f);

/// Matrix of the induced derivation on M_{A^n,a}/M^{m+1} in the basis
/// (x-a)^beta, beta in Lambda: row beta holds the coordinates of
/// d((x-a)^beta).
Matrix<TSeries> induced_module_derivation(const DVariety& v, const SharpPoint& a, unsigned m);

/// Jet^m_D(X)_a = { v in Jet^m(V)_a : Dv = 0 }, with (Dv)_beta =
/// v_beta' - sum_alpha Dm(beta, alpha) v_alpha.
struct DeltaJetSpace {
  JetSpace<TSeries> jets;
  Matrix<TSeries> derivation;
  /// Restriction of D to the jet space in the coordinates of jets.basis:
  /// D(B c) = B (c' + restricted c).
  Matrix<TSeries> restricted;
  std::vector<Vector<TSeries>> horizontal;
  int precision = 0;

  std::size_t dim_K() const { return jets.dim(); }
  std::size_t dim_C() const { return horizontal.size(); }
  const JetIndexSet& lambda() const { return jets.lambda; }
};

/// Computes the horizontal C-basis from the fundamental matrix of the
/// restricted derivation. Throws InvarianceViolation when D does not
/// preserve the jet space and SingularPivot at non-generic points.
DeltaJetSpace delta_jet_space(const DVariety& v, const SharpPoint& a, unsigned m);

/// (Dv) in coordinates.
Vector<TSeries> apply_dual_derivation(const Matrix<TSeries>& derivation, const Vector<TSeries>& v);

/// Jets of V(C) at a constant point: V with the zero section. The
/// horizontal basis is the normalized rational nullspace of the jet
/// equations, checked against delta_jet_space.
DeltaJetSpace constants_variety_jets(const std::vector<std::string>& vars,
                                     const std::vector<RPoly>& ideal, const std::vector<Rational>& c,
                                     unsigned m, int order = kDefaultPrecision);

}  // namespace djets
