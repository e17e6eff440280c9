#include "djets/tangent.hpp"

#include "djets/error.hpp"
#include "djets/linalg.hpp"
#include "djets/series_ode.hpp"

namespace djets {

std::vector<std::vector<RPoly>> section_jacobian(const DVariety& v) {
  std::vector<std::vector<RPoly>> j;
  for (const auto& s : v.section) {
    std::vector<RPoly> row;
    for (std::size_t k = 0; k < v.dimension(); ++k) row.push_back(s.partial(k));
    j.push_back(std::move(row));
  }
  return j;
}

LinearDVariety delta_tangent(const DVariety& v, std::vector<std::string> fiber_vars) {
  v.check_arity();
  const std::size_t n = v.dimension();
  if (fiber_vars.empty())
    for (const auto& x : v.vars) fiber_vars.push_back("d" + x);
  if (fiber_vars.size() != n) throw ArityError("need one fibre variable per base variable");

  std::vector<std::string> all = v.vars;
  all.insert(all.end(), fiber_vars.begin(), fiber_vars.end());

  LinearDVariety t;
  t.base = v;
  t.fiber_vars = fiber_vars;
  t.system = SubstitutionSystem(all);
  auto jac = section_jacobian(v);
  for (std::size_t i = 0; i < n; ++i) {
    t.system.set_derivative(i, v.section[i].with_variables(all));
    RPoly rhs(all);
    for (std::size_t k = 0; k < n; ++k)
      rhs += jac[i][k].with_variables(all) * RPoly::variable(all, n + k);
    t.system.set_derivative(n + i, rhs);
  }
  for (const auto& p : v.ideal) t.constraints.push_back(p.with_variables(all));
  for (const auto& p : v.ideal) {
    RPoly lin(all);
    for (std::size_t k = 0; k < n; ++k)
      lin += p.partial(k).with_variables(all) * RPoly::variable(all, n + k);
    t.constraints.push_back(std::move(lin));
  }
  return t;
}

std::vector<std::vector<RPoly>> LinearDVariety::fiber_matrix() const {
  const std::size_t n = base_dim();
  std::vector<std::vector<RPoly>> out;
  for (std::size_t i = 0; i < fiber_vars.size(); ++i) {
    auto rule = system.derivative_rule(n + i);
    if (!rule) throw MissingRule("no rule for delta " + fiber_vars[i]);
    std::vector<RPoly> row;
    for (std::size_t k = 0; k < fiber_vars.size(); ++k) row.push_back(rule->partial(n + k));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

/// "lead = rest" for the equation p = 0, sign fixed so the lead is positive.
std::string equation_text(RPoly p) {
  if (p.is_zero()) return "0 = 0";
  if (p.terms().begin()->second.sign() < 0) p = -p;
  const auto& [e, c] = *p.terms().begin();
  RPoly lead = RPoly::monomial(p.variables(), e, c);
  return lead.to_string() + " = " + (lead - p).to_string();
}

}  // namespace

std::vector<std::string> LinearDVariety::equations() const {
  std::vector<std::string> out;
  const auto& vars = system.variables();
  for (const auto& [j, q] : system.eliminations())
    out.push_back(equation_text(RPoly::variable(vars, j) - q));
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (system.is_eliminated(j)) continue;
    if (auto rule = system.derivative_rule(j)) out.push_back("delta " + vars[j] + " = " + rule->to_string());
  }
  for (const auto& c : constraints) out.push_back(c.to_string() + " = 0");
  return out;
}

LinearDVariety restrict(const LinearDVariety& t, const SubstitutionSystem& rules_in) {
  const auto& vars = t.system.variables();
  LinearDVariety out = t;
  out.system = SubstitutionSystem(vars);
  out.constraints.clear();

  for (const auto& [j, q] : t.system.eliminations()) out.system.add_elimination(j, q);
  const auto& rvars = rules_in.variables();
  for (const auto& [j, q] : rules_in.eliminations())
    out.system.add_elimination(out.system.index_of(rvars[j]), q.with_variables(vars));
  std::map<std::size_t, RPoly> supplied;
  for (const auto& [j, r] : rules_in.derivatives())
    supplied.emplace(out.system.index_of(rvars[j]), r.with_variables(vars));

  std::vector<RPoly> side;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (out.system.is_eliminated(j)) continue;
    auto original = t.system.derivative_rule(j);
    auto it = supplied.find(j);
    if (it != supplied.end()) {
      RPoly r = out.system.normal_form(it->second);
      out.system.set_derivative(j, r);
      if (original) {
        RPoly diff = out.system.normal_form(*original) - r;
        if (!diff.is_zero()) side.push_back(std::move(diff));
      }
    } else if (original) {
      out.system.set_derivative(j, out.system.normal_form(*original));
    }
  }
  // Eliminated variables: the derivative of their replacement must agree
  // with their original rule.
  for (const auto& [j, q] : out.system.eliminations()) {
    auto original = t.system.derivative_rule(j);
    if (!original) continue;
    RPoly diff = out.system.derivative(out.system.normal_form(RPoly::variable(vars, j))) -
                 out.system.normal_form(*original);
    diff = out.system.normal_form(diff);
    if (!diff.is_zero()) side.push_back(std::move(diff));
  }
  for (const auto& c : t.constraints) {
    RPoly nf = out.system.normal_form(c);
    if (!nf.is_zero()) out.constraints.push_back(std::move(nf));
  }
  for (auto& s : side) out.constraints.push_back(std::move(s));
  return out;
}

TSeries log_derivative(const TSeries& a) {
  if (!a.is_unit()) throw NonUnitDivisor("logarithmic derivative of a non-unit");
  return a.derive() / a;
}

bool in_G(const TSeries& a) { return log_derivative(a).derive().is_zero(); }

GElement make_G_element(const Rational& c, int order) {
  GElement g{exp_series(c, order), c};
  TSeries ratio = log_derivative(g.value);
  if (!ratio.is_constant() || ratio[0] != c) throw InvarianceViolation("exp(ct) has the wrong ratio");
  return g;
}

bool PointResiduals::all_zero() const {
  for (const auto& v : values)
    if (!v.is_zero()) return false;
  return true;
}

PointResiduals residuals_at(const LinearDVariety& t, const std::vector<TSeries>& point) {
  const auto& vars = t.system.variables();
  if (point.size() != vars.size()) throw DimensionError("point does not match bundle variables");
  PointResiduals r;
  for (const auto& [j, q] : t.system.eliminations()) {
    r.labels.push_back(vars[j] + " - (" + q.to_string() + ")");
    r.values.push_back(point[j] - q.evaluate(point));
  }
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (t.system.is_eliminated(j)) continue;
    auto rule = t.system.derivative_rule(j);
    if (!rule) continue;
    r.labels.push_back("delta " + vars[j] + " - (" + rule->to_string() + ")");
    r.values.push_back(point[j].derive() - rule->evaluate(point));
  }
  for (const auto& c : t.constraints) {
    r.labels.push_back(c.to_string());
    r.values.push_back(c.evaluate(point));
  }
  return r;
}

DVariety counterexample_variety() {
  return make_dvariety("X", {"x", "y"}, {}, {"x^2 - y^2", "x^2 - x*y"});
}

LinearDVariety counterexample_restriction() {
  LinearDVariety t = delta_tangent(counterexample_variety(), {"u", "v"});
  SubstitutionSystem rules(t.variables());
  const auto& vars = rules.variables();
  rules.add_equation(RPoly::variable(vars, rules.index_of("x")), RPoly::variable(vars, rules.index_of("y")));
  rules.set_derivative(rules.index_of("x"), RPoly(vars));
  return restrict(t, rules);
}

bool GroupImageReport::passed() const {
  if (!kernel.holds || !kernel.ratio_residual.is_zero()) return false;
  for (const auto& w : witnesses)
    if (!w.residuals.all_zero() || !w.image_ok || !w.side_condition) return false;
  return true;
}

GroupImageReport verify_group_image(const std::vector<Rational>& constants, int order) {
  GroupImageReport r;
  LinearDVariety t = delta_tangent(counterexample_variety(), {"u", "v"});
  LinearDVariety w = counterexample_restriction();
  r.tangent_equations = t.equations();
  r.restricted_equations = w.equations();
  r.kernel = log_derivative_constancy_identity(w.system, "u", "v", "x");
  for (const auto& c : constants) {
    GroupImageReport::Witness wit;
    wit.c = c;
    GElement g = make_G_element(c, order);
    TSeries a = TSeries::constant(c, order);
    wit.point = {a, a, TSeries(2) * g.value, g.value};
    wit.residuals = residuals_at(w, wit.point);
    TSeries image = wit.point[2] - wit.point[3];
    wit.image_ok = (image - g.value).is_zero() && in_G(image);
    wit.side_condition = image.is_unit();
    r.witnesses.push_back(std::move(wit));
  }
  return r;
}

DegreeReport degree_identity_check(const MPoly<TSeries>& p, const MPoly<TSeries>& q, const std::string& y) {
  if (p.is_zero() || q.is_zero()) throw ZeroInput("degree check needs nonzero P and Q");
  if (p.variables() != q.variables()) throw DimensionError("P and Q over different variables");
  auto iy = p.index_of(y);
  if (iy < 0) throw UnknownName("no variable '" + y + "'");
  auto j = static_cast<std::size_t>(iy);
  auto d = [](const TSeries& c) { return c.derive(); };
  MPoly<TSeries> pd = p.map_coefficients<TSeries>(d), qd = q.map_coefficients<TSeries>(d);
  MPoly<TSeries> rhs = pd * q - qd * p;
  MPoly<TSeries> lhs = p * q * MPoly<TSeries>::variable(p.variables(), j);
  DegreeReport r;
  r.deg_p = p.degree_in(j);
  r.deg_q = q.degree_in(j);
  r.deg_rhs = rhs.degree_in(j);
  r.deg_lhs = lhs.degree_in(j);
  r.bound_holds = r.deg_rhs <= r.deg_p + r.deg_q;
  r.lhs_exact = r.deg_lhs == r.deg_p + r.deg_q + 1;
  r.sides_differ = !(lhs - rhs).is_zero();
  return r;
}

namespace {

std::vector<TSeries> base_series(const LinearDVariety& t, const std::vector<Rational>& base_point,
                                 int order) {
  if (base_point.size() != t.base_dim()) throw DimensionError("base point has wrong dimension");
  std::vector<TSeries> out;
  for (const auto& c : base_point) out.push_back(TSeries::constant(c, order));
  return out;
}

/// Rows of the linear constraints in u at a rational base point.
Matrix<Rational> fiber_constraints(const LinearDVariety& t, const std::vector<Rational>& base_point) {
  const std::size_t n = t.base_dim(), k = t.fiber_vars.size();
  std::vector<Rational> at(base_point);
  at.resize(n + k, Rational(0));
  std::vector<std::vector<Rational>> rows;
  for (const auto& c : t.constraints) {
    bool linear = false;
    std::vector<Rational> row;
    for (std::size_t i = 0; i < k; ++i) {
      row.push_back(c.partial(n + i).evaluate(at));
      if (!row.back().is_zero()) linear = true;
    }
    if (linear) rows.push_back(std::move(row));
  }
  Matrix<Rational> m(static_cast<Index>(rows.size()), static_cast<Index>(k));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t i = 0; i < k; ++i) m(static_cast<Index>(r), static_cast<Index>(i)) = rows[r][i];
  return m;
}

}  // namespace

bool satisfies_fiber(const LinearDVariety& t, const std::vector<Rational>& base_point,
                     const std::vector<TSeries>& fiber) {
  int order = TSeries::kExact;
  for (const auto& f : fiber) order = std::min(order, f.precision());
  if (order == TSeries::kExact) order = kDefaultPrecision;
  std::vector<TSeries> point = base_series(t, base_point, order);
  point.insert(point.end(), fiber.begin(), fiber.end());
  return residuals_at(t, point).all_zero();
}

std::vector<Vector<TSeries>> fiber_solutions(const LinearDVariety& t,
                                             const std::vector<Rational>& base_point, int order) {
  const std::size_t n = t.base_dim(), k = t.fiber_vars.size();
  std::vector<TSeries> zero_fiber(k, TSeries::constant(0, order));
  std::vector<TSeries> point = base_series(t, base_point, order);
  point.insert(point.end(), zero_fiber.begin(), zero_fiber.end());
  if (!residuals_at(t, point).all_zero())
    throw PointNotOnVariety("base point is not a constant point of the restricted base");

  auto jm = t.fiber_matrix();
  Matrix<TSeries> j(static_cast<Index>(k), static_cast<Index>(k));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c)
      j(static_cast<Index>(r), static_cast<Index>(c)) = jm[r][c].evaluate(point).truncate(order);
  Matrix<TSeries> phi = fundamental_matrix(j, order);
  std::vector<Vector<TSeries>> out;
  for (const auto& c : nullspace(fiber_constraints(t, base_point)))
    out.emplace_back(phi * to_series(c, order));
  (void)n;
  return out;
}

FiberLinearityReport fiber_linearity_check(const LinearDVariety& t,
                                           const std::vector<std::vector<Rational>>& samples,
                                           const std::vector<Rational>& scalars, int order) {
  FiberLinearityReport r;
  auto check = [&](const std::vector<Rational>& base, const Vector<TSeries>& f) {
    ++r.checks;
    std::vector<TSeries> fiber(f.data(), f.data() + f.size());
    if (!satisfies_fiber(t, base, fiber)) ++r.failures;
  };
  for (const auto& base : samples) {
    ++r.samples;
    auto sols = fiber_solutions(t, base, order);
    const auto k = static_cast<Index>(t.fiber_vars.size());
    check(base, to_series(Vector<Rational>::Zero(k), order));
    for (std::size_t a = 0; a < sols.size(); ++a) {
      for (std::size_t b = a; b < sols.size(); ++b) check(base, Vector<TSeries>(sols[a] + sols[b]));
      for (const auto& c : scalars) check(base, Vector<TSeries>(sols[a] * TSeries(c)));
    }
  }
  return r;
}

std::vector<Vector<TSeries>> tangent_solutions(const DVariety& v, const SharpPoint& a) {
  const std::size_t n = v.dimension();
  auto jac = section_jacobian(v);
  Matrix<TSeries> j(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      j(static_cast<Index>(r), static_cast<Index>(c)) = jac[r][c].evaluate(a.coords).truncate(a.precision);
  Matrix<TSeries> phi = fundamental_matrix(j, a.precision);
  std::vector<Vector<TSeries>> out;
  for (const auto& c : nullspace(jet_equations(v.ideal, a.initial, 1)))
    out.emplace_back(phi * to_series(c, a.precision));
  return out;
}

CrossCheck tangent_jet_cross_check(const DVariety& v, const SharpPoint& a) {
  CrossCheck r;
  DeltaJetSpace djs = delta_jet_space(v, a, 1);
  auto tangent = tangent_solutions(v, a);
  r.dim_jets = djs.dim_C();
  r.dim_tangent = tangent.size();
  SpanCheck jt = constant_span_contains(tangent, djs.horizontal);
  SpanCheck tj = constant_span_contains(djs.horizontal, tangent);
  r.jets_in_tangent = jt.consistent && jt.constant;
  r.tangent_in_jets = tj.consistent && tj.constant;
  r.residual = std::max(jt.residual, tj.residual);
  return r;
}

}  // namespace djets
