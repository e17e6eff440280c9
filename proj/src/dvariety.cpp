#include "djets/dvariety.hpp"

#include <algorithm>

#include "djets/error.hpp"
#include "djets/parse.hpp"
#include "djets/series_ode.hpp"

namespace djets {

DVariety::DVariety(std::string name_, std::vector<std::string> vars_, std::vector<RPoly> ideal_,
                   std::vector<RPoly> section_)
    : name(std::move(name_)), vars(std::move(vars_)), ideal(std::move(ideal_)),
      section(std::move(section_)) {
  check_arity();
}

void DVariety::check_arity() const {
  if (section.size() != vars.size())
    throw ArityError("section of '" + name + "' has " + std::to_string(section.size()) +
                     " components for " + std::to_string(vars.size()) + " variables");
  for (const auto& p : ideal)
    if (p.variables() != vars) throw ArityError("ideal generator of '" + name + "' over wrong variables");
  for (const auto& p : section)
    if (p.variables() != vars) throw ArityError("section of '" + name + "' over wrong variables");
}

DVariety make_dvariety(std::string name, std::vector<std::string> vars,
                       const std::vector<std::string>& ideal,
                       const std::vector<std::string>& section) {
  std::vector<RPoly> gens, sec;
  for (const auto& g : ideal) gens.push_back(parse_polynomial(g, vars));
  for (const auto& s : section) sec.push_back(parse_polynomial(s, vars));
  return DVariety(std::move(name), std::move(vars), std::move(gens), std::move(sec));
}

DVariety product(const DVariety& x1, const DVariety& x2) {
  std::vector<std::string> vars = x1.vars;
  std::vector<std::string> second;
  for (const auto& v : x2.vars) {
    std::string name = v;
    while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_2";
    second.push_back(name);
    vars.push_back(name);
  }
  auto lift1 = [&](const RPoly& p) { return p.with_variables(vars); };
  auto lift2 = [&](const RPoly& p) {
    RPoly renamed = RPoly(second);
    for (const auto& [e, c] : p.terms()) renamed.add_term(e, c);
    return renamed.with_variables(vars);
  };
  DVariety out;
  out.name = x1.name + "*" + x2.name;
  out.vars = vars;
  for (const auto& p : x1.ideal) out.ideal.push_back(lift1(p));
  for (const auto& p : x2.ideal) out.ideal.push_back(lift2(p));
  for (const auto& p : x1.section) out.section.push_back(lift1(p));
  for (const auto& p : x2.section) out.section.push_back(lift2(p));
  out.check_arity();
  return out;
}

std::vector<std::string> prolongation_variables(const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const auto& v : vars) out.push_back("u_" + v);
  return out;
}

std::vector<RPoly> prolongation(const std::vector<std::string>& vars, const std::vector<RPoly>& ideal) {
  std::vector<std::string> all = vars;
  for (auto& u : prolongation_variables(vars)) all.push_back(u);
  std::vector<RPoly> out;
  for (const auto& p : ideal) out.push_back(p.with_variables(all));
  for (const auto& p : ideal) {
    RPoly lin(all);
    for (std::size_t j = 0; j < vars.size(); ++j)
      lin += p.partial(j).with_variables(all) * RPoly::variable(all, vars.size() + j);
    out.push_back(std::move(lin));
  }
  return out;
}

namespace {

/// Remainder of p on division by a single polynomial in graded-lex order.
RPoly remainder(RPoly p, const RPoly& divisor) {
  RPoly r(p.variables());
  if (divisor.is_zero()) return p;
  const auto& [lead_e, lead_c] = *divisor.terms().begin();
  while (!p.is_zero()) {
    auto [e, c] = *p.terms().begin();
    bool divisible = true;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] < lead_e[j]) divisible = false;
    if (divisible) {
      Exponent q(e.size());
      for (std::size_t j = 0; j < e.size(); ++j) q[j] = e[j] - lead_e[j];
      p -= RPoly::monomial(p.variables(), q, c / lead_c) * divisor;
    } else {
      RPoly lt = RPoly::monomial(p.variables(), e, c);
      r += lt;
      p -= lt;
    }
  }
  return r;
}

/// A variable occurring in exactly one term of p, and only as c*x.
std::ptrdiff_t linear_variable(const RPoly& p) {
  for (std::size_t j = p.nvars(); j-- > 0;) {
    if (p.degree_in(j) != 1) continue;
    Exponent e(p.nvars(), 0);
    e[j] = 1;
    bool only = true;
    for (const auto& [f, c] : p.terms())
      if (f[j] != 0 && f != e) only = false;
    if (only) return static_cast<std::ptrdiff_t>(j);
  }
  return -1;
}

}  // namespace

SectionCheck validate_section(const DVariety& v, const std::vector<std::vector<Rational>>& samples,
                              int order) {
  v.check_arity();
  SectionCheck out;
  std::vector<RPoly> targets;
  for (const auto& p : v.ideal) {
    RPoly q(v.vars);
    for (std::size_t j = 0; j < v.vars.size(); ++j) q += p.partial(j) * v.section[j];
    targets.push_back(std::move(q));
  }

  // Eliminate the ideal triangularly where possible.
  SubstitutionSystem rules(v.vars);
  std::vector<RPoly> leftover;
  for (const auto& p : v.ideal) {
    RPoly nf = rules.normal_form(p);
    if (nf.is_zero()) continue;
    std::ptrdiff_t j = linear_variable(nf);
    if (j < 0) {
      leftover.push_back(nf);
      continue;
    }
    Exponent e(nf.nvars(), 0);
    e[static_cast<std::size_t>(j)] = 1;
    Rational c = nf.coefficient(e);
    RPoly rhs = nf - RPoly::monomial(v.vars, e, c);
    rules.add_elimination(static_cast<std::size_t>(j), rhs * (-c.inverse()));
  }
  std::vector<RPoly> rest;
  for (const auto& p : leftover) {
    RPoly nf = rules.normal_form(p);
    if (!nf.is_zero()) rest.push_back(nf);
  }

  if (rest.size() <= 1) {
    out.valid = true;
    for (const auto& q : targets) {
      RPoly r = rules.normal_form(q);
      if (!rest.empty()) r = remainder(r, rest.front());
      if (!r.is_zero()) out.valid = false;
      out.residuals.push_back(std::move(r));
    }
    return out;
  }

  if (samples.empty())
    throw NonTriangular("ideal of '" + v.name + "' is not triangular and no sample points were given");
  out.sampled_only = true;
  out.valid = true;
  out.residuals = targets;
  for (const auto& a0 : samples) {
    SharpPoint a;
    try {
      a = sharp_integrate(v, a0, order);
    } catch (const PointNotOnVariety&) {
      out.valid = false;
      continue;
    }
    for (const auto& q : targets)
      if (!q.evaluate(a.coords).is_zero()) out.valid = false;
  }
  return out;
}

SharpPoint sharp_integrate(const DVariety& v, const std::vector<Rational>& a0, int order) {
  v.check_arity();
  if (a0.size() != v.dimension()) throw DimensionError("initial point has wrong dimension");
  if (order < 1) throw InsufficientPrecision("integration order must be at least 1");
  for (const auto& p : v.ideal)
    if (!p.evaluate(a0).is_zero())
      throw PointNotOnVariety("initial point is not on '" + v.name + "': " + p.to_string() + " = " +
                              p.evaluate(a0).to_string());
  const std::size_t n = v.dimension();
  std::vector<std::vector<Rational>> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j].push_back(a0[j]);
  for (int k = 0; k < order; ++k) {
    std::vector<TSeries> partial;
    partial.reserve(n);
    for (std::size_t j = 0; j < n; ++j) partial.emplace_back(c[j], k);
    Rational inv = Rational(1) / Rational(k + 1);
    for (std::size_t j = 0; j < n; ++j)
      c[j].push_back(v.section[j].evaluate(partial)[static_cast<std::size_t>(k)] * inv);
  }
  SharpPoint a;
  a.precision = order;
  a.initial = a0;
  for (std::size_t j = 0; j < n; ++j) a.coords.emplace_back(std::move(c[j]), order);
  for (const auto& p : v.ideal)
    if (!p.evaluate(a.coords).is_zero())
      throw PointNotOnVariety("trajectory leaves '" + v.name + "': the section is not tangent to " +
                              p.to_string());
  return a;
}

SharpPoint constant_point(const std::vector<Rational>& c, int order) {
  SharpPoint a;
  a.precision = order;
  a.initial = c;
  for (const auto& x : c) a.coords.push_back(TSeries::constant(x, order));
  return a;
}

SharpPoint product_point(const SharpPoint& a1, const SharpPoint& a2) {
  SharpPoint a;
  a.precision = std::min(a1.precision, a2.precision);
  a.coords = a1.coords;
  a.coords.insert(a.coords.end(), a2.coords.begin(), a2.coords.end());
  for (auto& s : a.coords) s = s.truncate(a.precision);
  a.initial = a1.initial;
  a.initial.insert(a.initial.end(), a2.initial.begin(), a2.initial.end());
  return a;
}

namespace {

std::vector<MPoly<TSeries>> section_increments(const DVariety& v, const SharpPoint& a, unsigned m) {
  if (a.coords.size() != v.dimension()) throw DimensionError("sharp point has wrong dimension");
  std::vector<MPoly<TSeries>> out;
  for (const auto& s : v.section) {
    MPoly<TSeries> ds = taylor_shift(s, a.coords, m);
    ds.add_term(Exponent(v.dimension(), 0), -ds.constant_term());
    out.push_back(std::move(ds));
  }
  return out;
}

MPoly<TSeries> apply_with_increments(const std::vector<MPoly<TSeries>>& ds, unsigned m,
                                     const MPoly<TSeries>& f) {
  MPoly<TSeries> out(f.variables());
  for (const auto& [g, c] : f.terms()) {
    if (total_degree(g) > m) continue;
    out.add_term(g, c.derive());
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g[j] == 0) continue;
      Exponent lower = g;
      lower[j] -= 1;
      MPoly<TSeries> mono = MPoly<TSeries>::monomial(f.variables(), lower, c * TSeries(static_cast<int>(g[j])));
      out += truncated_product(mono, ds[j], m);
    }
  }
  return out;
}

}  // namespace

MPoly<TSeries> apply_induced_derivation(const DVariety& v, const SharpPoint& a, unsigned m,
                                        const MPoly<TSeries>& f) {
  return apply_with_increments(section_increments(v, a, m), m, f.with_variables(v.vars));
}

Matrix<TSeries> induced_module_derivation(const DVariety& v, const SharpPoint& a, unsigned m) {
  v.check_arity();
  JetIndexSet lambda(v.dimension(), m);
  auto ds = section_increments(v, a, m);
  const auto size = static_cast<Index>(lambda.size());
  Matrix<TSeries> out = Matrix<TSeries>::Constant(size, size, TSeries(0));
  for (std::size_t row = 0; row < lambda.size(); ++row) {
    auto mono = MPoly<TSeries>::monomial(v.vars, lambda[row], TSeries(1));
    MPoly<TSeries> image = apply_with_increments(ds, m, mono);
    for (const auto& [alpha, c] : image.terms()) {
      auto col = lambda.find(alpha);
      if (col >= 0) out(static_cast<Index>(row), col) = c;
    }
  }
  return out;
}

Vector<TSeries> apply_dual_derivation(const Matrix<TSeries>& derivation, const Vector<TSeries>& v) {
  return derive(v) - derivation * v;
}

DeltaJetSpace delta_jet_space(const DVariety& v, const SharpPoint& a, unsigned m) {
  v.check_arity();
  DeltaJetSpace out;
  out.precision = a.precision;
  out.jets = jet_space(v.ideal, a.coords, m);
  out.derivation = induced_module_derivation(v, a, m);

  const auto rows = static_cast<Index>(out.jets.lambda.size());
  const auto k = static_cast<Index>(out.jets.dim());
  Matrix<TSeries> basis = columns(out.jets.basis, rows);

  // Free coordinates of the kernel basis: basis restricted to them is I.
  std::vector<Index> free;
  {
    std::vector<bool> pivot(static_cast<std::size_t>(rows), false);
    for (Index p : rref(out.jets.equations).pivots) pivot[static_cast<std::size_t>(p)] = true;
    for (Index i = 0; i < rows; ++i)
      if (!pivot[static_cast<std::size_t>(i)]) free.push_back(i);
  }
  Matrix<TSeries> image = derive(basis) - out.derivation * basis;
  out.restricted = Matrix<TSeries>(k, k);
  for (Index i = 0; i < k; ++i) out.restricted.row(i) = image.row(free[static_cast<std::size_t>(i)]);
  if (!is_zero(Matrix<TSeries>(basis * out.restricted - image)))
    throw InvarianceViolation("the induced derivation does not preserve the jet space of '" +
                              v.name + "'");

  Matrix<TSeries> phi = fundamental_matrix(Matrix<TSeries>(-out.restricted), a.precision);
  Matrix<TSeries> horizontal = basis * phi;
  for (Index j = 0; j < k; ++j) {
    Vector<TSeries> h = horizontal.col(j);
    if (out.jets.equations.rows() > 0 && !is_zero(Vector<TSeries>(out.jets.equations * h)))
      throw InvarianceViolation("horizontal vector leaves the jet space");
    if (!is_zero(apply_dual_derivation(out.derivation, h)))
      throw InvarianceViolation("horizontal vector is not annihilated by D");
    out.horizontal.push_back(std::move(h));
  }
  return out;
}

DeltaJetSpace constants_variety_jets(const std::vector<std::string>& vars,
                                     const std::vector<RPoly>& ideal, const std::vector<Rational>& c,
                                     unsigned m, int order) {
  std::vector<RPoly> zero(vars.size(), RPoly(vars));
  DVariety v("V(C)", vars, ideal, zero);
  SharpPoint a = constant_point(c, order);
  DeltaJetSpace djs = delta_jet_space(v, a, m);

  auto rational = nullspace(jet_equations(ideal, c, m));
  std::vector<Vector<TSeries>> constants;
  for (const auto& r : rational) constants.push_back(to_series(r, order));
  SpanCheck forward = constant_span_contains(djs.horizontal, constants);
  SpanCheck backward = constant_span_contains(constants, djs.horizontal);
  if (!forward.ok() || !backward.ok())
    throw InvarianceViolation("horizontal jets of V(C) differ from the rational jet space");
  djs.horizontal = std::move(constants);
  return djs;
}

}  // namespace djets
