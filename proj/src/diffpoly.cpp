#include "djets/diffpoly.hpp"

#include <algorithm>

#include "djets/error.hpp"

namespace djets {

std::vector<std::string> DiffPoly::symbol_names(const std::vector<std::string>& base,
                                                unsigned order) {
  std::vector<std::string> names;
  names.reserve(base.size() * (order + 1));
  for (unsigned k = 0; k <= order; ++k)
    for (const auto& b : base) names.push_back(b + std::string(k, '\''));
  return names;
}

DiffPoly::DiffPoly(std::vector<std::string> base)
    : base_(std::move(base)), poly_(symbol_names(base_, 0)) {}

DiffPoly DiffPoly::variable(std::vector<std::string> base, std::size_t j, unsigned order) {
  DiffPoly p(std::move(base));
  p = p.extended(order);
  p.poly_ = RPoly::variable(p.poly_.variables(), order * p.base_.size() + j);
  return p;
}

DiffPoly DiffPoly::constant(std::vector<std::string> base, const Rational& c) {
  DiffPoly p(std::move(base));
  p.poly_ = RPoly::constant(p.poly_.variables(), c);
  return p;
}

DiffPoly DiffPoly::from_poly(const RPoly& q) {
  DiffPoly p(q.variables());
  p.poly_ = q;
  return p;
}

unsigned DiffPoly::order() const {
  unsigned k = 0;
  const std::size_t n = base_.size();
  for (const auto& [e, c] : poly_.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) k = std::max<unsigned>(k, static_cast<unsigned>(i / n));
  return k;
}

DiffPoly DiffPoly::extended(unsigned order) const {
  if (order <= max_order_) return *this;
  DiffPoly p = *this;
  p.max_order_ = order;
  p.poly_ = poly_.with_variables(symbol_names(base_, order));
  return p;
}

namespace {

std::pair<DiffPoly, DiffPoly> aligned(const DiffPoly& a, const DiffPoly& b) {
  if (a.base() != b.base()) throw DimensionError("differential polynomials over different bases");
  unsigned k = std::max(a.max_order(), b.max_order());
  return {a.extended(k), b.extended(k)};
}

}  // namespace

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  auto [a, b] = aligned(*this, o);
  a.poly_ += b.poly_;
  return *this = std::move(a);
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  auto [a, b] = aligned(*this, o);
  a.poly_ -= b.poly_;
  return *this = std::move(a);
}

DiffPoly operator*(const DiffPoly& x, const DiffPoly& y) {
  auto [a, b] = aligned(x, y);
  a.poly_ = a.poly_ * b.poly_;
  return a;
}

DiffPoly operator*(const Rational& c, DiffPoly a) {
  a.poly_ *= c;
  return a;
}

bool operator==(const DiffPoly& x, const DiffPoly& y) {
  auto [a, b] = aligned(x, y);
  return a.poly_ == b.poly_;
}

DiffPoly total_derivative(const DiffPoly& p) {
  const std::size_t n = p.base().size();
  DiffPoly src = p.extended(p.order() + 1);
  const RPoly& q = src.poly();
  RPoly out(q.variables());
  for (const auto& [e, c] : q.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Exponent f = e;
      f[i] -= 1;
      f[i + n] += 1;
      out.add_term(std::move(f), c * Rational(static_cast<long>(e[i])));
    }
  }
  src.poly_ = std::move(out);
  return src;
}

std::size_t SubstitutionSystem::index_of(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw UnknownName("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars_.begin());
}

void SubstitutionSystem::set_derivative(std::size_t j, RPoly rhs) {
  if (j >= vars_.size()) throw DimensionError("rule for a variable out of range");
  derivative_[j] = rhs.with_variables(vars_);
}

void SubstitutionSystem::add_elimination(std::size_t j, RPoly rhs) {
  if (j >= vars_.size()) throw DimensionError("rule for a variable out of range");
  if (is_eliminated(j)) throw NonTriangular("variable '" + vars_[j] + "' eliminated twice");
  RPoly r = rhs.with_variables(vars_);
  if (r.degree_in(j) > 0) throw NonTriangular("rule for '" + vars_[j] + "' mentions itself");
  eliminate_.emplace_back(j, std::move(r));
}

void SubstitutionSystem::add_equation(const RPoly& lhs_in, const RPoly& rhs_in) {
  RPoly lhs = lhs_in.with_variables(vars_), rhs = rhs_in.with_variables(vars_);
  auto single_variable = [](const RPoly& p) -> std::ptrdiff_t {
    if (p.terms().size() != 1) return -1;
    const auto& [e, c] = *p.terms().begin();
    if (c != Rational(1) || total_degree(e) != 1) return -1;
    return std::find(e.begin(), e.end(), 1u) - e.begin();
  };
  std::ptrdiff_t l = single_variable(lhs), r = single_variable(rhs);
  if (l < 0) throw NonTriangular("left side of '" + lhs.to_string() + " = " + rhs.to_string() +
                                 "' is not a variable");
  if (r >= 0 && r > l) {
    add_elimination(static_cast<std::size_t>(r), lhs);
    return;
  }
  add_elimination(static_cast<std::size_t>(l), rhs);
}

bool SubstitutionSystem::is_eliminated(std::size_t j) const {
  return std::any_of(eliminate_.begin(), eliminate_.end(),
                     [j](const auto& rule) { return rule.first == j; });
}

std::optional<RPoly> SubstitutionSystem::derivative_rule(std::size_t j) const {
  auto it = derivative_.find(j);
  if (it == derivative_.end()) return std::nullopt;
  return it->second;
}

RPoly SubstitutionSystem::variable_normal_form(std::size_t j, std::vector<bool>& visiting) const {
  auto it = std::find_if(eliminate_.begin(), eliminate_.end(),
                         [j](const auto& rule) { return rule.first == j; });
  if (it == eliminate_.end()) return RPoly::variable(vars_, j);
  if (visiting[j]) throw NonTriangular("elimination rules cycle through '" + vars_[j] + "'");
  visiting[j] = true;
  std::vector<RPoly> images;
  images.reserve(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (it->second.degree_in(i) > 0)
      images.push_back(variable_normal_form(i, visiting));
    else
      images.push_back(RPoly::variable(vars_, i));
  }
  visiting[j] = false;
  return it->second.substitute(images);
}

RPoly SubstitutionSystem::normal_form(const RPoly& p_in) const {
  RPoly p = p_in.with_variables(vars_);
  std::vector<bool> visiting(vars_.size(), false);
  std::vector<RPoly> images;
  images.reserve(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (p.degree_in(i) > 0)
      images.push_back(variable_normal_form(i, visiting));
    else
      images.push_back(RPoly::variable(vars_, i));
  }
  return p.substitute(images);
}

RPoly SubstitutionSystem::derivative(const RPoly& p_in) const {
  RPoly p = normal_form(p_in);
  RPoly out(vars_);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (p.degree_in(i) <= 0) continue;
    auto rule = derivative_rule(i);
    if (!rule) throw MissingRule("no rule for delta " + vars_[i]);
    out += p.partial(i) * normal_form(*rule);
  }
  return normal_form(out);
}

RPoly SubstitutionSystem::symbol_normal_form(std::size_t j, unsigned k) const {
  RPoly p = normal_form(RPoly::variable(vars_, j));
  for (unsigned i = 0; i < k; ++i) p = derivative(p);
  return p;
}

RPoly reduce(const DiffPoly& p, const SubstitutionSystem& system) {
  const auto& base = p.base();
  const std::size_t n = base.size();
  std::vector<std::size_t> where(n);
  for (std::size_t j = 0; j < n; ++j) where[j] = system.index_of(base[j]);

  const RPoly& q = p.poly();
  std::vector<RPoly> images;
  images.reserve(q.nvars());
  // Only symbols that occur need a normal form; derivatives are built up
  // order by order per variable.
  std::vector<std::vector<RPoly>> cache(n);
  for (std::size_t s = 0; s < q.nvars(); ++s) {
    std::size_t j = s % n;
    auto k = static_cast<unsigned>(s / n);
    if (q.degree_in(s) <= 0) {
      images.push_back(RPoly(system.variables()));
      continue;
    }
    auto& c = cache[j];
    if (c.empty()) c.push_back(system.normal_form(RPoly::variable(system.variables(), where[j])));
    while (c.size() <= k) c.push_back(system.derivative(c.back()));
    images.push_back(c[k]);
  }
  return system.normal_form(q.substitute(images));
}

KernelIdentity log_derivative_constancy_identity(const SubstitutionSystem& sys,
                                                 const std::string& u, const std::string& v,
                                                 const std::string& ratio) {
  const auto& vars = sys.variables();
  std::size_t iu = sys.index_of(u), iv = sys.index_of(v), ix = sys.index_of(ratio);
  DiffPoly w = DiffPoly::variable(vars, iu) - DiffPoly::variable(vars, iv);
  DiffPoly dw = total_derivative(w);
  DiffPoly ddw = total_derivative(dw);
  DiffPoly expr = ddw * w - dw * dw;

  KernelIdentity out;
  out.normal_form = reduce(expr, sys);
  out.log_derivative = reduce(dw, sys);
  out.ratio_residual =
      out.log_derivative - sys.normal_form(RPoly::variable(vars, ix) * reduce(w, sys));
  out.holds = out.normal_form.is_zero();
  return out;
}

}  // namespace djets
