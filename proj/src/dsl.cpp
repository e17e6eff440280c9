#include "djets/dsl.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "djets/error.hpp"
#include "djets/parse.hpp"

namespace djets {

void SessionConfig::validate() const {
  if (precision < 4) throw ConfigError("precision must be at least 4, got " + std::to_string(precision));
  if (order < 1 || order > 3) throw ConfigError("jet order must be 1, 2 or 3, got " + std::to_string(order));
}

bool operator==(const RestrictionRule& a, const RestrictionRule& b) {
  return a.delta == b.delta && a.var == b.var && a.rhs == b.rhs;
}

bool operator==(const Restriction& a, const Restriction& b) {
  return a.name == b.name && a.on == b.on && a.fiber_vars == b.fiber_vars && a.rules == b.rules;
}

bool operator==(const PointDecl& a, const PointDecl& b) {
  return a.name == b.name && a.on == b.on && a.coords == b.coords && a.integrate_from == b.integrate_from;
}

bool operator==(const DslDocument& a, const DslDocument& b) {
  if (a.varieties.size() != b.varieties.size()) return false;
  for (std::size_t i = 0; i < a.varieties.size(); ++i) {
    const auto &x = a.varieties[i], &y = b.varieties[i];
    if (x.name != y.name || x.vars != y.vars || x.ideal != y.ideal || x.section != y.section) return false;
  }
  return a.restrictions == b.restrictions && a.points == b.points;
}

const DVariety& DslDocument::variety(const std::string& name) const {
  for (const auto& v : varieties)
    if (v.name == name) return v;
  throw UnknownName("no dvariety named '" + name + "'");
}

const Restriction& DslDocument::restriction(const std::string& name) const {
  for (const auto& r : restrictions)
    if (r.name == name) return r;
  throw UnknownName("no restriction named '" + name + "'");
}

const PointDecl& DslDocument::point(const std::string& name) const {
  for (const auto& p : points)
    if (p.name == name) return p;
  throw UnknownName("no point named '" + name + "'");
}

std::vector<Rational> DslDocument::initial_value(const std::string& name) const {
  const PointDecl* p = &point(name);
  for (std::size_t hops = 0; p->integrate_from; ++hops) {
    if (hops > points.size()) throw UnknownName("point '" + name + "' integrates from itself");
    p = &point(*p->integrate_from);
  }
  return p->coords;
}

namespace {

std::vector<std::string> bundle_variables(const DVariety& v, const std::vector<std::string>& fiber) {
  std::vector<std::string> all = v.vars;
  if (fiber.empty()) {
    for (const auto& x : v.vars) all.push_back("d" + x);
  } else {
    all.insert(all.end(), fiber.begin(), fiber.end());
  }
  return all;
}

}  // namespace

void DslDocument::validate() const {
  std::set<std::string> seen;
  for (const auto& v : varieties) {
    if (!seen.insert(v.name).second) throw ArityError("dvariety '" + v.name + "' declared twice");
    v.check_arity();
  }
  seen.clear();
  for (const auto& r : restrictions) {
    if (!seen.insert(r.name).second) throw ArityError("restriction '" + r.name + "' declared twice");
    if (!r.on) continue;
    const DVariety& v = variety(*r.on);
    if (!r.fiber_vars.empty() && r.fiber_vars.size() != v.dimension())
      throw ArityError("restriction '" + r.name + "' names " + std::to_string(r.fiber_vars.size()) +
                       " fibre variables for a " + std::to_string(v.dimension()) + "-dimensional base");
    auto all = bundle_variables(v, r.fiber_vars);
    for (const auto& rule : r.rules) {
      if (std::find(all.begin(), all.end(), rule.var) == all.end())
        throw UnknownName("restriction '" + r.name + "' mentions unknown variable '" + rule.var + "'");
      (void)rule.rhs.with_variables(all);
    }
  }
  seen.clear();
  for (const auto& p : points) {
    if (!seen.insert(p.name).second) throw ArityError("point '" + p.name + "' declared twice");
    const DVariety& v = variety(p.on);
    if (p.integrate_from) {
      if (!seen.count(*p.integrate_from))
        throw UnknownName("point '" + p.name + "' integrates from undeclared point '" + *p.integrate_from + "'");
      if (point(*p.integrate_from).on != p.on)
        throw ArityError("point '" + p.name + "' integrates from a point on another dvariety");
    } else if (p.coords.size() != v.dimension()) {
      throw ArityError("point '" + p.name + "' has " + std::to_string(p.coords.size()) +
                       " coordinates, dvariety '" + v.name + "' has dimension " +
                       std::to_string(v.dimension()));
    }
  }
}

namespace {

class DslParser {
 public:
  explicit DslParser(std::string_view text) : cur_(tokenize(text)) {}

  DslDocument run() {
    while (!cur_.at_end()) {
      const Token& kw = cur_.expect_identifier();
      if (kw.text == "dvariety") {
        doc_.varieties.push_back(dvariety());
      } else if (kw.text == "restrict") {
        doc_.restrictions.push_back(restriction());
      } else if (kw.text == "point") {
        doc_.points.push_back(point());
      } else {
        throw ParseError("expected 'dvariety', 'restrict' or 'point', found '" + kw.text + "'", kw.line,
                         kw.column);
      }
    }
    doc_.validate();
    return std::move(doc_);
  }

 private:
  std::vector<std::string> names() {
    std::vector<std::string> out{cur_.expect_identifier().text};
    while (cur_.accept(",")) out.push_back(cur_.expect_identifier().text);
    return out;
  }

  std::vector<RPoly> polynomial_list(const std::vector<std::string>& vars) {
    std::vector<RPoly> out;
    cur_.expect("[");
    if (cur_.accept("]")) return out;
    do {
      out.push_back(cur_.polynomial(vars));
    } while (cur_.accept(","));
    cur_.expect("]");
    return out;
  }

  DVariety dvariety() {
    const Token name = cur_.expect_identifier();
    cur_.expect("{");
    std::optional<std::vector<std::string>> vars;
    std::vector<RPoly> ideal, section;
    bool have_section = false;
    while (!cur_.accept("}")) {
      const Token key = cur_.expect_identifier();
      cur_.expect(":");
      if (key.text == "vars") {
        if (vars) throw ParseError("vars given twice", key.line, key.column);
        vars = names();
      } else if (key.text == "ideal" || key.text == "section") {
        if (!vars) throw ParseError("'" + key.text + "' before vars", key.line, key.column);
        (key.text == "ideal" ? ideal : section) = polynomial_list(*vars);
        if (key.text == "section") have_section = true;
      } else {
        throw ParseError("expected vars, ideal or section, found '" + key.text + "'", key.line, key.column);
      }
      if (!cur_.accept(";")) {
        cur_.expect("}");
        break;
      }
    }
    if (!vars) throw ParseError("dvariety '" + name.text + "' has no vars", name.line, name.column);
    if (!have_section)
      throw ParseError("dvariety '" + name.text + "' has no section", name.line, name.column);
    if (section.size() != vars->size())
      throw ArityError(std::to_string(name.line) + ":" + std::to_string(name.column) + ": dvariety '" +
                       name.text + "' has " + std::to_string(vars->size()) + " variables but " +
                       std::to_string(section.size()) + " section components");
    return DVariety(name.text, *vars, std::move(ideal), std::move(section));
  }

  /// Identifiers of the expression running up to the next ';' or '}'.
  std::vector<std::string> expression_identifiers() const {
    std::set<std::string> ids;
    for (std::size_t k = 0;; ++k) {
      const Token& t = cur_.peek(k);
      if (t.kind == Token::Kind::End) break;
      if (t.kind == Token::Kind::Symbol && (t.text == ";" || t.text == "}")) break;
      if (t.kind == Token::Kind::Identifier) ids.insert(t.text);
    }
    return {ids.begin(), ids.end()};
  }

  Restriction restriction() {
    Restriction r;
    r.name = cur_.expect_identifier().text;
    std::optional<std::vector<std::string>> vars;
    if (cur_.peek().kind == Token::Kind::Identifier && cur_.peek().text == "on") {
      cur_.next();
      const Token on = cur_.expect_identifier();
      r.on = on.text;
      if (cur_.peek().kind == Token::Kind::Identifier && cur_.peek().text == "with") {
        cur_.next();
        r.fiber_vars = names();
      }
      try {
        vars = bundle_variables(doc_.variety(on.text), r.fiber_vars);
      } catch (const UnknownName&) {
        throw UnknownName(std::to_string(on.line) + ":" + std::to_string(on.column) + ": no dvariety named '" +
                          on.text + "'");
      }
    }
    cur_.expect("{");
    while (!cur_.accept("}")) {
      RestrictionRule rule;
      const Token* lhs = &cur_.expect_identifier();
      if (lhs->text == "delta" && cur_.peek().kind == Token::Kind::Identifier) {
        rule.delta = true;
        lhs = &cur_.expect_identifier();
      }
      rule.var = lhs->text;
      if (vars && std::find(vars->begin(), vars->end(), rule.var) == vars->end())
        throw UnknownName(std::to_string(lhs->line) + ":" + std::to_string(lhs->column) + ": unknown variable '" +
                          rule.var + "'");
      cur_.expect("=");
      rule.rhs = cur_.polynomial(vars ? *vars : expression_identifiers());
      r.rules.push_back(std::move(rule));
      if (!cur_.accept(";")) {
        cur_.expect("}");
        break;
      }
    }
    return r;
  }

  PointDecl point() {
    PointDecl p;
    p.name = cur_.expect_identifier().text;
    const Token& on = cur_.expect_identifier();
    if (on.text != "on") throw ParseError("expected 'on'", on.line, on.column);
    p.on = cur_.expect_identifier().text;
    cur_.expect("{");
    if (cur_.peek().kind == Token::Kind::Identifier && cur_.peek().text == "integrate") {
      cur_.next();
      const Token& from = cur_.expect_identifier();
      if (from.text != "from") throw ParseError("expected 'from'", from.line, from.column);
      p.integrate_from = cur_.expect_identifier().text;
    } else if (cur_.peek().text != "}") {
      do {
        const Token at = cur_.peek();
        RPoly c = cur_.polynomial({});
        if (c.degree() > 0) throw ParseError("coordinates must be rational numbers", at.line, at.column);
        p.coords.push_back(c.is_zero() ? Rational(0) : c.terms().begin()->second);
      } while (cur_.accept(","));
    }
    cur_.expect("}");
    return p;
  }

  TokenCursor cur_;
  DslDocument doc_;
};

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out;
}

std::string poly_list(const std::vector<RPoly>& ps) {
  std::vector<std::string> xs;
  for (const auto& p : ps) xs.push_back(p.to_string());
  return "[" + join(xs) + "]";
}

}  // namespace

DslDocument parse_dsl(std::string_view text) { return DslParser(text).run(); }

std::string print_dsl(const DslDocument& doc) {
  std::ostringstream os;
  bool first = true;
  auto gap = [&] {
    if (!first) os << "\n";
    first = false;
  };
  for (const auto& v : doc.varieties) {
    gap();
    os << "dvariety " << v.name << " {\n"
       << "  vars: " << join(v.vars) << ";\n"
       << "  ideal: " << poly_list(v.ideal) << ";\n"
       << "  section: " << poly_list(v.section) << ";\n"
       << "}\n";
  }
  for (const auto& r : doc.restrictions) {
    gap();
    os << "restrict " << r.name;
    if (r.on) {
      os << " on " << *r.on;
      if (!r.fiber_vars.empty()) os << " with " << join(r.fiber_vars);
    }
    os << " {\n";
    for (const auto& rule : r.rules)
      os << "  " << (rule.delta ? "delta " : "") << rule.var << " = " << rule.rhs.to_string() << ";\n";
    os << "}\n";
  }
  if (!doc.points.empty()) gap();
  for (const auto& p : doc.points) {
    os << "point " << p.name << " on " << p.on << " { ";
    if (p.integrate_from) {
      os << "integrate from " << *p.integrate_from;
    } else {
      std::vector<std::string> xs;
      for (const auto& c : p.coords) xs.push_back(c.to_string());
      os << join(xs);
    }
    os << " }\n";
  }
  return os.str();
}

SubstitutionSystem restriction_rules(const Restriction& r, const LinearDVariety& bundle) {
  SubstitutionSystem s(bundle.variables());
  const auto& vars = s.variables();
  for (const auto& rule : r.rules) {
    std::size_t j = s.index_of(rule.var);
    RPoly rhs = rule.rhs.with_variables(vars);
    if (rule.delta) {
      s.set_derivative(j, std::move(rhs));
    } else {
      s.add_equation(RPoly::variable(vars, j), rhs);
    }
  }
  return s;
}

LinearDVariety apply_restriction(const DslDocument& doc, const Restriction& r) {
  if (!r.on) throw UnknownName("restriction '" + r.name + "' names no dvariety");
  LinearDVariety bundle = delta_tangent(doc.variety(*r.on), r.fiber_vars);
  return restrict(bundle, restriction_rules(r, bundle));
}

}  // namespace djets
