#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "djets/dvariety.hpp"
#include "djets/tangent.hpp"

namespace djets {

enum class OutputFormat { Text, Json };

struct SessionConfig {
  int precision = kDefaultPrecision;
  unsigned order = 1;
  OutputFormat format = OutputFormat::Text;
  std::uint64_t seed = 20240607;

  /// Throws ConfigError unless N >= 4 and 1 <= m <= 3.
  void validate() const;
};

/// One line of a restrict block: `x = rhs` or `delta x = rhs`.
struct RestrictionRule {
  bool delta = false;
  std::string var;
  RPoly rhs;
};

struct Restriction {
  std::string name;
  /// The D-variety whose tangent bundle is restricted, and the fibre names
  /// used for it (empty: the default d<var> names).
  std::optional<std::string> on;
  std::vector<std::string> fiber_vars;
  std::vector<RestrictionRule> rules;
};

struct PointDecl {
  std::string name;
  std::string on;
  /// Either explicit rational coordinates or the name of another point to
  /// integrate from; both denote the sharp point with that initial value.
  std::vector<Rational> coords;
  std::optional<std::string> integrate_from;
};

struct DslDocument {
  std::vector<DVariety> varieties;
  std::vector<Restriction> restrictions;
  std::vector<PointDecl> points;

  const DVariety& variety(const std::string& name) const;
  const Restriction& restriction(const std::string& name) const;
  const PointDecl& point(const std::string& name) const;
  /// Initial value of a point, following `integrate from` links.
  std::vector<Rational> initial_value(const std::string& name) const;

  bool empty() const { return varieties.empty() && restrictions.empty() && points.empty(); }

  /// Name resolution and arity checks; parse_dsl calls this.
  void validate() const;

  friend bool operator==(const DslDocument&, const DslDocument&);
};

bool operator==(const RestrictionRule& a, const RestrictionRule& b);
bool operator==(const Restriction& a, const Restriction& b);
bool operator==(const PointDecl& a, const PointDecl& b);

DslDocument parse_dsl(std::string_view text);
/// Canonical text; parse_dsl(print_dsl(d)) == d.
std::string print_dsl(const DslDocument& doc);

/// The restriction's rules as a system over the bundle's variables.
SubstitutionSystem restriction_rules(const Restriction& r, const LinearDVariety& bundle);
/// Tangent bundle of the restriction's variety with the rules applied.
LinearDVariety apply_restriction(const DslDocument& doc, const Restriction& r);

}  // namespace djets
