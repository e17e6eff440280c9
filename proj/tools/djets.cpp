// djets: command-line front end over .djv documents.
//
// Exit codes: 0 success, 1 a verification failed, 2 bad input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "djets/acceptance.hpp"
#include "djets/delta_module.hpp"
#include "djets/dsl.hpp"
#include "djets/error.hpp"
#include "djets/tangent.hpp"

using json = nlohmann::ordered_json;
using namespace djets;

namespace {

struct Output {
  std::ostringstream text;
  json data = json::object();
  bool ok = true;
};

json to_json(const Rational& r) { return r.to_string(); }

json to_json(const TSeries& s) {
  json c = json::array();
  for (const auto& x : s.coefficients()) c.push_back(x.to_string());
  return {{"precision", s.is_exact() ? json("exact") : json(s.precision())}, {"coefficients", c}};
}

template <class T>
json to_json(const std::vector<T>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

json to_json(const Vector<TSeries>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const Vector<Rational>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).to_string());
  return out;
}

json strings(const std::vector<std::string>& xs) { return json(xs); }

template <class V>
std::string tuple(const V& v) {
  std::string out = "(";
  for (Index i = 0; i < static_cast<Index>(v.size()); ++i) {
    if (i) out += ", ";
    out += v[static_cast<std::size_t>(i)].to_string();
  }
  return out + ")";
}

std::string tuple_vec(const Vector<Rational>& v) {
  std::vector<Rational> xs(v.data(), v.data() + v.size());
  return tuple(xs);
}

std::string tuple_vec(const Vector<TSeries>& v) {
  std::vector<TSeries> xs(v.data(), v.data() + v.size());
  return tuple(xs);
}

std::vector<std::string> monomials(const std::vector<std::string>& vars, const JetIndexSet& lambda) {
  std::vector<std::string> out;
  for (const auto& e : lambda.indices()) out.push_back(RPoly::monomial(vars, e, Rational(1)).to_string());
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

DslDocument load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UnknownName("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dsl(buf.str());
}

/// Coordinate points declared on a variety, in document order.
std::vector<std::vector<Rational>> samples_on(const DslDocument& doc, const std::string& name) {
  std::vector<std::vector<Rational>> out;
  for (const auto& p : doc.points)
    if (p.on == name && !p.integrate_from) out.push_back(p.coords);
  return out;
}

const PointDecl& first_point_on(const DslDocument& doc, const std::string& name) {
  for (const auto& p : doc.points)
    if (p.on == name) return p;
  throw UnknownName("no point declared on '" + name + "'");
}

void cmd_check(const DslDocument& doc, const SessionConfig& cfg, Output& o) {
  json items = json::array();
  for (const auto& v : doc.varieties) {
    SectionCheck c = validate_section(v, samples_on(doc, v.name), cfg.precision);
    std::vector<std::string> res;
    for (const auto& r : c.residuals) res.push_back(r.to_string());
    items.push_back({{"dvariety", v.name}, {"valid", c.valid}, {"sampled_only", c.sampled_only}, {"residuals", res}});
    o.text << v.name << ": section " << (c.valid ? "valid" : "INVALID") << (c.sampled_only ? " (sampled)" : "") << "\n";
    if (!c.valid)
      for (std::size_t i = 0; i < c.residuals.size(); ++i)
        if (!c.residuals[i].is_zero())
          o.text << "  residual of " << v.ideal[i].to_string() << ": " << c.residuals[i].to_string() << "\n";
    o.ok = o.ok && c.valid;
  }
  o.data["check"] = items;
}

void cmd_jet(const DslDocument& doc, const SessionConfig& cfg, const std::string& at, Output& o) {
  const PointDecl& p = doc.point(at);
  const DVariety& v = doc.variety(p.on);
  std::vector<Rational> a0 = doc.initial_value(at);
  JetSpace<Rational> js = jet_space(v.ideal, a0, cfg.order);
  SharpPoint a = sharp_integrate(v, a0, cfg.precision);
  DeltaJetSpace djs = delta_jet_space(v, a, cfg.order);

  auto lambda = monomials(v.vars, js.lambda);
  std::vector<std::string> basis;
  for (const auto& b : js.basis) basis.push_back(tuple_vec(b));
  o.text << "jet space of " << v.name << " at " << at << " = " << tuple(a0) << ", order " << cfg.order << "\n"
         << "  coordinates: " << join(lambda) << "\n"
         << "  basis: {" << join(basis) << "}\n"
         << "  delta-jets: dim_K = " << djs.dim_K() << ", dim_C = " << djs.dim_C() << "\n";
  for (std::size_t i = 0; i < djs.horizontal.size(); ++i)
    o.text << "  horizontal[" << i << "] = " << tuple_vec(djs.horizontal[i]) << "\n";

  json jb = json::array();
  for (const auto& b : js.basis) jb.push_back(to_json(b));
  json jh = json::array();
  for (const auto& h : djs.horizontal) jh.push_back(to_json(h));
  o.data["jet"] = {{"dvariety", v.name}, {"point", at},        {"initial", to_json(a0)},
                   {"order", cfg.order}, {"coordinates", lambda}, {"basis", jb},
                   {"dim_K", djs.dim_K()}, {"dim_C", djs.dim_C()}, {"horizontal", jh}};
}

void cmd_tangent(const DslDocument& doc, Output& o) {
  json items = json::array();
  auto emit = [&](const std::string& name, const std::string& kind, const LinearDVariety& t) {
    auto eqs = t.equations();
    o.text << kind << " " << name << ":\n";
    for (const auto& e : eqs) o.text << "  " << e << "\n";
    items.push_back({{"name", name}, {"kind", kind}, {"variables", strings(t.variables())}, {"equations", eqs}});
  };
  for (const auto& v : doc.varieties) emit(v.name, "tangent", delta_tangent(v));
  for (const auto& r : doc.restrictions)
    if (r.on) emit(r.name, "restriction", apply_restriction(doc, r));
  o.data["tangent"] = items;
}

void cmd_integrate(const DslDocument& doc, const SessionConfig& cfg, const std::string& from, Output& o) {
  const PointDecl& p = doc.point(from);
  const DVariety& v = doc.variety(p.on);
  SharpPoint a = sharp_integrate(v, doc.initial_value(from), cfg.precision);
  json coords = json::object();
  o.text << "sharp point of " << v.name << " through " << tuple(a.initial) << "\n";
  for (std::size_t j = 0; j < v.vars.size(); ++j) {
    o.text << "  " << v.vars[j] << "(t) = " << a.coords[j].to_string() << "\n";
    coords[v.vars[j]] = to_json(a.coords[j]);
  }
  o.data["integrate"] = {{"dvariety", v.name}, {"from", from}, {"precision", a.precision}, {"coordinates", coords}};
}

void cmd_horizontal(const DslDocument& doc, const SessionConfig& cfg, Output& o) {
  json items = json::array();
  for (const auto& p : doc.points) {
    const DVariety& v = doc.variety(p.on);
    SharpPoint a = sharp_integrate(v, doc.initial_value(p.name), cfg.precision);
    DeltaJetSpace djs = delta_jet_space(v, a, cfg.order);
    auto lambda = monomials(v.vars, djs.lambda());
    o.text << v.name << " at " << p.name << ", order " << cfg.order << ": dim_C = " << djs.dim_C() << " (dim_K = "
           << djs.dim_K() << ")\n  coordinates: " << join(lambda) << "\n";
    json jh = json::array();
    for (std::size_t i = 0; i < djs.horizontal.size(); ++i) {
      o.text << "  h" << i << " = " << tuple_vec(djs.horizontal[i]) << "\n";
      jh.push_back(to_json(djs.horizontal[i]));
    }
    items.push_back({{"dvariety", v.name}, {"point", p.name}, {"coordinates", lambda}, {"dim_K", djs.dim_K()},
                     {"dim_C", djs.dim_C()}, {"horizontal", jh}});
  }
  o.data["horizontal"] = {{"order", cfg.order}, {"points", items}};
}

void cmd_product(const DslDocument& doc, const SessionConfig& cfg, const std::string& n1, const std::string& n2,
                 Output& o) {
  const DVariety &x1 = doc.variety(n1), &x2 = doc.variety(n2);
  const PointDecl &p1 = first_point_on(doc, n1), &p2 = first_point_on(doc, n2);
  SharpPoint a1 = sharp_integrate(x1, doc.initial_value(p1.name), cfg.precision);
  SharpPoint a2 = sharp_integrate(x2, doc.initial_value(p2.name), cfg.precision);
  ProductReport r = verify_product(x1, a1, x2, a2, cfg.order);
  o.text << n1 << " x " << n2 << " at (" << p1.name << ", " << p2.name << "), order " << cfg.order
         << ": dims " << r.dim_1 << ", " << r.dim_2 << " -> " << r.dim_product << "\n";
  json items = json::array();
  for (std::size_t i = 0; i < r.decompositions.size(); ++i) {
    const auto& d = r.decompositions[i];
    auto consts = [](const std::vector<TSeries>& xs) {
      std::vector<Rational> out;
      for (const auto& x : xs) out.push_back(x[0]);
      return out;
    };
    o.text << "  v" << i << ": c1 = " << d.c1[0].to_string() << ", c_w = " << tuple(consts(d.c_w))
           << ", c_w' = " << tuple(consts(d.c_w2)) << ", c_ww' = " << tuple(consts(d.c_ww)) << "\n";
    items.push_back({{"c1", d.c1[0].to_string()}, {"c_w", to_json(consts(d.c_w))},
                     {"c_w2", to_json(consts(d.c_w2))}, {"c_ww", to_json(consts(d.c_ww))},
                     {"all_constant", d.all_constant}});
    o.ok = o.ok && d.all_constant;
  }
  o.data["product"] = {{"factors", {n1, n2}}, {"order", cfg.order}, {"dim_1", r.dim_1}, {"dim_2", r.dim_2},
                       {"dim_product", r.dim_product}, {"decompositions", items}};
}

void cmd_counterexample(const SessionConfig& cfg, Output& o) {
  std::vector<Rational> cs{0, 1, -1, 2, -2, Rational(1) / Rational(2), Rational(-3) / Rational(5)};
  GroupImageReport r = verify_group_image(cs, cfg.precision);
  o.text << "tangent bundle of X:\n";
  for (const auto& e : r.tangent_equations) o.text << "  " << e << "\n";
  o.text << "restriction W (x = y, delta x = 0, u != v):\n";
  for (const auto& e : r.restricted_equations) o.text << "  " << e << "\n";
  o.text << "kernel identity: delta(delta w)*w - (delta w)^2 -> " << r.kernel.normal_form.to_string()
         << (r.kernel.holds ? " (holds)" : " (FAILS)") << "\n"
         << "  delta w = " << r.kernel.log_derivative.to_string() << ", delta w - x*w -> "
         << r.kernel.ratio_residual.to_string() << "\n"
         << "witnesses (c, c, 2 exp(ct), exp(ct)), N = " << cfg.precision << ":\n";
  json ws = json::array();
  for (const auto& w : r.witnesses) {
    bool ok = w.residuals.all_zero() && w.image_ok && w.side_condition;
    o.text << "  c = " << w.c.to_string() << ": residuals " << (w.residuals.all_zero() ? "0" : "NONZERO")
           << ", f = exp(ct) " << (w.image_ok ? "yes" : "no") << ", u != v " << (w.side_condition ? "yes" : "no")
           << "\n";
    ws.push_back({{"c", w.c.to_string()}, {"residuals_zero", w.residuals.all_zero()}, {"image_ok", w.image_ok},
                  {"side_condition", w.side_condition}, {"passed", ok}});
  }
  o.ok = r.passed();
  o.text << (o.ok ? "counterexample reproduced\n" : "counterexample FAILED\n");
  o.data["counterexample"] = {{"tangent", r.tangent_equations},
                              {"restriction", r.restricted_equations},
                              {"kernel", {{"holds", r.kernel.holds},
                                          {"normal_form", r.kernel.normal_form.to_string()},
                                          {"log_derivative", r.kernel.log_derivative.to_string()},
                                          {"ratio_residual", r.kernel.ratio_residual.to_string()}}},
                              {"precision", cfg.precision},
                              {"witnesses", ws},
                              {"passed", o.ok}};
}

void cmd_suite(const SessionConfig& cfg, const std::string& corpus, Output& o) {
  AcceptanceOptions options;
  options.seed = cfg.seed;
  options.corpus = load_corpus(corpus);
  json items = json::array();
  for (const auto& r : run_acceptance(options)) {
    o.text << format_result(r) << "\n";
    // Timings vary run to run; JSON stays byte-stable without them.
    items.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    o.ok = o.ok && r.passed;
  }
  o.data["suite"] = {{"seed", cfg.seed}, {"criteria", items}, {"passed", o.ok}};
}

int default_precision() {
  const char* env = std::getenv("DJETS_PRECISION");
  if (!env || !*env) return kDefaultPrecision;
  try {
    std::size_t used = 0;
    int n = std::stoi(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return n;
  } catch (const std::exception&) {
    throw ConfigError(std::string("DJETS_PRECISION is not an integer: '") + env + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jets and tangent bundles of D-varieties over truncated power series"};
  app.require_subcommand(1);
  app.fallthrough();

  SessionConfig cfg;
  std::string format = "text";
  int precision = 0;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "Seed for the randomized suites");
  app.add_option("-N,--precision", precision, "Series precision (default 24 or $DJETS_PRECISION)");
  app.add_option("-m,--order", cfg.order, "Jet order");

  std::string file, at, from, x1, x2, corpus = DJETS_CORPUS_DIR;
  auto* check = app.add_subcommand("check", "Validate every section in a document");
  check->add_option("file", file, "Document")->required();
  auto* jet = app.add_subcommand("jet", "Jet space and horizontal jets at a point");
  jet->add_option("--at", at, "Point name")->required();
  jet->add_option("file", file, "Document")->required();
  auto* tangent = app.add_subcommand("tangent", "Tangent bundles and restrictions");
  tangent->add_option("file", file, "Document")->required();
  auto* integrate = app.add_subcommand("integrate", "Sharp point through a declared point");
  integrate->add_option("--from", from, "Point name")->required();
  integrate->add_option("file", file, "Document")->required();
  auto* horizontal = app.add_subcommand("horizontal", "Horizontal jets at every declared point");
  horizontal->add_option("file", file, "Document")->required();
  auto* product = app.add_subcommand("verify-product", "Decompose horizontal jets of a product");
  product->add_option("x1", x1, "First factor")->required();
  product->add_option("x2", x2, "Second factor")->required();
  product->add_option("file", file, "Document")->required();
  auto* counter = app.add_subcommand("counterexample", "Reproduce the diagonal restriction example");
  auto* suite = app.add_subcommand("suite", "Run every acceptance check");
  suite->add_option("--corpus", corpus, "Directory of .djv documents");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Output o;
  try {
    cfg.precision = precision ? precision : default_precision();
    cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
    cfg.validate();

    auto doc = [&] { return load(file); };
    if (*check) cmd_check(doc(), cfg, o);
    else if (*jet) cmd_jet(doc(), cfg, at, o);
    else if (*tangent) cmd_tangent(doc(), o);
    else if (*integrate) cmd_integrate(doc(), cfg, from, o);
    else if (*horizontal) cmd_horizontal(doc(), cfg, o);
    else if (*product) cmd_product(doc(), cfg, x1, x2, o);
    else if (*counter) cmd_counterexample(cfg, o);
    else if (*suite) cmd_suite(cfg, corpus, o);
  } catch (const DecompositionFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (cfg.format == OutputFormat::Json) {
    o.data["ok"] = o.ok;
    std::cout << o.data.dump(2) << "\n";
  } else {
    std::cout << o.text.str();
  }
  return o.ok ? 0 : 1;
}
