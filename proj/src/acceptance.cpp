#include "djets/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>

#include "djets/delta_module.hpp"
#include "djets/dsl.hpp"
#include "djets/error.hpp"
#include "djets/parse.hpp"
#include "djets/random.hpp"
#include "djets/series_ode.hpp"
#include "djets/tangent.hpp"

namespace djets {

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".djv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream buf;
    buf << in.rdbuf();
    DslDocument doc = parse_dsl(buf.str());
    for (const auto& p : doc.points) {
      if (p.integrate_from) continue;
      out.push_back({f.filename().string() + ":" + p.name, doc.variety(p.on), p.coords});
    }
  }
  return out;
}

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

constexpr int kN = 24;

std::vector<std::string> xy{"x", "y"};
std::vector<std::string> xyuv{"x", "y", "u", "v"};

RPoly over(const std::string& text, const std::vector<std::string>& vars) {
  return parse_polynomial(text, vars);
}

// The displayed tangent system of the counterexample.
Outcome tangent_system() {
  LinearDVariety t = delta_tangent(counterexample_variety(), {"u", "v"});
  const char* expected[] = {"x^2 - y^2", "x^2 - x*y", "2*x*u - 2*y*v", "(2*x - y)*u - x*v"};
  for (std::size_t j = 0; j < 4; ++j) {
    auto rule = t.system.derivative_rule(j);
    if (!rule || *rule != over(expected[j], xyuv))
      return {false, "delta " + xyuv[j] + " = " + (rule ? rule->to_string() : "<none>") + ", expected " + expected[j]};
  }
  if (!t.constraints.empty()) return {false, "unexpected constraint " + t.constraints.front().to_string()};
  if (!t.system.eliminations().empty()) return {false, "unexpected elimination"};
  return {true, "delta u = " + t.system.derivative_rule(2)->to_string() + ", delta v = " +
                    t.system.derivative_rule(3)->to_string()};
}

Outcome restriction_display() {
  LinearDVariety w = counterexample_restriction();
  std::vector<std::string> expected{"x = y", "delta x = 0", "delta u = 2*x*u - 2*x*v", "delta v = x*u - x*v"};
  auto eqs = w.equations();
  if (eqs != expected) {
    std::string got;
    for (const auto& e : eqs) got += (got.empty() ? "" : "; ") + e;
    return {false, "got " + got};
  }
  // The same four equations as polynomials, independently of printing.
  auto du = w.system.derivative_rule(2), dv = w.system.derivative_rule(3);
  bool rules_ok = du && dv && *du == over("2*x*(u - v)", xyuv) && *dv == over("x*(u - v)", xyuv) &&
                  w.system.derivative_rule(0) && w.system.derivative_rule(0)->is_zero();
  if (!rules_ok) return {false, "rules differ from the displayed polynomials"};
  return {true, "x = y; delta x = 0; delta u = 2*x*u - 2*x*v; delta v = x*u - x*v"};
}

Outcome kernel_identity() {
  KernelIdentity k = log_derivative_constancy_identity(counterexample_restriction().system);
  if (!k.holds || !k.normal_form.is_zero())
    return {false, "normal form " + k.normal_form.to_string()};
  if (!k.ratio_residual.is_zero()) return {false, "delta w / w - x = " + k.ratio_residual.to_string()};
  return {true, "delta(delta w)*w - (delta w)^2 reduces to 0; delta w = " + k.log_derivative.to_string()};
}

Outcome group_witnesses() {
  std::vector<Rational> cs{0, 1, -1, 2, -2, Rational(1) / Rational(2), Rational(-3) / Rational(5)};
  GroupImageReport r = verify_group_image(cs, kN);
  for (const auto& w : r.witnesses) {
    for (std::size_t i = 0; i < w.residuals.values.size(); ++i) {
      const TSeries& res = w.residuals.values[i];
      if (res.precision() < kN - 1) return {false, "residual known only to order " + std::to_string(res.precision())};
      if (!res.is_zero()) return {false, "c = " + w.c.to_string() + ": " + w.residuals.labels[i] + " = " + res.to_string()};
    }
    // f(point) = u - v against exp(ct) built from its own coefficients c^k/k!.
    TSeries image = w.point[2] - w.point[3];
    Rational ck(1);
    for (int k = 0; k <= kN; ++k) {
      if (image[static_cast<std::size_t>(k)] != ck / factorial(static_cast<unsigned>(k)))
        return {false, "f(point) is not exp(" + w.c.to_string() + " t) at order " + std::to_string(k)};
      ck *= w.c;
    }
    if (!w.image_ok || !w.side_condition) return {false, "image check failed at c = " + w.c.to_string()};
  }
  if (!r.passed()) return {false, "group image report failed"};
  return {true, std::to_string(r.witnesses.size()) + " witnesses, every residual coefficient 0 through order " +
                    std::to_string(kN - 1)};
}

Outcome dimension_law(Sampler& s) {
  for (int trial = 0; trial < 50; ++trial) {
    Index d = s.integer(1, 4);
    DeltaModule m(s.polynomial_matrix(d, d, 2));
    for (const DeltaModule& x : {m, dual(m)}) {
      auto h = horizontal_sections(x, kN);
      if (static_cast<Index>(h.size()) != d)
        return {false, "trial " + std::to_string(trial) + ": " + std::to_string(h.size()) + " sections for dim " +
                           std::to_string(d)};
      for (const auto& c : h) {
        Vector<TSeries> res = derive(c) + x.a * c;
        if (min_precision(res) < kN - 1 || !is_zero(res))
          return {false, "trial " + std::to_string(trial) + ": nonzero residual"};
      }
      if (rank(coefficient(columns(h, d), 0)) != d)
        return {false, "trial " + std::to_string(trial) + ": sections dependent at t = 0"};
    }
  }
  return {true, "50 modules, horizontal dimension equals module dimension, residuals 0 through order 23"};
}

Outcome tensor_horizontals(Sampler& s) {
  for (int trial = 0; trial < 20; ++trial) {
    Index dm = s.integer(1, 3), dn = s.integer(1, 3);
    DeltaModule a(s.polynomial_matrix(dm, dm, 2)), b(s.polynomial_matrix(dn, dn, 2));
    TensorHorizontalReport r = verify_tensor_horizontals(a, b, kN);
    if (!r.passed())
      return {false, "trial " + std::to_string(trial) + ": dims " + std::to_string(r.left_dim) + " vs " +
                         std::to_string(r.right_dim) + ", residual " + r.residual.to_string()};
  }
  return {true, "20 module pairs, equal dimensions and mutual containment with zero residuals"};
}

Outcome product_decomposition() {
  DVariety line1 = make_dvariety("L1", {"x"}, {}, {"x"});
  DVariety line2 = make_dvariety("L2", {"z"}, {}, {"2*z"});
  DVariety x = counterexample_variety();
  struct Suite {
    const DVariety *x1, *x2;
    std::vector<Rational> p1, p2;
  };
  std::vector<Suite> suites{{&line1, &line2, {1}, {1}}, {&x, &line1, {1, 2}, {1}}};
  std::size_t total = 0;
  for (const auto& su : suites) {
    SharpPoint a1 = sharp_integrate(*su.x1, su.p1, kN), a2 = sharp_integrate(*su.x2, su.p2, kN);
    for (unsigned m : {1u, 2u}) {
      ProductReport r;
      try {
        r = verify_product(*su.x1, a1, *su.x2, a2, m);
      } catch (const DecompositionFailure& e) {
        return {false, su.x1->name + " x " + su.x2->name + ", m = " + std::to_string(m) + ": " + e.what()};
      }
      if (r.decompositions.size() != r.dim_product || r.dim_product == 0)
        return {false, "missing decompositions"};
      for (const auto& d : r.decompositions) {
        bool constant = d.c1.is_constant();
        for (const auto* v : {&d.c_w, &d.c_w2, &d.c_ww})
          for (const auto& c : *v) constant = constant && c.is_constant();
        if (!constant || !d.all_constant || !d.residual.is_zero())
          return {false, su.x1->name + " x " + su.x2->name + ": non-constant coefficient"};
      }
      total += r.decompositions.size();
    }
  }
  return {true, std::to_string(total) + " horizontal product jets decomposed with constant coefficients"};
}

Outcome constants_jets() {
  DeltaJetSpace d = constants_variety_jets(xy, {over("y - x^2", xy)}, {1, 1}, 1);
  if (d.horizontal.size() != 1) return {false, "dimension " + std::to_string(d.horizontal.size())};
  const auto& v = d.horizontal.front();
  if (!is_constant(v)) return {false, "basis vector not constant"};
  if (v.size() != 2 || v(0) != TSeries(1) || v(1) != TSeries(2)) return {false, "basis differs from (1, 2)"};
  return {true, "basis {(1, 2)}"};
}

Outcome corpus_cross_check(const std::vector<CorpusEntry>& corpus) {
  if (corpus.empty()) return {false, "empty corpus"};
  for (const auto& e : corpus) {
    SharpPoint a = sharp_integrate(e.variety, e.initial, kN);
    CrossCheck c = tangent_jet_cross_check(e.variety, a);
    if (!c.passed())
      return {false, e.source + ": dims " + std::to_string(c.dim_jets) + "/" + std::to_string(c.dim_tangent) +
                         ", residual " + c.residual.to_string()};
  }
  return {true, std::to_string(corpus.size()) + " corpus points, mutual containment with zero residuals"};
}

MPoly<TSeries> random_y_poly(Sampler& s, const std::vector<std::string>& vars) {
  int deg = s.integer(0, 3);
  MPoly<TSeries> p(vars);
  for (int k = 0; k <= deg; ++k) {
    if (k < deg && s.coin()) continue;
    Exponent e{static_cast<unsigned>(s.integer(0, 1)), static_cast<unsigned>(k)};
    if (k == deg) e[0] = 0;
    p.add_term(e, s.series(kN, k == deg));
  }
  return p;
}

Outcome degree_step(Sampler& s) {
  std::vector<std::string> vars{"x", "y"};
  int differ = 0;
  for (int trial = 0; trial < 100; ++trial) {
    MPoly<TSeries> p = random_y_poly(s, vars), q = random_y_poly(s, vars);
    DegreeReport r = degree_identity_check(p, q);
    if (!r.bound_holds || !r.lhs_exact)
      return {false, "trial " + std::to_string(trial) + ": deg_y P = " + std::to_string(r.deg_p) + ", deg_y Q = " +
                         std::to_string(r.deg_q) + ", rhs " + std::to_string(r.deg_rhs) + ", lhs " +
                         std::to_string(r.deg_lhs)};
    if (r.sides_differ) ++differ;
  }
  return {true, "100 pairs, bound and exact degree hold (" + std::to_string(differ) + " with differing sides)"};
}

Outcome series_oracles() {
  DVariety e = make_dvariety("E", {"x"}, {}, {"x"});
  DVariety g = make_dvariety("G", {"x"}, {}, {"x^2"});
  SharpPoint a = sharp_integrate(e, {1}, kN), b = sharp_integrate(g, {1}, kN);
  if (a.precision < kN || b.precision < kN) return {false, "precision dropped"};
  Rational fact(1);
  for (int k = 0; k <= kN; ++k) {
    if (k > 0) fact *= Rational(k);
    if (a.coords[0][static_cast<std::size_t>(k)] != Rational(1) / fact)
      return {false, "exp coefficient " + std::to_string(k) + " is " + a.coords[0][static_cast<std::size_t>(k)].to_string()};
    if (b.coords[0][static_cast<std::size_t>(k)] != Rational(1))
      return {false, "1/(1-t) coefficient " + std::to_string(k) + " is " + b.coords[0][static_cast<std::size_t>(k)].to_string()};
  }
  return {true, "exp and 1/(1-t) exact through order 24"};
}

// Property suites.

Outcome hasse_product(Sampler& s) {
  for (int trial = 0; trial < 100; ++trial) {
    RPoly f = s.polynomial(xy, 4), g = s.polynomial(xy, 4);
    Exponent alpha{static_cast<unsigned>(s.integer(0, 3)), static_cast<unsigned>(s.integer(0, 3))};
    RPoly rhs(xy);
    for (unsigned i = 0; i <= alpha[0]; ++i)
      for (unsigned j = 0; j <= alpha[1]; ++j)
        rhs += f.hasse({i, j}) * g.hasse({alpha[0] - i, alpha[1] - j});
    if ((f * g).hasse(alpha) != rhs) return {false, "Hasse product rule fails for " + f.to_string() + ", " + g.to_string()};
  }
  return {true, ""};
}

DiffPoly random_diffpoly(Sampler& s, const std::vector<std::string>& base) {
  DiffPoly p = DiffPoly::constant(base, s.rational());
  for (int k = s.integer(1, 3); k > 0; --k) {
    DiffPoly term = DiffPoly::constant(base, s.nonzero_rational());
    for (int f = s.integer(1, 2); f > 0; --f)
      term = term * DiffPoly::variable(base, static_cast<std::size_t>(s.integer(0, 1)), static_cast<unsigned>(s.integer(0, 2)));
    p += term;
  }
  return p;
}

Outcome leibniz(Sampler& s) {
  for (int trial = 0; trial < 100; ++trial) {
    DiffPoly p = random_diffpoly(s, xy), q = random_diffpoly(s, xy);
    if (total_derivative(p * q) != total_derivative(p) * q + p * total_derivative(q))
      return {false, "total derivative Leibniz fails"};
    TSeries a = s.series(kN), b = s.series(kN);
    if ((a * b).derive() != a.derive() * b + a * b.derive()) return {false, "series Leibniz fails"};
    // Twisted Leibniz for a module: d(r c) = r' c + r d(c).
    Index d = s.integer(1, 3);
    DeltaModule m(s.polynomial_matrix(d, d, 2));
    Vector<TSeries> c(d);
    for (Index i = 0; i < d; ++i) c(i) = s.series(kN);
    TSeries r = s.series(kN);
    Vector<TSeries> lhs = m.apply(Vector<TSeries>(c * r));
    Vector<TSeries> rhs = c * r.derive() + m.apply(c) * r;
    if (!is_zero(Vector<TSeries>(lhs - rhs))) return {false, "module Leibniz fails"};
  }
  return {true, ""};
}

Outcome functoriality(Sampler& s) {
  std::vector<std::string> zw{"z", "w"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RPoly> f{s.polynomial(xy, 2, 3), s.polynomial(xy, 2, 3)};
    std::vector<RPoly> g{s.polynomial(zw, 2, 3), s.polynomial(zw, 2, 3)};
    std::vector<RPoly> gf{g[0].substitute(f), g[1].substitute(f)};
    std::vector<Rational> a{s.rational(), s.rational()};
    std::vector<Rational> fa{f[0].evaluate(a), f[1].evaluate(a)};
    unsigned m = static_cast<unsigned>(s.integer(1, 3));
    Matrix<Rational> lhs = jet_of_morphism(gf, a, m);
    Matrix<Rational> rhs = jet_of_morphism(g, fa, m) * jet_of_morphism(f, a, m);
    if (lhs != rhs) return {false, "jet of a composite differs from the composite of jets"};
  }
  return {true, ""};
}

Outcome log_homomorphism(Sampler& s) {
  for (int trial = 0; trial < 100; ++trial) {
    TSeries a = s.series(kN, true), b = s.series(kN, true);
    if (log_derivative(a * b) != log_derivative(a) + log_derivative(b)) return {false, "l(ab) != l(a) + l(b)"};
    if (log_derivative(a.inverse()) != -log_derivative(a)) return {false, "l(1/a) != -l(a)"};
  }
  return {true, ""};
}

Outcome g_closure(Sampler& s) {
  for (int trial = 0; trial < 100; ++trial) {
    GElement g = make_G_element(s.rational(), kN), h = make_G_element(s.rational(), kN);
    TSeries a = g.value * TSeries(s.nonzero_rational()), b = h.value * TSeries(s.nonzero_rational());
    if (!in_G(a) || !in_G(b) || !in_G(a * b) || !in_G(a.inverse()) || !in_G(a / b)) return {false, "G not closed"};
    // A unit with non-constant log derivative stays outside.
    TSeries outside({1, s.nonzero_rational()}, kN);
    if (in_G(outside)) return {false, "1 + ct reported in G"};
  }
  return {true, ""};
}

Outcome fiber_linearity(Sampler& s) {
  LinearDVariety w = counterexample_restriction();
  std::vector<std::vector<Rational>> samples;
  for (int k = 0; k < 10; ++k) {
    Rational a = s.rational();
    samples.push_back({a, a});
  }
  std::vector<Rational> scalars;
  for (int k = 0; k < 5; ++k) scalars.push_back(s.rational());
  FiberLinearityReport r = fiber_linearity_check(w, samples, scalars, kN);
  if (r.checks < 100) return {false, "only " + std::to_string(r.checks) + " checks"};
  if (!r.passed()) return {false, std::to_string(r.failures) + " of " + std::to_string(r.checks) + " fibre checks failed"};
  return {true, ""};
}

Outcome property_suites(Sampler& s) {
  std::vector<std::pair<std::string, std::function<Outcome(Sampler&)>>> suites{
      {"hasse-product", hasse_product}, {"leibniz", leibniz},       {"jet-functoriality", functoriality},
      {"log-derivative", log_homomorphism}, {"group-closure", g_closure}, {"fiber-linearity", fiber_linearity}};
  std::string names;
  for (const auto& [name, run] : suites) {
    Outcome o = run(s);
    if (!o.passed) return {false, name + ": " + o.detail};
    names += (names.empty() ? "" : ", ") + name;
  }
  return {true, names + " green"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  Sampler s(options.seed);
  struct Item {
    std::string name;
    double limit;
    std::function<Outcome()> run;
  };
  std::vector<Item> items{
      {"tangent-system", 1, tangent_system},
      {"restriction-display", 1, restriction_display},
      {"kernel-identity", 1, kernel_identity},
      {"group-image-witnesses", 2, group_witnesses},
      {"dimension-law", 10, [&] { return dimension_law(s); }},
      {"tensor-horizontals", 20, [&] { return tensor_horizontals(s); }},
      {"product-decomposition", 30, product_decomposition},
      {"constants-jets", 1, constants_jets},
      {"tangent-jet-cross-check", 10, [&] { return corpus_cross_check(options.corpus); }},
      {"degree-step", 5, [&] { return degree_step(s); }},
      {"series-oracles", 1, series_oracles},
      {"property-suites", 60, [&] { return property_suites(s); }},
  };
  std::vector<CriterionResult> out;
  int id = 0;
  for (const auto& item : items) {
    CriterionResult r;
    r.id = ++id;
    r.name = item.name;
    r.limit_seconds = item.limit;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = item.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = o.passed && r.seconds <= r.limit_seconds;
    r.detail = o.passed && !r.passed ? "over time limit" : o.detail;
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << r.seconds << "s / "
     << r.limit_seconds << "s)";
  if (!r.detail.empty()) os << ": " << r.detail;
  return os.str();
}

}  // namespace djets
