#include "djets/delta_module.hpp"

#include "djets/error.hpp"
#include "djets/linalg.hpp"
#include "djets/series_ode.hpp"

namespace djets {

DeltaModule::DeltaModule(Matrix<TSeries> m) : a(std::move(m)) {
  if (a.rows() != a.cols()) throw DimensionError("derivation matrix must be square");
}

DeltaModule dual(const DeltaModule& m) { return DeltaModule(-m.a.transpose()); }

DeltaModule tensor(const DeltaModule& m, const DeltaModule& n) {
  Matrix<TSeries> im = Matrix<TSeries>::Identity(m.dim(), m.dim());
  Matrix<TSeries> in = Matrix<TSeries>::Identity(n.dim(), n.dim());
  return DeltaModule(Matrix<TSeries>(kronecker(m.a, in) + kronecker(im, n.a)));
}

std::vector<Vector<TSeries>> horizontal_sections(const DeltaModule& m, int order) {
  Matrix<TSeries> phi = fundamental_matrix(Matrix<TSeries>(-m.a), order);
  std::vector<Vector<TSeries>> out;
  for (Index j = 0; j < phi.cols(); ++j) out.emplace_back(phi.col(j));
  return out;
}

bool is_horizontal(const DeltaModule& m, const Vector<TSeries>& c) { return is_zero(m.apply(c)); }

Pairing pairing_phi(const DeltaModule& m, const DeltaModule& n, const Vector<TSeries>& v,
                    const Vector<TSeries>& w) {
  if (v.size() != m.dim() || w.size() != n.dim()) throw DimensionError("pairing: size mismatch");
  Pairing out;
  out.value = kronecker(v, w);
  out.horizontal = is_horizontal(dual(tensor(m, n)), out.value);
  return out;
}

TensorHorizontalReport verify_tensor_horizontals(const DeltaModule& m, const DeltaModule& n, int order) {
  TensorHorizontalReport r;
  r.dim_m = m.dim();
  r.dim_n = n.dim();
  auto hm = horizontal_sections(dual(m), order);
  auto hn = horizontal_sections(dual(n), order);
  std::vector<Vector<TSeries>> left;
  r.all_phi_horizontal = true;
  for (const auto& v : hm)
    for (const auto& w : hn) {
      Pairing p = pairing_phi(m, n, v, w);
      r.all_phi_horizontal = r.all_phi_horizontal && p.horizontal;
      left.push_back(std::move(p.value));
    }
  auto right = horizontal_sections(dual(tensor(m, n)), order);
  r.left_dim = left.size();
  r.right_dim = right.size();
  // Independence of the phi images: the C-span is all of the right side
  // exactly when both containments hold and the counts match.
  SpanCheck lr = constant_span_contains(right, left);
  SpanCheck rl = constant_span_contains(left, right);
  r.left_in_right = lr.consistent && lr.constant;
  r.right_in_left = rl.consistent && rl.constant;
  r.residual = std::max(lr.residual, rl.residual);
  if (!left.empty() && rank(columns(left, left.front().size())) != static_cast<Index>(left.size()))
    r.left_in_right = false;
  return r;
}

ProductDecomposition product_jet_decompose(const Vector<TSeries>& v, std::size_t n1, std::size_t n2,
                                           unsigned m, const std::vector<Vector<TSeries>>& w1,
                                           const std::vector<Vector<TSeries>>& w2) {
  JetIndexSet l1(n1, m), l2(n2, m), lp(n1 + n2, m);
  if (v.size() != static_cast<Index>(lp.size())) throw DimensionError("product jet has wrong length");
  for (const auto& w : w1)
    if (w.size() != static_cast<Index>(l1.size())) throw DimensionError("W vector has wrong length");
  for (const auto& w : w2)
    if (w.size() != static_cast<Index>(l2.size())) throw DimensionError("W' vector has wrong length");

  // Coordinates of the factor functionals extended by the unit: entry 0 is
  // the value at 1 (alpha_i = 0), then Lambda_i.
  auto extend = [](const Vector<TSeries>& w) {
    Vector<TSeries> e(w.size() + 1);
    e(0) = TSeries(0);
    e.tail(w.size()) = w;
    return e;
  };
  Vector<TSeries> one1 = Vector<TSeries>::Constant(static_cast<Index>(l1.size()) + 1, TSeries(0));
  Vector<TSeries> one2 = Vector<TSeries>::Constant(static_cast<Index>(l2.size()) + 1, TSeries(0));
  one1(0) = TSeries(1);
  one2(0) = TSeries(1);

  std::vector<Vector<TSeries>> cols;
  cols.push_back(kronecker(one1, one2));
  for (const auto& w : w1) cols.push_back(kronecker(extend(w), one2));
  for (const auto& w : w2) cols.push_back(kronecker(one1, extend(w)));
  for (const auto& w : w1)
    for (const auto& w2v : w2) cols.push_back(kronecker(extend(w), extend(w2v)));

  // v on the full index set: (alpha1, alpha2) -> v_alpha when in Lambda.
  auto idx1 = l1.with_zero(), idx2 = l2.with_zero();
  Vector<TSeries> target(static_cast<Index>(idx1.size() * idx2.size()));
  for (std::size_t i = 0; i < idx1.size(); ++i) {
    for (std::size_t k = 0; k < idx2.size(); ++k) {
      Exponent alpha = idx1[i];
      alpha.insert(alpha.end(), idx2[k].begin(), idx2[k].end());
      auto pos = lp.find(alpha);
      target(static_cast<Index>(i * idx2.size() + k)) = pos >= 0 ? v(pos) : TSeries(0);
    }
  }

  Matrix<TSeries> system = columns(cols, target.size());
  auto c = solve(system, target);
  if (!c) throw DecompositionFailure("product jet is not in the span of the factor jets");

  ProductDecomposition out;
  out.residual = max_abs_coefficient(Vector<TSeries>(system * *c - target));
  out.all_constant = is_constant(*c);
  Index at = 0;
  out.c1 = (*c)(at++);
  for (std::size_t i = 0; i < w1.size(); ++i) out.c_w.push_back((*c)(at++));
  for (std::size_t i = 0; i < w2.size(); ++i) out.c_w2.push_back((*c)(at++));
  for (std::size_t i = 0; i < w1.size() * w2.size(); ++i) out.c_ww.push_back((*c)(at++));
  if (!out.all_constant) throw DecompositionFailure("a product jet coefficient is not constant");
  if (!out.residual.is_zero()) throw DecompositionFailure("nonzero decomposition residual");
  return out;
}

ProductReport verify_product(const DVariety& x1, const SharpPoint& a1, const DVariety& x2,
                             const SharpPoint& a2, unsigned m) {
  DVariety x = product(x1, x2);
  SharpPoint a = product_point(a1, a2);
  DeltaJetSpace j1 = delta_jet_space(x1, a1, m);
  DeltaJetSpace j2 = delta_jet_space(x2, a2, m);
  DeltaJetSpace jp = delta_jet_space(x, a, m);
  ProductReport r;
  r.dim_1 = j1.dim_C();
  r.dim_2 = j2.dim_C();
  r.dim_product = jp.dim_C();
  for (const auto& v : jp.horizontal)
    r.decompositions.push_back(
        product_jet_decompose(v, x1.dimension(), x2.dimension(), m, j1.horizontal, j2.horizontal));
  return r;
}

}  // namespace djets
