#include "djets/linalg.hpp"

namespace djets {

SpanCheck constant_span_contains(const std::vector<Vector<TSeries>>& family,
                                 const std::vector<Vector<TSeries>>& targets) {
  SpanCheck out;
  if (targets.empty()) return out;
  const Index rows = targets.front().size();
  Matrix<TSeries> basis = columns(family, rows);
  for (const auto& v : targets) {
    auto c = solve(basis, v);
    if (!c) {
      out.consistent = false;
      out.coefficients.emplace_back();
      continue;
    }
    if (!is_constant(*c)) out.constant = false;
    Vector<TSeries> residual = basis * *c - v;
    out.residual = std::max(out.residual, max_abs_coefficient(residual));
    out.coefficients.push_back(std::move(*c));
  }
  return out;
}

}  // namespace djets
