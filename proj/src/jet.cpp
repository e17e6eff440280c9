#include "djets/jet.hpp"

namespace djets {

std::vector<Exponent> exponents_of_degree(std::size_t n, unsigned degree) {
  std::vector<Exponent> out;
  if (n == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent e(n, 0);
  // Enumerate in decreasing lexicographic order.
  auto rec = [&](auto&& self, std::size_t j, unsigned left) -> void {
    if (j + 1 == n) {
      e[j] = left;
      out.push_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[j] = k;
      self(self, j + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

JetIndexSet::JetIndexSet(std::size_t n, unsigned m) : n_(n), m_(m) {
  for (unsigned d = 1; d <= m; ++d)
    for (auto& e : exponents_of_degree(n, d)) {
      position_.emplace(e, indices_.size());
      indices_.push_back(std::move(e));
    }
}

std::ptrdiff_t JetIndexSet::find(const Exponent& alpha) const {
  auto it = position_.find(alpha);
  return it == position_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::vector<Exponent> JetIndexSet::with_zero() const {
  std::vector<Exponent> out;
  out.reserve(indices_.size() + 1);
  out.emplace_back(n_, 0);
  out.insert(out.end(), indices_.begin(), indices_.end());
  return out;
}

}  // namespace djets
