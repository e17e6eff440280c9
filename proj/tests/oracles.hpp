// Independent reference computations used by the tests. Nothing here calls
// the engine's linear algebra or series code.
#pragma once

#include <gmpxx.h>

#include <vector>

#include "djets/mpoly.hpp"
#include "djets/tseries.hpp"

namespace oracle {

using Table = std::vector<std::vector<mpq_class>>;

// Rank by plain fraction Gaussian elimination with any nonzero pivot.
inline int rank(Table m) {
  int r = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (int i = r + 1; i < rows; ++i) {
      mpq_class f = m[i][c] / m[r][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline mpq_class q(const djets::Rational& r) { return mpq_class(r.to_string()); }

// Repeated formal partial derivatives divided by alpha!.
inline djets::RPoly divided_derivative(djets::RPoly p, const djets::Exponent& alpha) {
  djets::Rational fact(1);
  for (std::size_t j = 0; j < alpha.size(); ++j)
    for (unsigned k = 1; k <= alpha[j]; ++k) {
      p = p.partial(j);
      fact *= djets::Rational(static_cast<int>(k));
    }
  return p * (djets::Rational(1) / fact);
}

// Coefficients c_0..c_n of exp(ct) by c_{k+1} = c * c_k / (k+1).
inline std::vector<djets::Rational> exp_coefficients(const djets::Rational& c, int n) {
  std::vector<djets::Rational> out{djets::Rational(1)};
  for (int k = 0; k < n; ++k) out.push_back(out.back() * c / djets::Rational(k + 1));
  return out;
}

inline bool coefficients_are(const djets::TSeries& s, const std::vector<djets::Rational>& c) {
  for (std::size_t k = 0; k < c.size(); ++k)
    if (s[k] != c[k]) return false;
  return true;
}

}  // namespace oracle
