#pragma once

#include <optional>

#include "djets/scalar.hpp"

namespace djets {

/// y with y(0) = 1 and y' = c*y, to order N: coefficients c^k / k!.
TSeries exp_series(const Rational& c, int order);

/// Fundamental matrix of v' = A v: Phi(0) = I and Phi' = A*Phi to order
/// N-1, via Phi_{k+1} = (sum_{i<=k} A_i Phi_{k-i}) / (k+1). Entries of A
/// must be known to at least order N-1. The result has precision N.
Matrix<TSeries> fundamental_matrix(const Matrix<TSeries>& a, int order);

struct HorizontalTest {
  bool horizontal = false;
  /// Constant coordinates Phi^{-1} v, set when horizontal.
  std::optional<Vector<Rational>> constants;
};

/// Whether v' = A v to the guaranteed precision of v; if so, also the
/// constant coordinates of v in the fundamental solution basis.
HorizontalTest horizontal_test(const Vector<TSeries>& v, const Matrix<TSeries>& a);

}  // namespace djets
