#pragma once

#include <optional>
#include <vector>

#include "djets/error.hpp"
#include "djets/scalar.hpp"

namespace djets {

/// Reduced row echelon form together with its pivot columns.
template <class S>
struct Rref {
  Matrix<S> reduced;
  std::vector<Index> pivots;
};

/// Gauss-Jordan elimination with unit pivots. Over Q every nonzero entry is
/// a unit; over the series field a column whose remaining entries are not
/// all zero but contain no unit (nonzero constant term) raises
/// SingularPivot: the base point is not generic enough.
template <class S>
Rref<S> rref(Matrix<S> m) {
  Rref<S> out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = -1;
    bool nonzero = false;
    for (Index r = row; r < m.rows(); ++r) {
      if (is_unit(m(r, col))) {
        pivot = r;
        break;
      }
      if (!is_zero(m(r, col))) nonzero = true;
    }
    if (pivot < 0) {
      if (nonzero) throw SingularPivot("no unit pivot in column " + std::to_string(col));
      continue;
    }
    m.row(pivot).swap(m.row(row));
    S inv = S(1) / m(row, col);
    for (Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      S f = m(r, col);
      for (Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class S>
Index rank(const Matrix<S>& m) {
  return static_cast<Index>(rref(m).pivots.size());
}

namespace detail {

inline void normalize_kernel_vector(Vector<Rational>& v) {
  // Scale to a primitive integer vector; the free coordinate stays positive.
  mpz_class l = 1, g = 0;
  for (Index i = 0; i < v.size(); ++i) {
    mpz_class d = v(i).denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  for (Index i = 0; i < v.size(); ++i) {
    mpz_class n = (v(i) * Rational(l, 1)).numerator();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return;
  Rational scale(l, g);
  for (Index i = 0; i < v.size(); ++i) v(i) *= scale;
}

inline void normalize_kernel_vector(Vector<TSeries>&) {}

}  // namespace detail

/// Basis of the right kernel, one vector per free column (cols - rank of
/// them). Rational vectors are scaled to primitive integer vectors.
template <class S>
std::vector<Vector<S>> nullspace(const Matrix<S>& m) {
  const Index cols = m.cols();
  Rref<S> r = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vector<S>> basis;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vector<S> v = Vector<S>::Constant(cols, S(0));
    v(f) = S(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      v(r.pivots[i]) = -r.reduced(static_cast<Index>(i), f);
    detail::normalize_kernel_vector(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution x of a*x = b (free unknowns set to zero), or nullopt when
/// the system is inconsistent.
template <class S>
std::optional<Vector<S>> solve(const Matrix<S>& a, const Vector<S>& b) {
  if (a.rows() != b.size()) throw DimensionError("solve: right-hand side length mismatch");
  Matrix<S> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  Rref<S> r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  for (Index i = static_cast<Index>(r.pivots.size()); i < aug.rows(); ++i)
    if (!is_zero(r.reduced(i, a.cols()))) return std::nullopt;
  Vector<S> x = Vector<S>::Constant(a.cols(), S(0));
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    x(r.pivots[i]) = r.reduced(static_cast<Index>(i), a.cols());
  return x;
}

/// Stacks vectors as the columns of a matrix with `rows` rows.
template <class S>
Matrix<S> columns(const std::vector<Vector<S>>& vs, Index rows) {
  Matrix<S> m(rows, static_cast<Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (vs[j].size() != rows) throw DimensionError("column length mismatch");
    m.col(static_cast<Index>(j)) = vs[j];
  }
  return m;
}

/// Result of expressing vectors over the series field as combinations of a
/// spanning family: the coefficients found, whether all are constants, and
/// the largest residual coefficient (exactly zero on success).
struct SpanCheck {
  bool consistent = true;
  bool constant = true;
  Rational residual;
  std::vector<Vector<TSeries>> coefficients;

  bool ok() const { return consistent && constant && residual.is_zero(); }
};

/// Checks that every vector in `targets` lies in the constant (Q-) span of
/// `family`, by solving over the series field and testing the coefficients
/// for constancy.
SpanCheck constant_span_contains(const std::vector<Vector<TSeries>>& family,
                                 const std::vector<Vector<TSeries>>& targets);

}  // namespace djets
