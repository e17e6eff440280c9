#pragma once

#include <vector>

#include "djets/dvariety.hpp"
#include "djets/scalar.hpp"

namespace djets {

/// A finite-dimensional module over the series field in a fixed basis; the
/// module derivation sends coordinates c to c' + A c.
struct DeltaModule {
  Matrix<TSeries> a;

  DeltaModule() = default;
  explicit DeltaModule(Matrix<TSeries> m);

  Index dim() const { return a.rows(); }
  Vector<TSeries> apply(const Vector<TSeries>& c) const { return derive(c) + a * c; }
};

/// The dual module: (Dv)(mu) = v(mu)' - v(d mu) gives matrix -A^T.
DeltaModule dual(const DeltaModule& m);

/// d(a (x) b) = d_M a (x) b + a (x) d_N b on the lexicographic product basis
/// (index i * dim N + k): matrix A_M (x) I + I (x) A_N.
DeltaModule tensor(const DeltaModule& m, const DeltaModule& n);

template <class S>
Matrix<S> kronecker(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = b * a(i, j);
  return out;
}

template <class S>
Vector<S> kronecker(const Vector<S>& a, const Vector<S>& b) {
  Vector<S> out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = b * a(i);
  return out;
}

/// C-basis of { c : c' + A c = 0 }: the columns of the fundamental matrix
/// of -A. Always dim M vectors.
std::vector<Vector<TSeries>> horizontal_sections(const DeltaModule& m, int order);

bool is_horizontal(const DeltaModule& m, const Vector<TSeries>& c);

/// phi(v, w)(a (x) b) = v(a) w(b), i.e. the coordinate tensor v (x) w, for
/// v horizontal in dual(M) and w horizontal in dual(N).
struct Pairing {
  Vector<TSeries> value;
  /// Whether value is horizontal in dual(M (x) N).
  bool horizontal = false;
};

Pairing pairing_phi(const DeltaModule& m, const DeltaModule& n, const Vector<TSeries>& v,
                    const Vector<TSeries>& w);

/// Both sides of M^D (x)_C N^D  ~  (M (x)_K N)^D, where X^D is the space of
/// horizontal elements of the dual of X.
struct TensorHorizontalReport {
  Index dim_m = 0, dim_n = 0;
  std::size_t left_dim = 0;   // phi images of pairs of horizontal bases
  std::size_t right_dim = 0;  // horizontal basis of dual(M (x) N)
  bool all_phi_horizontal = false;
  bool left_in_right = false;
  bool right_in_left = false;
  Rational residual;  // largest change-of-basis residual coefficient

  bool passed() const {
    return left_dim == right_dim && left_dim == static_cast<std::size_t>(dim_m * dim_n) &&
           all_phi_horizontal && left_in_right && right_in_left && residual.is_zero();
  }
};

TensorHorizontalReport verify_tensor_horizontals(const DeltaModule& m, const DeltaModule& n, int order);

/// Coefficients of a horizontal product jet against bases W, W' of the
/// factor jet spaces:
///   v = c1 (1(x)1) + sum c_w (w(x)1) + sum c_w' (1(x)w') + sum c_ww' (w(x)w').
struct ProductDecomposition {
  TSeries c1;
  std::vector<TSeries> c_w;
  std::vector<TSeries> c_w2;
  /// Row-major over (w, w').
  std::vector<TSeries> c_ww;
  bool all_constant = false;
  Rational residual;
};

/// Solves the coefficient system on the full tensor index set
/// (Lambda1 + {0}) x (Lambda2 + {0}), with v extended by zero off the
/// product Lambda. Throws DecompositionFailure if the system is
/// inconsistent or any coefficient is not constant.
ProductDecomposition product_jet_decompose(const Vector<TSeries>& v, std::size_t n1, std::size_t n2,
                                           unsigned m, const std::vector<Vector<TSeries>>& w1,
                                           const std::vector<Vector<TSeries>>& w2);

/// Runs product_jet_decompose for every horizontal basis jet of X1 x X2 at
/// (a1, a2) against the horizontal bases of the factors.
struct ProductReport {
  std::size_t dim_product = 0, dim_1 = 0, dim_2 = 0;
  std::vector<ProductDecomposition> decompositions;
};

ProductReport verify_product(const DVariety& x1, const SharpPoint& a1, const DVariety& x2,
                             const SharpPoint& a2, unsigned m);

}  // namespace djets
