#pragma once

// Exact linear algebra over the intersection lattice of a resolution
// divisor: fraction-free (Bareiss) determinants and solves, Sylvester-style
// negative-definiteness, multiplicity vectors, and Smith normal form.
// Everything is integer arithmetic; nothing here touches floating point.

#include "curvetop/exact.hpp"
#include "curvetop/graph.hpp"

#include <string>
#include <vector>

namespace curvetop {

// Fraction-free determinant with row pivoting.  The Bareiss recurrence keeps
// every intermediate entry an exact integer (each division is exact).
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  DenseMatrix<Scalar> m = input;
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix must be square");
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  Scalar prev(1);
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) { swap_row = i; break; }
      if (swap_row < 0) return Scalar(0);
      m.row(k).swap(m.row(swap_row));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Scalar num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = num / prev;  // exact by the Bareiss identity
      }
    prev = m(k, k);
  }
  Scalar det = m(n - 1, n - 1);
  return sign < 0 ? Scalar(-det) : det;
}

// Sylvester test in exact arithmetic: symmetric M is negative definite iff
// its leading principal minors alternate in sign starting negative.  The
// Bareiss pivots are exactly those minors.  Throws on non-symmetric input.
template <typename Derived>
bool is_negative_definite(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  DenseMatrix<Scalar> m = input;
  if (m.rows() != m.cols()) throw std::invalid_argument("is_negative_definite: matrix must be square");
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (m(i, j) != m(j, i)) throw std::invalid_argument("is_negative_definite: matrix must be symmetric");
  Scalar prev(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar& minor_k = m(k, k);  // leading principal minor of size k+1
    const bool want_negative = (k % 2 == 0);
    if (minor_k == 0) return false;
    if ((minor_k < 0) != want_negative) return false;
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * minor_k - m(i, k) * m(k, j)) / prev;
    prev = minor_k;
  }
  return true;
}

// Solves M x = b for unimodular M.  Fraction-free forward elimination, then
// integer back-substitution (exact because |det M| = 1 forces an integral
// solution).  Throws std::invalid_argument when |det M| != 1, reporting the
// determinant.
template <typename Scalar>
DenseVector<Scalar> solve_unimodular(DenseMatrix<Scalar> m, DenseVector<Scalar> b) {
  if (m.rows() != m.cols() || m.rows() != b.rows())
    throw std::invalid_argument("solve_unimodular: dimension mismatch");
  const Eigen::Index n = m.rows();
  if (n == 0) return DenseVector<Scalar>(0);
  Scalar prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) { swap_row = i; break; }
      if (swap_row < 0) throw std::invalid_argument("solve_unimodular: matrix is singular (determinant 0)");
      m.row(k).swap(m.row(swap_row));
      std::swap(b(k), b(swap_row));
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      b(i) = (b(i) * m(k, k) - m(i, k) * b(k)) / prev;
      m(i, k) = Scalar(0);
    }
    prev = m(k, k);
  }
  Scalar det = m(n - 1, n - 1);  // up to sign from row swaps, irrelevant here
  if (det != 1 && det != -1)
    throw std::invalid_argument("solve_unimodular: matrix is not unimodular (determinant " +
                                to_string(det) + " up to sign)");
  DenseVector<Scalar> x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Scalar acc = b(i);
    for (Eigen::Index j = i + 1; j < n; ++j) acc -= m(i, j) * x(j);
    x(i) = divide_exact(acc, m(i, i));
  }
  return x;
}

// Intersection data of a dual tree: ee is the symmetric matrix of the
// exceptional components (self-intersections on the diagonal, adjacency off
// it), es the incidence of exceptional components with strict transforms.
// Rows/columns are ordered lexicographically by vertex id.
struct IntersectionMatrix {
  std::vector<std::string> exceptional;
  std::vector<std::string> stricts;
  IMat ee;
  IMat es;
};

IntersectionMatrix intersection_matrix(const DualGraph& g);

// Multiplicities of the exceptional components: the unique solution of
// ee . nu + es = 0, one column per strict transform, all entries >= 1.
struct MultiplicityVector {
  std::vector<std::string> exceptional;
  std::vector<std::string> stricts;
  IMat nu;           // |exceptional| x |stricts|
  IVec total() const;  // row sums: multiplicities of the full curve
};

MultiplicityVector multiplicity_vector(const DualGraph& g);

// Smith normal form with deterministic pivoting (smallest nonzero absolute
// value, ties in row-major order): u * m * v = d with u, v unimodular and d
// diagonal with non-negative entries in a divisibility chain.
struct SmithNormalForm {
  IMat u, d, v;
  std::vector<Int> invariant_factors;  // the nonzero diagonal entries
};

SmithNormalForm smith_normal_form(const IMat& m);

// The quotient of ZZ^cols by the row space of m, read off the Smith form.
struct AbelianQuotient {
  Int free_rank;
  std::vector<Int> torsion;  // invariant factors > 1
};

AbelianQuotient row_cokernel(const IMat& m);

}  // namespace curvetop
