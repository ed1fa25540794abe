#include "curvetop/lattice.hpp"

#include <algorithm>

namespace curvetop {

IntersectionMatrix intersection_matrix(const DualGraph& g) {
  ValidationReport report = validate(g);
  if (!report.ok())
    throw std::invalid_argument("invalid dual graph: " + report.violations.front());
  IntersectionMatrix m;
  m.exceptional = g.exceptional_ids();
  m.stricts = g.strict_ids();
  const Eigen::Index ne = static_cast<Eigen::Index>(m.exceptional.size());
  const Eigen::Index ns = static_cast<Eigen::Index>(m.stricts.size());
  m.ee = IMat::Zero(ne, ne);
  m.es = IMat::Zero(ne, ns);
  for (Eigen::Index i = 0; i < ne; ++i)
    m.ee(i, i) = *g.vertex(m.exceptional[i]).self_intersection;
  auto index_of = [](const std::vector<std::string>& v, const std::string& id) {
    return static_cast<Eigen::Index>(std::lower_bound(v.begin(), v.end(), id) - v.begin());
  };
  for (const auto& [a, b] : g.edges) {
    bool a_exc = g.vertex(a).kind == VertexKind::exceptional;
    bool b_exc = g.vertex(b).kind == VertexKind::exceptional;
    if (a_exc && b_exc) {
      Eigen::Index i = index_of(m.exceptional, a);
      Eigen::Index j = index_of(m.exceptional, b);
      m.ee(i, j) = 1;
      m.ee(j, i) = 1;
    } else {
      const std::string& e = a_exc ? a : b;
      const std::string& s = a_exc ? b : a;
      m.es(index_of(m.exceptional, e), index_of(m.stricts, s)) = 1;
    }
  }
  return m;
}

IVec MultiplicityVector::total() const {
  IVec t = IVec::Zero(nu.rows());
  for (Eigen::Index i = 0; i < nu.rows(); ++i)
    for (Eigen::Index k = 0; k < nu.cols(); ++k) t(i) += nu(i, k);
  return t;
}

MultiplicityVector multiplicity_vector(const DualGraph& g) {
  IntersectionMatrix m = intersection_matrix(g);
  Int det = determinant(m.ee);
  if (det != 1 && det != -1)
    throw std::invalid_argument("intersection matrix is not unimodular (determinant " +
                                to_string(det) + ")");
  MultiplicityVector mv;
  mv.exceptional = m.exceptional;
  mv.stricts = m.stricts;
  mv.nu = IMat(m.ee.rows(), m.es.cols());
  for (Eigen::Index k = 0; k < m.es.cols(); ++k) {
    IVec rhs = -m.es.col(k);
    IVec col = solve_unimodular<Int>(m.ee, rhs);
    for (Eigen::Index i = 0; i < col.rows(); ++i) {
      if (col(i) < 1)
        throw std::invalid_argument("multiplicity of '" + mv.exceptional[i] +
                                    "' over branch '" + mv.stricts[k] + "' is " +
                                    to_string(col(i)) + " (must be >= 1)");
      mv.nu(i, k) = col(i);
    }
  }
  return mv;
}

namespace {

// Finds the entry of smallest nonzero absolute value in the block of m with
// rows, cols >= t; ties go to the first in row-major order.
bool find_pivot(const IMat& m, Eigen::Index t, Eigen::Index& pi, Eigen::Index& pj) {
  bool found = false;
  Int best = 0;
  for (Eigen::Index i = t; i < m.rows(); ++i)
    for (Eigen::Index j = t; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      Int a = abs(m(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SmithNormalForm smith_normal_form(const IMat& input) {
  SmithNormalForm s;
  const Eigen::Index rows = input.rows(), cols = input.cols();
  s.d = input;
  s.u = IMat::Identity(rows, rows);
  s.v = IMat::Identity(cols, cols);
  IMat& d = s.d;

  for (Eigen::Index t = 0; t < std::min(rows, cols); ++t) {
    Eigen::Index pi, pj;
    if (!find_pivot(d, t, pi, pj)) break;  // remaining block is zero
    for (;;) {
      // Move the current smallest entry to (t, t).
      if (pi != t) { d.row(t).swap(d.row(pi)); s.u.row(t).swap(s.u.row(pi)); }
      if (pj != t) { d.col(t).swap(d.col(pj)); s.v.col(t).swap(s.v.col(pj)); }
      // Reduce column and row by the pivot.
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        if (q != 0) { d.row(i) -= q * d.row(t); s.u.row(i) -= q * s.u.row(t); }
        if (d(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        if (q != 0) { d.col(j) -= q * d.col(t); s.v.col(j) -= q * s.v.col(t); }
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {  // a smaller remainder appeared somewhere
        find_pivot(d, t, pi, pj);
        continue;
      }
      // Enforce divisibility of the rest of the block by the pivot.
      bool divisible = true;
      for (Eigen::Index i = t + 1; i < rows && divisible; ++i)
        for (Eigen::Index j = t + 1; j < cols && divisible; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.row(t) += d.row(i);
            s.u.row(t) += s.u.row(i);
            divisible = false;
          }
      if (divisible) break;
      find_pivot(d, t, pi, pj);
    }
    if (d(t, t) < 0) { d.row(t) = -d.row(t); s.u.row(t) = -s.u.row(t); }
  }
  for (Eigen::Index t = 0; t < std::min(rows, cols); ++t)
    if (d(t, t) != 0) s.invariant_factors.push_back(d(t, t));
  return s;
}

AbelianQuotient row_cokernel(const IMat& m) {
  SmithNormalForm s = smith_normal_form(m);
  AbelianQuotient q;
  q.free_rank = Int(m.cols()) - Int(s.invariant_factors.size());
  for (const Int& f : s.invariant_factors)
    if (f > 1) q.torsion.push_back(f);
  return q;
}

}  // namespace curvetop
