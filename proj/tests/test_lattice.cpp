#include <doctest.h>

#include "curvetop/fixtures.hpp"
#include "curvetop/graph.hpp"
#include "curvetop/lattice.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

using namespace curvetop;

namespace {

DualGraph cusp_graph() {
  DualGraph g;
  g.add_exceptional("E1", Int(-3));
  g.add_exceptional("E2", Int(-2));
  g.add_exceptional("E3", Int(-1));
  g.add_strict("S");
  g.add_edge("E1", "E3");
  g.add_edge("E2", "E3");
  g.add_edge("E3", "S");
  return g;
}

DualGraph tacnode_graph() {
  DualGraph g;
  g.add_exceptional("E1", Int(-2));
  g.add_exceptional("E2", Int(-1));
  g.add_strict("A");
  g.add_strict("B");
  g.add_edge("E1", "E2");
  g.add_edge("A", "E2");
  g.add_edge("B", "E2");
  return g;
}

// Independent determinant oracle: cofactor expansion along the first row.
Int cofactor_det(const IMat& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return Int(1);
  if (n == 1) return m(0, 0);
  Int acc(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IMat sub(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        sub(r - 1, cc++) = m(r, c);
      }
    }
    Int term = m(0, j) * cofactor_det(sub);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

// Independent Smith-form oracle: the k-th determinantal divisor is the gcd
// of all k x k minors; invariant factors are their successive quotients.
std::vector<Int> minor_gcd_factors(const IMat& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Int> divisors;  // divisors[k-1] = gcd of k x k minors
  for (Eigen::Index k = 1; k <= std::min(rows, cols); ++k) {
    Int g(0);
    std::vector<Eigen::Index> ri(k), ci(k);
    // Enumerate k-subsets of rows and columns.
    std::function<void(Eigen::Index, Eigen::Index)> pick_cols = [&](Eigen::Index from,
                                                                    Eigen::Index depth) {
      if (depth == k) {
        IMat sub(k, k);
        for (Eigen::Index a = 0; a < k; ++a)
          for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = m(ri[a], ci[b]);
        g = boost::multiprecision::gcd(g, cofactor_det(sub));
        return;
      }
      for (Eigen::Index c = from; c < cols; ++c) {
        ci[depth] = c;
        pick_cols(c + 1, depth + 1);
      }
    };
    std::function<void(Eigen::Index, Eigen::Index)> pick_rows = [&](Eigen::Index from,
                                                                    Eigen::Index depth) {
      if (depth == k) {
        pick_cols(0, 0);
        return;
      }
      for (Eigen::Index r = from; r < rows; ++r) {
        ri[depth] = r;
        pick_rows(r + 1, depth + 1);
      }
    };
    pick_rows(0, 0);
    if (g == 0) break;  // all larger minors vanish too
    divisors.push_back(boost::multiprecision::abs(g));
  }
  std::vector<Int> factors;
  Int prev(1);
  for (const Int& d : divisors) {
    factors.push_back(d / prev);
    prev = d;
  }
  return factors;
}

IMat random_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Int(dist(rng));
  return m;
}

// Random unimodular matrix: integer row operations applied to the identity.
IMat random_unimodular(std::mt19937& rng, Eigen::Index n) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  IMat m = IMat::Identity(n, n);
  for (int step = 0; step < 12; ++step) {
    Eigen::Index i = pick(rng), j = pick(rng);
    if (i == j) {
      m.row(i) = -m.row(i);
      continue;
    }
    Int c = Int(coeff(rng));
    m.row(i) += c * m.row(j);
  }
  return m;
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("Bareiss determinant agrees with cofactor expansion") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Index n = 1 + static_cast<Eigen::Index>(trial % 5);
    IMat m = random_matrix(rng, n, n, -6, 6);
    CHECK(determinant(m) == cofactor_det(m));
  }
}

TEST_CASE("determinant handles zero pivots and singular input") {
  IMat m(2, 2);
  m << Int(0), Int(1), Int(1), Int(0);
  CHECK(determinant(m) == Int(-1));
  IMat z = IMat::Zero(3, 3);
  CHECK(determinant(z) == Int(0));
  IMat empty(0, 0);
  CHECK(determinant(empty) == Int(1));
  IMat rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(determinant(rect), std::invalid_argument);
}

TEST_CASE("negative definiteness on known forms") {
  IMat a(1, 1);
  a << Int(-1);
  CHECK(is_negative_definite(a));
  a << Int(0);
  CHECK(!is_negative_definite(a));
  a << Int(1);
  CHECK(!is_negative_definite(a));

  IMat b(2, 2);
  b << Int(-2), Int(1), Int(1), Int(-2);
  CHECK(is_negative_definite(b));
  b << Int(-1), Int(2), Int(2), Int(-1);  // determinant -3: indefinite
  CHECK(!is_negative_definite(b));
  b << Int(-1), Int(1), Int(1), Int(-1);  // determinant 0: semidefinite
  CHECK(!is_negative_definite(b));

  IMat ns(2, 2);
  ns << Int(-1), Int(1), Int(0), Int(-1);
  CHECK_THROWS_AS(is_negative_definite(ns), std::invalid_argument);
}

TEST_CASE("intersection matrices of resolution trees are negative definite") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> xv(-5, 5);
  for (const DualGraph& g : {cusp_graph(), tacnode_graph(), example_curve_graph()}) {
    IntersectionMatrix im = intersection_matrix(g);
    REQUIRE(is_negative_definite(im.ee));
    // Refutation probe: every nonzero integer vector must have negative
    // quadratic value.
    for (int trial = 0; trial < 50; ++trial) {
      IVec x(im.ee.rows());
      bool nonzero = false;
      for (Eigen::Index i = 0; i < x.rows(); ++i) {
        x(i) = Int(xv(rng));
        if (x(i) != 0) nonzero = true;
      }
      if (!nonzero) continue;
      Int q = (x.transpose() * im.ee * x)(0, 0);
      CHECK(q < 0);
    }
  }
}

TEST_CASE("intersection matrix of the reference curve") {
  IntersectionMatrix im = intersection_matrix(example_curve_graph());
  CHECK(im.exceptional == std::vector<std::string>{"E1", "E2", "E3", "E4", "E5"});
  CHECK(im.stricts == std::vector<std::string>{"S"});
  IMat ee(5, 5);
  ee << Int(-3), Int(0), Int(1), Int(0), Int(0),  //
      Int(0), Int(-2), Int(1), Int(0), Int(0),    //
      Int(1), Int(1), Int(-3), Int(0), Int(1),    //
      Int(0), Int(0), Int(0), Int(-2), Int(1),    //
      Int(0), Int(0), Int(1), Int(1), Int(-1);
  CHECK(im.ee == ee);
  IMat es(5, 1);
  es << Int(0), Int(0), Int(0), Int(0), Int(1);
  CHECK(im.es == es);
  CHECK(determinant(im.ee) == Int(-1));
}

TEST_CASE("unimodular solve recovers exact solutions") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> xv(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Index n = 1 + static_cast<Eigen::Index>(trial % 6);
    IMat m = random_unimodular(rng, n);
    IVec x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = Int(xv(rng));
    IVec b = m * x;
    IVec got = solve_unimodular(m, b);
    CHECK(got == x);
  }
}

TEST_CASE("unimodular solve rejects bad input") {
  IMat two(1, 1);
  two << Int(2);
  IVec b1(1);
  b1 << Int(2);
  CHECK_THROWS_AS(solve_unimodular(two, b1), std::invalid_argument);

  IMat sing(2, 2);
  sing << Int(1), Int(1), Int(1), Int(1);
  IVec b2(2);
  b2 << Int(0), Int(0);
  CHECK_THROWS_AS(solve_unimodular(sing, b2), std::invalid_argument);

  IMat id = IMat::Identity(2, 2);
  IVec b3(3);
  b3.setZero();
  CHECK_THROWS_AS(solve_unimodular(id, b3), std::invalid_argument);
}

TEST_CASE("multiplicity vectors of the reference curves") {
  SUBCASE("cusp") {
    MultiplicityVector mv = multiplicity_vector(cusp_graph());
    IVec total = mv.total();
    REQUIRE(total.rows() == 3);
    CHECK(total(0) == Int(2));
    CHECK(total(1) == Int(3));
    CHECK(total(2) == Int(6));
  }
  SUBCASE("tacnode: one column per branch") {
    MultiplicityVector mv = multiplicity_vector(tacnode_graph());
    REQUIRE(mv.nu.rows() == 2);
    REQUIRE(mv.nu.cols() == 2);
    for (Eigen::Index k = 0; k < 2; ++k) {
      CHECK(mv.nu(0, k) == Int(1));
      CHECK(mv.nu(1, k) == Int(2));
    }
    IVec total = mv.total();
    CHECK(total(0) == Int(2));
    CHECK(total(1) == Int(4));
  }
  SUBCASE("reference curve") {
    MultiplicityVector mv = multiplicity_vector(example_curve_graph());
    IVec total = mv.total();
    const Int expected[5] = {Int(4), Int(6), Int(12), Int(13), Int(26)};
    REQUIRE(total.rows() == 5);
    for (Eigen::Index i = 0; i < 5; ++i) CHECK(total(i) == expected[i]);
  }
  SUBCASE("defining equation: ee * nu + es = 0 with entries >= 1") {
    for (const DualGraph& g : {cusp_graph(), tacnode_graph(), example_curve_graph()}) {
      IntersectionMatrix im = intersection_matrix(g);
      MultiplicityVector mv = multiplicity_vector(g);
      IMat residue = im.ee * mv.nu + im.es;
      for (Eigen::Index i = 0; i < residue.rows(); ++i)
        for (Eigen::Index j = 0; j < residue.cols(); ++j) CHECK(residue(i, j) == 0);
      for (Eigen::Index i = 0; i < mv.nu.rows(); ++i)
        for (Eigen::Index j = 0; j < mv.nu.cols(); ++j) CHECK(mv.nu(i, j) >= 1);
    }
  }
}

TEST_CASE("Smith normal form: known values") {
  IMat m(2, 2);
  m << Int(2), Int(0), Int(0), Int(3);
  SmithNormalForm f = smith_normal_form(m);
  REQUIRE(f.invariant_factors.size() == 2);
  CHECK(f.invariant_factors[0] == Int(1));
  CHECK(f.invariant_factors[1] == Int(6));

  m << Int(4), Int(6), Int(2), Int(2);
  f = smith_normal_form(m);
  REQUIRE(f.invariant_factors.size() == 2);
  CHECK(f.invariant_factors[0] == Int(2));
  CHECK(f.invariant_factors[1] == Int(2));
}

TEST_CASE("Smith normal form: structure and minor-gcd oracle") {
  std::mt19937 rng(90210);
  for (int trial = 0; trial < 60; ++trial) {
    Eigen::Index rows = 1 + static_cast<Eigen::Index>(trial % 4);
    Eigen::Index cols = 1 + static_cast<Eigen::Index>((trial / 4) % 4);
    IMat m = random_matrix(rng, rows, cols, -5, 5);
    SmithNormalForm f = smith_normal_form(m);

    // u m v = d with u, v unimodular.
    Int du = determinant(f.u), dv = determinant(f.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    CHECK(f.u * m * f.v == f.d);

    // d diagonal, non-negative, divisibility chain.
    for (Eigen::Index i = 0; i < f.d.rows(); ++i)
      for (Eigen::Index j = 0; j < f.d.cols(); ++j)
        if (i != j) CHECK(f.d(i, j) == 0);
    for (std::size_t k = 0; k < f.invariant_factors.size(); ++k) {
      CHECK(f.invariant_factors[k] > 0);
      if (k > 0) CHECK(f.invariant_factors[k] % f.invariant_factors[k - 1] == 0);
    }

    CHECK(f.invariant_factors == minor_gcd_factors(m));
  }
}

TEST_CASE("row cokernel reads off rank and torsion") {
  IMat m(1, 1);
  m << Int(2);
  AbelianQuotient q = row_cokernel(m);
  CHECK(q.free_rank == Int(0));
  CHECK(q.torsion == std::vector<Int>{Int(2)});

  IMat r(1, 2);
  r << Int(2), Int(4);
  q = row_cokernel(r);
  CHECK(q.free_rank == Int(1));
  CHECK(q.torsion == std::vector<Int>{Int(2)});

  IMat z(1, 1);
  z << Int(0);
  q = row_cokernel(z);
  CHECK(q.free_rank == Int(1));
  CHECK(q.torsion.empty());

  IMat unit(1, 2);
  unit << Int(1), Int(0);
  q = row_cokernel(unit);
  CHECK(q.free_rank == Int(1));
  CHECK(q.torsion.empty());
}

}  // TEST_SUITE("lattice")
