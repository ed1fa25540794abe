#pragma once

// Meridian calculus on chains of the divisor.  The first homology of a
// chain neighbourhood is a rank-2 lattice; the meridians of the successive
// components follow a three-term recurrence driven by the
// self-intersections, and the end meridians are related by unimodular
// continued-fraction (Hirzebruch-Jung) chains.

#include "curvetop/exact.hpp"
#include "curvetop/graph.hpp"

#include <string>
#include <vector>

namespace curvetop {

// Meridian vectors c_0 = (1,0), c_1 = (0,1), c_{j+1} = -c_{j-1} - e_j c_j
// for the chain with interior self-intersections e_1..e_l; the result has
// l+2 entries.  Entries must be <= -2, or <= -1 with allow_relaxed (the
// relaxed run is flagged).
struct ChainMeridians {
  std::vector<Vec2> c;
  bool relaxed = false;
};

ChainMeridians chain_meridians(const std::vector<Int>& e, bool allow_relaxed = false);

// Coefficients of c_0 in the basis (c_l, c_{l+1}): c_0 = a c_l + b c_{l+1}.
// |a| equals |det A| for the tridiagonal matrix A of the chain; the sign of
// a is the one the recurrence produces.  a = 0 is a degenerate error.
struct ChainCoefficients {
  Int a;
  Int abs_a;
  Int b;
};

ChainCoefficients chain_coefficients(const std::vector<Int>& e, bool allow_relaxed = false);

// The unique sequence c_0 = a, ..., c_{n+1} = b of primitive lattice vectors
// with det(c_j, c_{j+1}) = 1 and det(c_{k-1}, c_{k+1}) > 1: the primitive
// vectors on the compact faces of the convex hull of the nonzero lattice
// points in the closed cone spanned by a and b.  Requires a, b primitive and
// det(a, b) > 0.
std::vector<Vec2> hj_chain(const Vec2& a, const Vec2& b);

// Exhaustive oracle for hj_chain: searches all sequences of lattice vectors
// with coordinates bounded by `bound` satisfying the same conditions.
struct BruteForceChain {
  enum class Status { unique, not_found, ambiguous };
  Status status = Status::not_found;
  std::vector<std::vector<Vec2>> found;  // every bounded solution encountered
};

BruteForceChain brute_force_chain(const Vec2& a, const Vec2& b, const Int& bound,
                                  int max_length = 64);

// Meridian of the end component of a dead branch with tail weights e_1..e_l
// (all <= -2): the last vector of the recurrence, plus the coefficients of
// c_0 in the final basis.  The coefficient a is nonzero and |a| = |det A|.
struct DeadBranchMeridian {
  Vec2 meridian;  // c_{l+1}
  ChainCoefficients coefficients;
  std::vector<Vec2> sequence;
};

DeadBranchMeridian dead_branch_meridian(const std::vector<Int>& e);

// Seifert data of the block around a rupture vertex: one boundary torus per
// adjacent chain or strict transform, one exceptional fiber per adjacent
// dead branch carrying that branch's (a, b) pair (a != 0 always).
struct SeifertFiber {
  std::string dead_branch_id;
  Int a;
  Int b;
};

struct SeifertBlock {
  std::string vertex;
  int boundary_count = 0;
  std::vector<SeifertFiber> fibers;
};

SeifertBlock seifert_block(const DualGraph& g, const std::string& rupture_id);
std::vector<SeifertBlock> seifert_blocks(const DualGraph& g);

}  // namespace curvetop
