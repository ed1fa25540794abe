#include "curvetop/meridian.hpp"

#include "curvetop/lattice.hpp"

#include <algorithm>
#include <functional>

namespace curvetop {

ChainMeridians chain_meridians(const std::vector<Int>& e, bool allow_relaxed) {
  ChainMeridians out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] <= -2) continue;
    if (allow_relaxed && e[j] == -1) {
      out.relaxed = true;
      continue;
    }
    throw std::invalid_argument("chain weight e_" + std::to_string(j + 1) + " = " +
                                to_string(e[j]) +
                                (allow_relaxed ? " (must be <= -1)" : " (must be <= -2)"));
  }
  out.c.reserve(e.size() + 2);
  out.c.push_back(Vec2(1, 0));
  out.c.push_back(Vec2(0, 1));
  for (std::size_t j = 0; j < e.size(); ++j) {
    const Vec2& prev = out.c[out.c.size() - 2];
    const Vec2& cur = out.c[out.c.size() - 1];
    out.c.push_back(Vec2(-prev(0) - e[j] * cur(0), -prev(1) - e[j] * cur(1)));
  }
  return out;
}

ChainCoefficients chain_coefficients(const std::vector<Int>& e, bool allow_relaxed) {
  ChainMeridians m = chain_meridians(e, allow_relaxed);
  const Vec2& c0 = m.c.front();
  const Vec2& cl = m.c[m.c.size() - 2];
  const Vec2& cl1 = m.c.back();
  // det(c_l, c_{l+1}) = 1, so Cramer gives integer coefficients directly.
  ChainCoefficients out;
  out.a = det2(c0, cl1);
  out.b = det2(cl, c0);
  out.abs_a = abs(out.a);
  if (out.a == 0) throw std::invalid_argument("degenerate chain: coefficient a is zero");

  // Cross-check |a| against the determinant of the tridiagonal chain matrix.
  const Eigen::Index l = static_cast<Eigen::Index>(e.size());
  IMat tri = IMat::Zero(l, l);
  for (Eigen::Index i = 0; i < l; ++i) {
    tri(i, i) = e[static_cast<std::size_t>(i)];
    if (i + 1 < l) { tri(i, i + 1) = 1; tri(i + 1, i) = 1; }
  }
  Int tri_det_abs = abs(determinant(tri));  // empty matrix gives 1
  if (tri_det_abs != out.abs_a)
    throw std::logic_error("chain coefficient |a| = " + to_string(out.abs_a) +
                           " does not match |det A| = " + to_string(tri_det_abs));
  return out;
}

namespace {

// Extends the primitive vector a to an oriented basis (a, a*) of the
// lattice: det(a, a*) = 1, via the extended Euclidean algorithm.
Vec2 basis_complement(const Vec2& a) {
  Int old_r = a(0), r = a(1);
  Int old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s; old_s = s; s = tmp;
    tmp = old_t - q * t; old_t = t; t = tmp;
  }
  // old_s * a0 + old_t * a1 = gcd = +-1
  Int g = old_r;
  if (g == -1) { old_s = -old_s; old_t = -old_t; g = 1; }
  if (g != 1) throw std::invalid_argument("vector is not primitive");
  // det(a, a*) = a0 * a1* - a1 * a0* = 1 with a* = (-old_t, old_s)
  return Vec2(-old_t, old_s);
}

Int ceil_div(const Int& num, const Int& den) {
  // den > 0 assumed
  Int q = num / den;  // truncates toward zero
  if (q * den < num) ++q;
  return q;
}

}  // namespace

std::vector<Vec2> hj_chain(const Vec2& a, const Vec2& b) {
  if (!is_primitive(a) || !is_primitive(b))
    throw std::invalid_argument("hj_chain: endpoints must be primitive vectors");
  Int d = det2(a, b);
  if (d <= 0)
    throw std::invalid_argument("hj_chain: det(a, b) = " + to_string(d) + " (must be > 0)");
  // Walk the boundary of the convex hull of the nonzero lattice points in
  // the cone: from the current edge vector c, the next hull point is
  // c* shifted back into the cone, ceil(mu/det) steps of c, where b = mu c +
  // det c* in the basis (c, c*).
  std::vector<Vec2> chain{a};
  Vec2 c = a;
  for (;;) {
    Int dc = det2(c, b);
    if (dc == 0) break;  // c == b (both primitive, same ray)
    Vec2 cstar = basis_complement(c);
    Int mu = -det2(cstar, b);  // coefficient of c in b = mu c + dc c*
    Vec2 next = cstar + ceil_div(mu, dc) * c;
    chain.push_back(next);
    c = next;
  }
  return chain;
}

BruteForceChain brute_force_chain(const Vec2& a, const Vec2& b, const Int& bound,
                                  int max_length) {
  BruteForceChain result;
  if (det2(a, b) <= 0 || !is_primitive(a) || !is_primitive(b)) return result;
  auto in_box = [&](const Vec2& v) { return abs(v(0)) <= bound && abs(v(1)) <= bound; };
  if (!in_box(a) || !in_box(b)) return result;

  std::vector<Vec2> path{a};
  std::function<void()> dfs = [&]() {
    const Vec2 cur = path.back();  // by value: recursion reallocates `path`
    if (cur == b && path.size() >= 2) {
      result.found.push_back(path);
      return;  // a longer chain through b would need det(b, next) = 1 too,
               // but the sequence must end at b, so stop here
    }
    if (static_cast<int>(path.size()) >= max_length) return;
    // Successors z with det(cur, z) = 1: z = z0 + m * cur; enumerate the m
    // values that keep z in the box.
    Vec2 z0 = basis_complement(cur);
    // coordinate-wise bounds on m from |z0 + m*cur| <= bound
    for (Int m = -(2 * bound + 1); m <= 2 * bound + 1; ++m) {
      Vec2 z = z0 + m * cur;
      if (!in_box(z)) continue;
      if (path.size() >= 2 && det2(path[path.size() - 2], z) <= 1) continue;
      bool revisit = false;
      for (const Vec2& seen : path)
        if (seen == z) { revisit = true; break; }
      if (revisit) continue;
      path.push_back(z);
      dfs();
      path.pop_back();
    }
  };
  dfs();
  if (result.found.size() == 1) result.status = BruteForceChain::Status::unique;
  else if (result.found.empty()) result.status = BruteForceChain::Status::not_found;
  else result.status = BruteForceChain::Status::ambiguous;
  return result;
}

DeadBranchMeridian dead_branch_meridian(const std::vector<Int>& e) {
  if (e.empty()) throw std::invalid_argument("dead branch must have at least one component");
  for (std::size_t j = 0; j < e.size(); ++j)
    if (e[j] > -2)
      throw std::invalid_argument("dead branch weight e_" + std::to_string(j + 1) + " = " +
                                  to_string(e[j]) + " (must be <= -2)");
  DeadBranchMeridian out;
  ChainMeridians m = chain_meridians(e);
  out.sequence = m.c;
  out.meridian = m.c.back();
  out.coefficients = chain_coefficients(e);
  return out;
}

SeifertBlock seifert_block(const DualGraph& g, const std::string& rupture_id) {
  Classification cls = classify(g);
  if (!std::binary_search(cls.rupture.begin(), cls.rupture.end(), rupture_id))
    throw std::invalid_argument("'" + rupture_id + "' is not a rupture vertex");
  SeifertBlock block;
  block.vertex = rupture_id;
  for (const auto& c : cls.chains)
    if (c.ends[0] == rupture_id || c.ends[1] == rupture_id) ++block.boundary_count;
  for (const auto& sp : cls.strict_pairs)
    if (sp.attach == rupture_id) ++block.boundary_count;
  for (const auto& db : cls.dead_branches) {
    if (db.attach != rupture_id) continue;
    DeadBranchMeridian m = dead_branch_meridian(dead_branch_weights(g, db));
    block.fibers.push_back({db.id, m.coefficients.a, m.coefficients.b});
  }
  return block;
}

std::vector<SeifertBlock> seifert_blocks(const DualGraph& g) {
  Classification cls = classify(g);
  std::vector<SeifertBlock> out;
  for (const auto& r : cls.rupture) out.push_back(seifert_block(g, r));
  return out;
}

}  // namespace curvetop
