#pragma once

// Weighted dual trees of resolution divisors: vertices are exceptional
// components (weighted by self-intersection) and strict transforms of the
// curve branches; edges record intersections.  Provides validation, the
// rupture/chain/dead-branch decomposition, the quotient graph on rupture
// vertices, weighted-tree automorphisms, and JSON/DOT serialization.

#include "curvetop/exact.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace curvetop {

enum class VertexKind { exceptional, strict_transform };

struct Vertex {
  std::string id;
  VertexKind kind = VertexKind::exceptional;
  std::optional<Int> self_intersection;  // required for exceptional vertices
};

struct DualGraph {
  std::map<std::string, Vertex> vertices;                  // keyed by id
  std::set<std::pair<std::string, std::string>> edges;     // normalized first < second

  void add_vertex(Vertex v);
  void add_exceptional(const std::string& id, Int self_intersection);
  void add_strict(const std::string& id);
  // Throws on unknown endpoints, self-loops, and duplicate edges.
  void add_edge(const std::string& a, const std::string& b);

  bool has_vertex(const std::string& id) const { return vertices.count(id) != 0; }
  const Vertex& vertex(const std::string& id) const;
  bool adjacent(const std::string& a, const std::string& b) const;
  std::vector<std::string> neighbors(const std::string& id) const;  // sorted
  std::vector<std::string> exceptional_ids() const;                 // sorted
  std::vector<std::string> strict_ids() const;                      // sorted

  bool operator==(const DualGraph& other) const;
};

// Number of adjacent components (strict transforms included).
int valence(const DualGraph& g, const std::string& id);

struct ValidationReport {
  std::vector<std::string> violations;  // structural failures: not a valid dual tree
  bool minimal = true;                  // false if some -1 vertex could be contracted
  std::vector<std::string> non_minimal_vertices;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const DualGraph& g);

// A chain joins two rupture vertices through valence-2 exceptional vertices.
// Ends are stored sorted; the interior is listed walking ends[0] -> ends[1].
struct Chain {
  std::string id;
  std::array<std::string, 2> ends;
  std::vector<std::string> interior;  // empty for a direct rupture-rupture edge
};

// A dead branch hangs off a rupture vertex and ends in a valence-1
// exceptional vertex; the tail is listed from the attachment outward.
struct DeadBranch {
  std::string id;
  std::string attach;
  std::vector<std::string> tail;
};

struct StrictPair {
  std::string strict_id;
  std::string attach;
  bool attach_is_rupture = false;
};

struct Classification {
  std::vector<std::string> rupture;  // exceptional vertices of valence >= 3, sorted
  std::vector<Chain> chains;
  std::vector<DeadBranch> dead_branches;
  std::vector<StrictPair> strict_pairs;
  // Exceptional vertices covered by no chain or dead branch (degenerate
  // configurations: rupture-free graphs, strict transforms on non-rupture
  // vertices).  Empty for standard resolved curves.
  std::vector<std::string> residual;
  std::vector<std::string> flags;

  const Chain& chain(const std::string& id) const;
  const DeadBranch& dead_branch(const std::string& id) const;
};

std::vector<Int> chain_weights(const DualGraph& g, const Chain& c);
std::vector<Int> dead_branch_weights(const DualGraph& g, const DeadBranch& b);

// Throws std::invalid_argument when validate() reports violations.
Classification classify(const DualGraph& g);

// Quotient graph: one vertex per rupture component, one edge per chain.
// Parallel edges are kept (edge multiset).
struct JsjGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> edge_chain_ids;
};

JsjGraph jsj_graph(const Classification& cls);
JsjGraph jsj_graph(const DualGraph& g);

// Automorphism of the weighted tree: kind- and weight-preserving
// adjacency-preserving permutation of the vertices.
struct TreeAutomorphism {
  std::map<std::string, std::string> map;
  std::map<std::string, std::string> strict_action(const DualGraph& g) const;
};

// Full automorphism group, identity first, deterministic order.
std::vector<TreeAutomorphism> tree_automorphisms(const DualGraph& g);

// JSON schema:
//   {"vertices":[{"id":"E1","kind":"exceptional","self_intersection":-3},...,
//                {"id":"S","kind":"strict_transform"}],
//    "edges":[["E1","E3"],...]}
// Parse errors carry the offending field/element.
DualGraph graph_from_json(const std::string& text);
std::string graph_to_json(const DualGraph& g);
std::string graph_to_dot(const DualGraph& g);

}  // namespace curvetop
