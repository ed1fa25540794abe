#include "curvetop/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace curvetop {

namespace {

std::pair<std::string, std::string> norm_edge(const std::string& a, const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

void DualGraph::add_vertex(Vertex v) {
  if (v.id.empty()) throw std::invalid_argument("vertex id must be nonempty");
  if (vertices.count(v.id)) throw std::invalid_argument("duplicate vertex id '" + v.id + "'");
  vertices.emplace(v.id, std::move(v));
}

void DualGraph::add_exceptional(const std::string& id, Int self_intersection) {
  add_vertex({id, VertexKind::exceptional, std::move(self_intersection)});
}

void DualGraph::add_strict(const std::string& id) {
  add_vertex({id, VertexKind::strict_transform, std::nullopt});
}

void DualGraph::add_edge(const std::string& a, const std::string& b) {
  if (!has_vertex(a)) throw std::invalid_argument("edge endpoint '" + a + "' is not a vertex");
  if (!has_vertex(b)) throw std::invalid_argument("edge endpoint '" + b + "' is not a vertex");
  if (a == b) throw std::invalid_argument("self-loop at '" + a + "'");
  auto e = norm_edge(a, b);
  if (edges.count(e)) throw std::invalid_argument("duplicate edge (" + e.first + ", " + e.second + ")");
  edges.insert(e);
}

const Vertex& DualGraph::vertex(const std::string& id) const {
  auto it = vertices.find(id);
  if (it == vertices.end()) throw std::invalid_argument("unknown vertex '" + id + "'");
  return it->second;
}

bool DualGraph::adjacent(const std::string& a, const std::string& b) const {
  return edges.count(norm_edge(a, b)) != 0;
}

std::vector<std::string> DualGraph::neighbors(const std::string& id) const {
  vertex(id);  // existence check
  std::vector<std::string> out;
  for (const auto& [a, b] : edges) {
    if (a == id) out.push_back(b);
    if (b == id) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> DualGraph::exceptional_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, v] : vertices)
    if (v.kind == VertexKind::exceptional) out.push_back(id);
  return out;
}

std::vector<std::string> DualGraph::strict_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, v] : vertices)
    if (v.kind == VertexKind::strict_transform) out.push_back(id);
  return out;
}

bool DualGraph::operator==(const DualGraph& other) const {
  if (edges != other.edges) return false;
  if (vertices.size() != other.vertices.size()) return false;
  for (const auto& [id, v] : vertices) {
    auto it = other.vertices.find(id);
    if (it == other.vertices.end()) return false;
    if (it->second.kind != v.kind || it->second.self_intersection != v.self_intersection)
      return false;
  }
  return true;
}

int valence(const DualGraph& g, const std::string& id) {
  return static_cast<int>(g.neighbors(id).size());
}

ValidationReport validate(const DualGraph& g) {
  ValidationReport report;
  auto bad = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (g.vertices.empty()) {
    bad("graph is empty");
    return report;
  }
  for (const auto& [a, b] : g.edges) {
    if (!g.has_vertex(a)) bad("edge endpoint '" + a + "' is not a vertex");
    if (!g.has_vertex(b)) bad("edge endpoint '" + b + "' is not a vertex");
    if (a == b) bad("self-loop at '" + a + "'");
  }
  if (!report.violations.empty()) return report;

  std::size_t exceptional_count = 0;
  for (const auto& [id, v] : g.vertices) {
    if (v.kind == VertexKind::exceptional) {
      ++exceptional_count;
      if (!v.self_intersection)
        bad("exceptional vertex '" + id + "' has no self_intersection");
      else if (*v.self_intersection > -1)
        bad("exceptional vertex '" + id + "' has self_intersection " +
            to_string(*v.self_intersection) + " (must be <= -1)");
    } else {
      if (g.neighbors(id).size() != 1)
        bad("strict transform '" + id + "' has degree " +
            std::to_string(g.neighbors(id).size()) + " (must be 1)");
    }
  }
  if (exceptional_count == 0) bad("graph has no exceptional vertex");

  // Tree check: connected and |E| = |V| - 1.
  {
    std::vector<std::string> stack{g.vertices.begin()->first};
    std::set<std::string> seen{stack.front()};
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      for (const auto& n : g.neighbors(v))
        if (seen.insert(n).second) stack.push_back(n);
    }
    if (seen.size() != g.vertices.size()) bad("graph is not connected");
    if (g.edges.size() + 1 != g.vertices.size()) bad("graph has a cycle");
  }
  if (!report.violations.empty()) return report;

  // Minimality: a -1 exceptional vertex is contractible (and the graph
  // non-minimal) when it has at most two neighbours of which at most one is
  // a strict transform, unless it is the only exceptional vertex.
  for (const auto& [id, v] : g.vertices) {
    if (v.kind != VertexKind::exceptional || *v.self_intersection != -1) continue;
    if (exceptional_count == 1) continue;
    auto ns = g.neighbors(id);
    if (ns.size() > 2) continue;
    int strict_neighbors = 0;
    for (const auto& n : ns)
      if (g.vertex(n).kind == VertexKind::strict_transform) ++strict_neighbors;
    if (static_cast<std::size_t>(strict_neighbors) == ns.size() && !ns.empty()) continue;
    report.minimal = false;
    report.non_minimal_vertices.push_back(id);
  }
  return report;
}

std::vector<Int> chain_weights(const DualGraph& g, const Chain& c) {
  std::vector<Int> out;
  for (const auto& id : c.interior) out.push_back(*g.vertex(id).self_intersection);
  return out;
}

std::vector<Int> dead_branch_weights(const DualGraph& g, const DeadBranch& b) {
  std::vector<Int> out;
  for (const auto& id : b.tail) out.push_back(*g.vertex(id).self_intersection);
  return out;
}

const Chain& Classification::chain(const std::string& id) const {
  for (const auto& c : chains)
    if (c.id == id) return c;
  throw std::invalid_argument("unknown chain '" + id + "'");
}

const DeadBranch& Classification::dead_branch(const std::string& id) const {
  for (const auto& b : dead_branches)
    if (b.id == id) return b;
  throw std::invalid_argument("unknown dead branch '" + id + "'");
}

Classification classify(const DualGraph& g) {
  ValidationReport report = validate(g);
  if (!report.ok())
    throw std::invalid_argument("invalid dual graph: " + report.violations.front());

  Classification cls;
  std::set<std::string> rupture;
  for (const auto& id : g.exceptional_ids())
    if (valence(g, id) >= 3) rupture.insert(id);
  cls.rupture.assign(rupture.begin(), rupture.end());

  for (const auto& sid : g.strict_ids()) {
    std::string attach = g.neighbors(sid).front();
    bool on_rupture = rupture.count(attach) != 0;
    cls.strict_pairs.push_back({sid, attach, on_rupture});
    if (!on_rupture)
      cls.flags.push_back("strict transform '" + sid + "' attaches to non-rupture vertex '" +
                          attach + "'");
  }

  // Components of the graph minus rupture vertices and strict transforms.
  std::set<std::string> unvisited;
  for (const auto& id : g.exceptional_ids())
    if (!rupture.count(id)) unvisited.insert(id);

  struct Component {
    std::vector<std::string> members;
    // rupture vertices adjacent to the component, with the member touched
    std::vector<std::pair<std::string, std::string>> attachments;  // (rupture, member)
    bool has_strict = false;
  };
  std::vector<Component> comps;
  while (!unvisited.empty()) {
    std::string seed = *unvisited.begin();
    Component comp;
    std::vector<std::string> stack{seed};
    unvisited.erase(seed);
    std::set<std::string> in_comp{seed};
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      comp.members.push_back(v);
      for (const auto& n : g.neighbors(v)) {
        if (rupture.count(n)) {
          comp.attachments.emplace_back(n, v);
        } else if (g.vertex(n).kind == VertexKind::strict_transform) {
          comp.has_strict = true;
        } else if (!in_comp.count(n)) {
          in_comp.insert(n);
          unvisited.erase(n);
          stack.push_back(n);
        }
      }
    }
    comps.push_back(std::move(comp));
  }

  std::vector<Chain> chains;
  std::vector<DeadBranch> deads;
  std::set<std::string> residual;

  // In a tree each component is a path; walk it from a given end.
  auto walk_path = [&](const Component& comp, const std::string& from) {
    std::vector<std::string> order;
    std::set<std::string> members(comp.members.begin(), comp.members.end());
    std::string prev;
    std::string cur = from;
    while (true) {
      order.push_back(cur);
      std::string next;
      for (const auto& n : g.neighbors(cur))
        if (members.count(n) && n != prev) next = n;
      if (next.empty()) break;
      prev = cur;
      cur = next;
    }
    return order;
  };

  for (const auto& comp : comps) {
    if (comp.attachments.size() == 2 && !comp.has_strict) {
      // Chain through the component: orient from the smaller end.
      Chain c;
      c.ends = {comp.attachments[0].first, comp.attachments[1].first};
      c.interior = walk_path(comp, comp.attachments[0].second);
      if (c.ends[0] > c.ends[1]) {  // keep ends sorted, reverse the walk
        std::swap(c.ends[0], c.ends[1]);
        std::reverse(c.interior.begin(), c.interior.end());
      }
      chains.push_back(std::move(c));
    } else if (comp.attachments.size() == 1 && !comp.has_strict) {
      DeadBranch b;
      b.attach = comp.attachments[0].first;
      b.tail = walk_path(comp, comp.attachments[0].second);
      deads.push_back(std::move(b));
    } else {
      for (const auto& m : comp.members) residual.insert(m);
      if (comp.attachments.size() > 2)
        throw std::logic_error("non-path component in chain decomposition");
    }
  }

  // Direct rupture-rupture edges are chains of length zero.
  for (const auto& [a, b] : g.edges)
    if (rupture.count(a) && rupture.count(b)) chains.push_back({"", {a, b}, {}});

  std::sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) {
    return std::tie(x.ends[0], x.ends[1], x.interior) < std::tie(y.ends[0], y.ends[1], y.interior);
  });
  std::sort(deads.begin(), deads.end(), [](const DeadBranch& x, const DeadBranch& y) {
    return std::tie(x.attach, x.tail) < std::tie(y.attach, y.tail);
  });
  for (std::size_t i = 0; i < chains.size(); ++i) chains[i].id = "C" + std::to_string(i);
  for (std::size_t i = 0; i < deads.size(); ++i) deads[i].id = "M" + std::to_string(i);
  cls.chains = std::move(chains);
  cls.dead_branches = std::move(deads);
  cls.residual.assign(residual.begin(), residual.end());
  return cls;
}

JsjGraph jsj_graph(const Classification& cls) {
  JsjGraph j;
  j.vertices = cls.rupture;
  for (const auto& c : cls.chains) {
    j.edges.emplace_back(c.ends[0], c.ends[1]);
    j.edge_chain_ids.push_back(c.id);
  }
  return j;
}

JsjGraph jsj_graph(const DualGraph& g) { return jsj_graph(classify(g)); }

namespace {

// Backtracking enumeration of kind/weight/degree-preserving vertex
// bijections that preserve adjacency; complete because the map is checked
// against every edge once fully assigned.
struct AutoSearch {
  const DualGraph& g;
  std::vector<std::string> order;  // assignment order (sorted ids)
  std::map<std::string, std::string> partial;
  std::set<std::string> used;
  std::vector<TreeAutomorphism> found;

  bool compatible(const std::string& v, const std::string& w) {
    const Vertex& a = g.vertex(v);
    const Vertex& b = g.vertex(w);
    if (a.kind != b.kind) return false;
    if (a.self_intersection != b.self_intersection) return false;
    return g.neighbors(v).size() == g.neighbors(w).size();
  }

  void search(std::size_t i) {
    if (i == order.size()) {
      for (const auto& [a, b] : g.edges)
        if (!g.adjacent(partial.at(a), partial.at(b))) return;
      found.push_back({partial});
      return;
    }
    const std::string& v = order[i];
    for (const auto& [w, vert] : g.vertices) {
      (void)vert;
      if (used.count(w) || !compatible(v, w)) continue;
      bool ok = true;
      for (const auto& n : g.neighbors(v)) {
        auto it = partial.find(n);
        if (it != partial.end() && !g.adjacent(w, it->second)) { ok = false; break; }
      }
      if (!ok) continue;
      partial[v] = w;
      used.insert(w);
      search(i + 1);
      used.erase(w);
      partial.erase(v);
    }
  }
};

}  // namespace

std::map<std::string, std::string> TreeAutomorphism::strict_action(const DualGraph& g) const {
  std::map<std::string, std::string> out;
  for (const auto& sid : g.strict_ids()) out[sid] = map.at(sid);
  return out;
}

std::vector<TreeAutomorphism> tree_automorphisms(const DualGraph& g) {
  ValidationReport report = validate(g);
  if (!report.ok())
    throw std::invalid_argument("invalid dual graph: " + report.violations.front());
  AutoSearch s{g, {}, {}, {}, {}};
  for (const auto& [id, v] : g.vertices) {
    (void)v;
    s.order.push_back(id);
  }
  s.search(0);
  // Identity first, then lexicographic by image sequence; the search already
  // emits in that order because candidates are scanned in sorted id order.
  return s.found;
}

DualGraph graph_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("graph JSON parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    throw std::invalid_argument("graph JSON must be an object with 'vertices' and 'edges'");
  DualGraph g;
  const auto& vs = doc.at("vertices");
  if (!vs.is_array()) throw std::invalid_argument("graph JSON: 'vertices' must be an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& v = vs[i];
    std::string where = "vertices[" + std::to_string(i) + "]";
    if (!v.is_object() || !v.contains("id") || !v.at("id").is_string())
      throw std::invalid_argument("graph JSON: " + where + " needs a string 'id'");
    std::string id = v.at("id").get<std::string>();
    if (!v.contains("kind") || !v.at("kind").is_string())
      throw std::invalid_argument("graph JSON: " + where + " ('" + id + "') needs a string 'kind'");
    std::string kind = v.at("kind").get<std::string>();
    Vertex vert;
    vert.id = id;
    if (kind == "exceptional") {
      vert.kind = VertexKind::exceptional;
      if (!v.contains("self_intersection") || !v.at("self_intersection").is_number_integer())
        throw std::invalid_argument("graph JSON: " + where + " ('" + id +
                                    "'): missing integer field 'self_intersection'");
      vert.self_intersection = Int(v.at("self_intersection").get<long long>());
    } else if (kind == "strict_transform") {
      vert.kind = VertexKind::strict_transform;
      if (v.contains("self_intersection") && v.at("self_intersection").is_number_integer())
        vert.self_intersection = Int(v.at("self_intersection").get<long long>());
    } else {
      throw std::invalid_argument("graph JSON: " + where + " ('" + id + "'): unknown kind '" +
                                  kind + "'");
    }
    try {
      g.add_vertex(std::move(vert));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("graph JSON: " + where + ": " + e.what());
    }
  }
  const auto& es = doc.at("edges");
  if (!es.is_array()) throw std::invalid_argument("graph JSON: 'edges' must be an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto& e = es[i];
    std::string where = "edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw std::invalid_argument("graph JSON: " + where + " must be a pair of vertex ids");
    try {
      g.add_edge(e[0].get<std::string>(), e[1].get<std::string>());
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument("graph JSON: " + where + ": " + ex.what());
    }
  }
  return g;
}

std::string graph_to_json(const DualGraph& g) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (const auto& [id, v] : g.vertices) {
    nlohmann::json jv;
    jv["id"] = id;
    jv["kind"] = v.kind == VertexKind::exceptional ? "exceptional" : "strict_transform";
    if (v.self_intersection) jv["self_intersection"] = static_cast<long long>(*v.self_intersection);
    doc["vertices"].push_back(jv);
  }
  doc["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : g.edges) doc["edges"].push_back({a, b});
  return doc.dump(2) + "\n";
}

std::string graph_to_dot(const DualGraph& g) {
  std::ostringstream out;
  out << "graph dual {\n";
  for (const auto& [id, v] : g.vertices) {
    out << "  \"" << id << "\" [label=\"" << id;
    if (v.kind == VertexKind::exceptional) out << " (" << to_string(*v.self_intersection) << ")";
    out << "\"";
    if (v.kind == VertexKind::strict_transform) out << ", shape=box";
    out << "];\n";
  }
  for (const auto& [a, b] : g.edges) {
    bool a_strict = g.vertex(a).kind == VertexKind::strict_transform;
    bool b_strict = g.vertex(b).kind == VertexKind::strict_transform;
    if (a_strict || b_strict) {
      // strict transforms drawn as arrows into the component they meet
      std::string from = a_strict ? a : b;
      std::string to = a_strict ? b : a;
      out << "  \"" << from << "\" -- \"" << to << "\" [dir=forward];\n";
    } else {
      out << "  \"" << a << "\" -- \"" << b << "\";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace curvetop
