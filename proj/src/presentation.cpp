#include "curvetop/presentation.hpp"

#include "curvetop/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace curvetop {

Word free_reduce(Word w) {
  Word out;
  for (Syllable& s : w) {
    if (s.exp == 0) continue;
    if (!out.empty() && out.back().gen == s.gen) {
      out.back().exp += s.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(std::move(s));
    }
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(std::move(out));
}

Word conjugate(const Word& w, const Word& by) {
  return concat(concat(by, w), inverse_word(by));
}

std::vector<std::pair<std::string, std::string>> Presentation::commuting_pairs() const {
  std::set<std::pair<std::string, std::string>> pairs;
  for (const Word& r : relators) {
    if (r.size() != 4) continue;
    if (r[0].gen == r[2].gen && r[1].gen == r[3].gen && r[0].exp == 1 && r[1].exp == 1 &&
        r[2].exp == -1 && r[3].exp == -1)
      pairs.insert(std::minmax(r[0].gen, r[1].gen));
  }
  return {pairs.begin(), pairs.end()};
}

Presentation fundamental_group_presentation(const DualGraph& g) {
  ValidationReport rep = validate(g);
  if (!rep.ok())
    throw std::invalid_argument("invalid dual graph: " + rep.violations.front());
  Presentation p;
  for (const auto& [id, v] : g.vertices) {
    p.generators.push_back(id);
    (v.kind == VertexKind::exceptional ? p.exceptional_gens : p.strict_gens).push_back(id);
  }
  for (const std::string& e : p.exceptional_gens) {
    std::vector<std::string> star = g.neighbors(e);  // sorted
    p.star_orders[e] = star;
    Word r;
    for (const std::string& n : star) r.push_back({n, Int(1)});
    r.push_back({e, *g.vertex(e).self_intersection});
    p.relators.push_back(free_reduce(std::move(r)));
  }
  for (const auto& [u, v] : g.edges)
    p.relators.push_back({{u, Int(1)}, {v, Int(1)}, {u, Int(-1)}, {v, Int(-1)}});
  return p;
}

std::vector<PeripheralPair> peripheral_subgroups(const Presentation& p, const DualGraph& g) {
  for (const std::string& s : p.strict_gens)
    if (!g.has_vertex(s) || g.vertex(s).kind != VertexKind::strict_transform)
      throw std::invalid_argument("presentation does not match graph: no strict transform '" +
                                  s + "'");
  std::vector<PeripheralPair> out;
  for (const std::string& s : p.strict_gens) {
    std::vector<std::string> ns = g.neighbors(s);
    if (ns.size() != 1)
      throw std::invalid_argument("strict transform '" + s + "' is not attached to exactly one component");
    out.push_back({s, Word{{s, Int(1)}}, Word{{ns.front(), Int(1)}}});
  }
  return out;
}

namespace {

Eigen::Index index_of(const std::vector<std::string>& v, const std::string& id) {
  auto it = std::find(v.begin(), v.end(), id);
  if (it == v.end()) return -1;
  return static_cast<Eigen::Index>(it - v.begin());
}

}  // namespace

H1Summary abelianization(const Presentation& p) {
  const std::vector<std::string>& gens = p.generators;
  IMat relations = IMat::Zero(static_cast<Eigen::Index>(p.relators.size()),
                              static_cast<Eigen::Index>(gens.size()));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (const Syllable& s : p.relators[r]) {
      Eigen::Index c = index_of(gens, s.gen);
      if (c < 0)
        throw std::invalid_argument("relator uses unknown generator '" + s.gen + "'");
      relations(static_cast<Eigen::Index>(r), c) += s.exp;
    }
  AbelianQuotient q = row_cokernel(relations);
  if (!q.torsion.empty()) {
    std::string factors;
    for (const Int& t : q.torsion) factors += (factors.empty() ? "" : ", ") + to_string(t);
    throw std::invalid_argument("abelianization has torsion (" + factors +
                                "): not the presentation of a resolution dual tree");
  }
  const Eigen::Index ne = static_cast<Eigen::Index>(p.exceptional_gens.size());
  const Eigen::Index ns = static_cast<Eigen::Index>(p.strict_gens.size());
  if (q.free_rank != Int(ns))
    throw std::invalid_argument("abelianization has rank " + to_string(q.free_rank) +
                                ", expected one class per strict transform (" +
                                std::to_string(p.strict_gens.size()) + ")");
  if (static_cast<Eigen::Index>(p.relators.size()) < ne)
    throw std::invalid_argument("presentation lacks the product relators");

  // The product relator of the i-th exceptional component abelianizes to
  // (ee row_i) . x + (es row_i) . s = 0; with |det ee| = 1 this expresses
  // every exceptional class over the strict-transform basis.
  IMat ee = IMat::Zero(ne, ne), es = IMat::Zero(ne, ns);
  for (Eigen::Index i = 0; i < ne; ++i)
    for (const Syllable& s : p.relators[static_cast<std::size_t>(i)]) {
      Eigen::Index c = index_of(p.exceptional_gens, s.gen);
      if (c >= 0) {
        ee(i, c) += s.exp;
        continue;
      }
      c = index_of(p.strict_gens, s.gen);
      if (c < 0) throw std::invalid_argument("relator uses unknown generator '" + s.gen + "'");
      es(i, c) += s.exp;
    }
  H1Summary out;
  out.free_rank = q.free_rank;
  out.torsion = q.torsion;
  out.exceptional_ids = p.exceptional_gens;
  out.strict_ids = p.strict_gens;
  out.expression = IMat::Zero(ne, ns);
  for (Eigen::Index k = 0; k < ns; ++k) {
    IVec rhs = -es.col(k);
    out.expression.col(k) = solve_unimodular(ee, rhs);
  }
  return out;
}

bool check_relations_abelian(const Presentation& p, const H1Summary& summary) {
  const Eigen::Index ns = static_cast<Eigen::Index>(summary.strict_ids.size());
  if (summary.expression.rows() != static_cast<Eigen::Index>(summary.exceptional_ids.size()) ||
      summary.expression.cols() != ns)
    return false;
  for (const Word& r : p.relators) {
    IVec acc = IVec::Zero(ns);
    for (const Syllable& s : r) {
      Eigen::Index e = index_of(summary.exceptional_ids, s.gen);
      if (e >= 0) {
        acc += s.exp * summary.expression.row(e).transpose();
        continue;
      }
      Eigen::Index c = index_of(summary.strict_ids, s.gen);
      if (c < 0) return false;
      acc(c) += s.exp;
    }
    for (Eigen::Index i = 0; i < ns; ++i)
      if (acc(i) != 0) return false;
  }
  return true;
}

namespace {

std::string display(const std::string& gen, const std::map<std::string, std::string>& aliases) {
  auto it = aliases.find(gen);
  return it == aliases.end() ? gen : it->second;
}

nlohmann::json json_int(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
  return to_string(v);
}

}  // namespace

std::string word_to_text(const Word& w, const std::map<std::string, std::string>& aliases) {
  if (w.empty()) return "1";
  std::string out;
  for (const Syllable& s : w) {
    if (!out.empty()) out += ' ';
    out += display(s.gen, aliases);
    if (s.exp != 1) out += "^" + to_string(s.exp);
  }
  return out;
}

std::string presentation_to_text(const Presentation& p) {
  std::string out = "generators:";
  for (const std::string& g : p.generators) out += ' ' + display(g, p.aliases);
  out += "\nrelators:\n";
  for (const Word& r : p.relators) out += "  " + word_to_text(r, p.aliases) + " = 1\n";
  return out;
}

std::string presentation_to_json(const Presentation& p) {
  nlohmann::json j;
  j["generators"] = nlohmann::json::array();
  for (const std::string& g : p.generators) j["generators"].push_back(display(g, p.aliases));
  j["exceptional"] = nlohmann::json::array();
  for (const std::string& g : p.exceptional_gens) j["exceptional"].push_back(display(g, p.aliases));
  j["strict"] = nlohmann::json::array();
  for (const std::string& g : p.strict_gens) j["strict"].push_back(display(g, p.aliases));
  j["relators"] = nlohmann::json::array();
  for (const Word& r : p.relators) {
    nlohmann::json word = nlohmann::json::array();
    for (const Syllable& s : r)
      word.push_back(nlohmann::json::array({display(s.gen, p.aliases), json_int(s.exp)}));
    j["relators"].push_back(std::move(word));
  }
  j["star_orders"] = nlohmann::json::object();
  for (const auto& [e, star] : p.star_orders) {
    nlohmann::json arr = nlohmann::json::array();
    for (const std::string& n : star) arr.push_back(display(n, p.aliases));
    j["star_orders"][display(e, p.aliases)] = std::move(arr);
  }
  if (!p.aliases.empty()) {
    j["aliases"] = nlohmann::json::object();
    for (const auto& [id, alias] : p.aliases) j["aliases"][id] = alias;
  }
  return j.dump(2) + "\n";
}

}  // namespace curvetop
