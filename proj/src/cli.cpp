#include "curvetop/cli.hpp"

#include "curvetop/exact.hpp"
#include "curvetop/fixtures.hpp"
#include "curvetop/graph.hpp"
#include "curvetop/lattice.hpp"
#include "curvetop/mcg.hpp"
#include "curvetop/meridian.hpp"
#include "curvetop/presentation.hpp"
#include "curvetop/resolution.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvetop::cli {

namespace {

struct RunConfig {
  std::string subcommand;
  std::string input = "-";
  std::string output = "-";
  std::string format = "text";
  std::uint64_t seed = 0;  // reserved; every current subcommand is deterministic
};

std::string read_all(std::istream& is) {
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string read_input(const RunConfig& cfg) {
  if (cfg.input == "-") return read_all(std::cin);
  std::ifstream f(cfg.input, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open input file '" + cfg.input + "'");
  return read_all(f);
}

// Accepts either input schema: a branch file is resolved first, a graph
// file is taken as-is.
DualGraph load_graph(const RunConfig& cfg) {
  const std::string text = read_input(cfg);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("input is not valid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("branches")) return resolve(parse_branches(text));
  return graph_from_json(text);
}

void write_output(const RunConfig& cfg, std::ostream& out, const std::string& payload) {
  if (cfg.output == "-") {
    out << payload;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + cfg.output + "'");
  f << payload;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string or_none(const std::vector<std::string>& parts) {
  return parts.empty() ? "none" : join(parts);
}

std::string ints_text(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += " ";
    out += to_string(v[i]);
  }
  return out.empty() ? "none" : out;
}

std::string vec2_text(const Vec2& v) {
  return "(" + to_string(v(0)) + "," + to_string(v(1)) + ")";
}

std::string sequence_text(const std::vector<Vec2>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += " ";
    out += vec2_text(seq[i]);
  }
  return out;
}

nlohmann::json int_json(const Int& v) {
  static const Int lo = Int(std::numeric_limits<std::int64_t>::min());
  static const Int hi = Int(std::numeric_limits<std::int64_t>::max());
  if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
  return to_string(v);
}

nlohmann::json ints_json(const std::vector<Int>& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& x : v) arr.push_back(int_json(x));
  return arr;
}

nlohmann::json vec2_json(const Vec2& v) {
  return nlohmann::json::array({int_json(v(0)), int_json(v(1))});
}

nlohmann::json sequence_json(const std::vector<Vec2>& seq) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : seq) arr.push_back(vec2_json(v));
  return arr;
}

nlohmann::json matrix_json(const IMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json word_json(const Word& w) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : w) arr.push_back(nlohmann::json::array({s.gen, int_json(s.exp)}));
  return arr;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

Int parse_integer(const std::string& text, const std::string& what) {
  Rat r = parse_rational(trim(text));
  if (denominator(r) != 1)
    throw std::invalid_argument(what + " must be an integer, got '" + text + "'");
  return numerator(r);
}

Vec2 parse_vec2_arg(const std::string& text, const std::string& what) {
  std::size_t comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
    throw std::invalid_argument(what + " must be of the form 'x,y', got '" + text + "'");
  Vec2 v;
  v << parse_integer(text.substr(0, comma), what), parse_integer(text.substr(comma + 1), what);
  return v;
}

// --- resolve ---------------------------------------------------------

std::string graph_text(const DualGraph& g) {
  std::string out = "vertices:\n";
  for (const auto& [id, v] : g.vertices) {
    out += "  " + id;
    if (v.kind == VertexKind::exceptional)
      out += " exceptional " + to_string(*v.self_intersection);
    else
      out += " strict transform";
    out += "\n";
  }
  out += "edges:\n";
  for (const auto& e : g.edges) out += "  " + e.first + " - " + e.second + "\n";
  return out;
}

std::string cmd_resolve(const RunConfig& cfg) {
  DualGraph g = load_graph(cfg);
  if (cfg.format == "json") return graph_to_json(g);
  if (cfg.format == "dot") return graph_to_dot(g);
  return graph_text(g);
}

// --- classify / jsj ---------------------------------------------------

std::string cmd_classify(const RunConfig& cfg) {
  Classification cls = classify(load_graph(cfg));
  if (cfg.format == "json") {
    nlohmann::json j;
    j["rupture"] = cls.rupture;
    j["chains"] = nlohmann::json::array();
    for (const auto& c : cls.chains)
      j["chains"].push_back({{"id", c.id},
                             {"ends", nlohmann::json::array({c.ends[0], c.ends[1]})},
                             {"interior", c.interior}});
    j["dead_branches"] = nlohmann::json::array();
    for (const auto& d : cls.dead_branches)
      j["dead_branches"].push_back({{"id", d.id}, {"attach", d.attach}, {"tail", d.tail}});
    j["strict_pairs"] = nlohmann::json::array();
    for (const auto& sp : cls.strict_pairs)
      j["strict_pairs"].push_back({{"strict", sp.strict_id},
                                   {"attach", sp.attach},
                                   {"attach_is_rupture", sp.attach_is_rupture}});
    j["residual"] = cls.residual;
    j["flags"] = cls.flags;
    return j.dump(2) + "\n";
  }
  std::string out = "rupture: " + or_none(cls.rupture) + "\n";
  for (const auto& c : cls.chains)
    out += "chain " + c.id + ": " + c.ends[0] + " - " + c.ends[1] + ", interior " +
           or_none(c.interior) + "\n";
  for (const auto& d : cls.dead_branches)
    out += "dead branch " + d.id + ": attached at " + d.attach + ", tail " + join(d.tail) + "\n";
  for (const auto& sp : cls.strict_pairs)
    out += "strict " + sp.strict_id + ": attached at " + sp.attach +
           (sp.attach_is_rupture ? " (rupture)" : "") + "\n";
  if (!cls.residual.empty()) out += "residual: " + join(cls.residual) + "\n";
  for (const auto& f : cls.flags) out += "note: " + f + "\n";
  return out;
}

std::string cmd_jsj(const RunConfig& cfg) {
  JsjGraph j = jsj_graph(load_graph(cfg));
  if (cfg.format == "json") {
    nlohmann::json doc;
    doc["vertices"] = j.vertices;
    doc["edges"] = nlohmann::json::array();
    for (std::size_t i = 0; i < j.edges.size(); ++i)
      doc["edges"].push_back(
          {{"chain", j.edge_chain_ids[i]},
           {"ends", nlohmann::json::array({j.edges[i].first, j.edges[i].second})}});
    return doc.dump(2) + "\n";
  }
  std::string out = "vertices: " + or_none(j.vertices) + "\n";
  for (std::size_t i = 0; i < j.edges.size(); ++i)
    out += "edge " + j.edge_chain_ids[i] + ": " + j.edges[i].first + " - " +
           j.edges[i].second + "\n";
  return out;
}

// --- matrix / mult -----------------------------------------------------

std::string matrix_rows_text(const IMat& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += " ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) out += " " + to_string(m(i, j));
    out += "\n";
  }
  return out;
}

std::string cmd_matrix(const RunConfig& cfg) {
  IntersectionMatrix im = intersection_matrix(load_graph(cfg));
  if (cfg.format == "json") {
    nlohmann::json j;
    j["exceptional"] = im.exceptional;
    j["stricts"] = im.stricts;
    j["ee"] = matrix_json(im.ee);
    j["es"] = matrix_json(im.es);
    return j.dump(2) + "\n";
  }
  std::string out = "exceptional: " + or_none(im.exceptional) + "\n";
  out += "ee:\n" + matrix_rows_text(im.ee);
  out += "stricts: " + or_none(im.stricts) + "\n";
  out += "es:\n" + matrix_rows_text(im.es);
  return out;
}

std::string cmd_mult(const RunConfig& cfg) {
  MultiplicityVector mv = multiplicity_vector(load_graph(cfg));
  IVec total = mv.total();
  if (cfg.format == "json") {
    nlohmann::json j;
    j["exceptional"] = mv.exceptional;
    j["stricts"] = mv.stricts;
    j["nu"] = matrix_json(mv.nu);
    nlohmann::json tot = nlohmann::json::array();
    for (Eigen::Index i = 0; i < total.rows(); ++i) tot.push_back(int_json(total(i)));
    j["total"] = std::move(tot);
    return j.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < mv.exceptional.size(); ++i) {
    if (i) out += " ";
    out += mv.exceptional[i] + ":" + to_string(total(static_cast<Eigen::Index>(i)));
  }
  return out + "\n";
}

// --- pi1 / h1 -----------------------------------------------------------

std::string cmd_pi1(const RunConfig& cfg) {
  DualGraph g = load_graph(cfg);
  Presentation p = fundamental_group_presentation(g);
  auto pairs = peripheral_subgroups(p, g);
  if (cfg.format == "json") {
    nlohmann::json j = nlohmann::json::parse(presentation_to_json(p));
    j["peripheral"] = nlohmann::json::array();
    for (const auto& pp : pairs)
      j["peripheral"].push_back({{"strict", pp.strict_id},
                                 {"meridian", word_json(pp.meridian)},
                                 {"fiber", word_json(pp.fiber)}});
    return j.dump(2) + "\n";
  }
  std::string out = presentation_to_text(p);
  out += "peripheral pairs:\n";
  for (const auto& pp : pairs)
    out += "  " + pp.strict_id + ": meridian " + word_to_text(pp.meridian, p.aliases) +
           ", fiber " + word_to_text(pp.fiber, p.aliases) + "\n";
  return out;
}

std::string cmd_h1(const RunConfig& cfg) {
  H1Summary h = abelianization(fundamental_group_presentation(load_graph(cfg)));
  if (cfg.format == "json") {
    nlohmann::json j;
    j["free_rank"] = int_json(h.free_rank);
    j["torsion"] = ints_json(h.torsion);
    j["exceptional"] = h.exceptional_ids;
    j["stricts"] = h.strict_ids;
    j["expression"] = matrix_json(h.expression);
    return j.dump(2) + "\n";
  }
  std::string out = "free rank: " + to_string(h.free_rank) + "\n";
  out += "torsion: " + (h.torsion.empty() ? "none" : ints_text(h.torsion)) + "\n";
  out += "classes over the branch basis (" + or_none(h.strict_ids) + "):\n";
  for (std::size_t i = 0; i < h.exceptional_ids.size(); ++i) {
    out += "  " + h.exceptional_ids[i] + ":";
    for (Eigen::Index k = 0; k < h.expression.cols(); ++k)
      out += " " + to_string(h.expression(static_cast<Eigen::Index>(i), k));
    out += "\n";
  }
  return out;
}

// --- meridians / hj / seifert -------------------------------------------

std::string cmd_meridians(const RunConfig& cfg) {
  DualGraph g = load_graph(cfg);
  Classification cls = classify(g);
  nlohmann::json j;
  std::string out;
  j["chains"] = nlohmann::json::array();
  for (const auto& c : cls.chains) {
    std::vector<Int> w = chain_weights(g, c);
    try {
      ChainMeridians cm = chain_meridians(w);
      ChainCoefficients cc = chain_coefficients(w);
      if (cfg.format == "json") {
        j["chains"].push_back({{"id", c.id},
                               {"ends", nlohmann::json::array({c.ends[0], c.ends[1]})},
                               {"weights", ints_json(w)},
                               {"meridians", sequence_json(cm.c)},
                               {"a", int_json(cc.a)},
                               {"b", int_json(cc.b)}});
      } else {
        out += "chain " + c.id + ": " + c.ends[0] + " - " + c.ends[1] + ", weights " +
               ints_text(w) + "\n";
        out += "  meridians: " + sequence_text(cm.c) + "\n";
        out += "  coefficients: a = " + to_string(cc.a) + ", b = " + to_string(cc.b) + "\n";
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("chain " + c.id + ": " + e.what());
    }
  }
  j["dead_branches"] = nlohmann::json::array();
  for (const auto& d : cls.dead_branches) {
    std::vector<Int> w = dead_branch_weights(g, d);
    try {
      DeadBranchMeridian m = dead_branch_meridian(w);
      if (cfg.format == "json") {
        j["dead_branches"].push_back({{"id", d.id},
                                      {"attach", d.attach},
                                      {"weights", ints_json(w)},
                                      {"meridians", sequence_json(m.sequence)},
                                      {"meridian", vec2_json(m.meridian)},
                                      {"a", int_json(m.coefficients.a)},
                                      {"b", int_json(m.coefficients.b)}});
      } else {
        out += "dead branch " + d.id + ": attached at " + d.attach + ", weights " +
               ints_text(w) + "\n";
        out += "  meridians: " + sequence_text(m.sequence) + "\n";
        out += "  end meridian: " + vec2_text(m.meridian) + "\n";
        out += "  coefficients: a = " + to_string(m.coefficients.a) + ", b = " +
               to_string(m.coefficients.b) + "\n";
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("dead branch " + d.id + ": " + e.what());
    }
  }
  if (cfg.format == "json") return j.dump(2) + "\n";
  if (out.empty()) out = "no chains or dead branches\n";
  return out;
}

std::string cmd_hj(const RunConfig& cfg, const std::string& from, const std::string& to) {
  Vec2 a = parse_vec2_arg(from, "--from");
  Vec2 b = parse_vec2_arg(to, "--to");
  std::vector<Vec2> chain = hj_chain(a, b);
  if (cfg.format == "json") {
    nlohmann::json j;
    j["from"] = vec2_json(a);
    j["to"] = vec2_json(b);
    j["chain"] = sequence_json(chain);
    return j.dump(2) + "\n";
  }
  return sequence_text(chain) + "\n";
}

std::string cmd_seifert(const RunConfig& cfg) {
  auto blocks = seifert_blocks(load_graph(cfg));
  if (cfg.format == "json") {
    nlohmann::json j;
    j["blocks"] = nlohmann::json::array();
    for (const auto& blk : blocks) {
      nlohmann::json fibers = nlohmann::json::array();
      for (const auto& f : blk.fibers)
        fibers.push_back(
            {{"dead_branch", f.dead_branch_id}, {"a", int_json(f.a)}, {"b", int_json(f.b)}});
      j["blocks"].push_back({{"vertex", blk.vertex},
                             {"boundaries", blk.boundary_count},
                             {"fibers", std::move(fibers)}});
    }
    return j.dump(2) + "\n";
  }
  if (blocks.empty()) return "no rupture vertices\n";
  std::string out;
  for (const auto& blk : blocks) {
    out += "block " + blk.vertex + ": boundaries " + std::to_string(blk.boundary_count) + "\n";
    for (const auto& f : blk.fibers)
      out += "  fiber " + f.dead_branch_id + ": (" + to_string(f.a) + "," + to_string(f.b) + ")\n";
  }
  return out;
}

// --- mcg / twist / autos --------------------------------------------------

std::string cmd_mcg(const RunConfig& cfg) {
  GeneratorCatalogue cat = generator_catalogue(load_graph(cfg));
  if (cfg.format == "json") {
    nlohmann::json j;
    j["artin_blocks"] = nlohmann::json::array();
    for (const auto& blk : cat.artin_blocks)
      j["artin_blocks"].push_back({{"rupture", blk.rupture_id},
                                   {"valence", blk.valence},
                                   {"strands", blk.strands},
                                   {"generator_count", blk.generator_count},
                                   {"trivial_mod_center", blk.trivial_mod_center},
                                   {"labels", blk.generator_labels}});
    j["twist_families"] = nlohmann::json::array();
    for (const auto& tf : cat.twist_families)
      j["twist_families"].push_back(
          {{"chain", tf.chain_id}, {"cut", nlohmann::json::array({tf.cut[0], tf.cut[1]})}});
    return j.dump(2) + "\n";
  }
  if (cat.artin_blocks.empty() && cat.twist_families.empty()) return "empty catalogue\n";
  std::string out;
  for (const auto& blk : cat.artin_blocks) {
    out += "Artin block " + blk.rupture_id + ": valence " + std::to_string(blk.valence) +
           ", strands " + std::to_string(blk.strands) + ", generators " +
           std::to_string(blk.generator_count) + ", trivial mod center: " +
           (blk.trivial_mod_center ? "yes" : "no") + "\n";
    if (!blk.generator_labels.empty()) out += "  labels: " + join(blk.generator_labels) + "\n";
  }
  for (const auto& tf : cat.twist_families)
    out += "twist family " + tf.chain_id + ": cut (" + tf.cut[0] + "," + tf.cut[1] + ")\n";
  return out;
}

std::string cmd_twist(const RunConfig& cfg, const std::string& chain_id, long long p_exp,
                      long long q_exp, bool compare_inner) {
  DualGraph g = load_graph(cfg);
  Presentation pres = fundamental_group_presentation(g);
  GeneratorCatalogue cat = generator_catalogue(g);
  const TwistFamily* fam = nullptr;
  if (chain_id.empty()) {
    if (cat.twist_families.size() == 1) {
      fam = &cat.twist_families[0];
    } else if (cat.twist_families.empty()) {
      throw std::invalid_argument("the graph has no chains, so no twist family exists");
    } else {
      std::vector<std::string> ids;
      for (const auto& tf : cat.twist_families) ids.push_back(tf.chain_id);
      throw std::invalid_argument("several chains exist; pass --chain (one of: " + join(ids) +
                                  ")");
    }
  } else {
    for (const auto& tf : cat.twist_families)
      if (tf.chain_id == chain_id) fam = &tf;
    if (fam == nullptr) {
      std::vector<std::string> ids;
      for (const auto& tf : cat.twist_families) ids.push_back(tf.chain_id);
      throw std::invalid_argument("unknown chain '" + chain_id +
                                  "' (available: " + or_none(ids) + ")");
    }
  }
  TwistParam t{fam->chain_id, fam->cut, Int(p_exp), Int(q_exp)};
  EndoMap endo = dehn_twist_endo(g, pres, t);

  Word conjugator = free_reduce({{fam->cut[0], Int(p_exp)}, {fam->cut[1], Int(q_exp)}});
  EndoMap inner;
  EndoComparison cmp;
  if (compare_inner) {
    inner = inner_automorphism(pres, conjugator);
    cmp = compare_endos(endo, inner, pres, abelianization(pres));
  }

  if (cfg.format == "json") {
    nlohmann::json j;
    j["chain"] = fam->chain_id;
    j["cut"] = nlohmann::json::array({fam->cut[0], fam->cut[1]});
    j["p"] = int_json(t.p);
    j["q"] = int_json(t.q);
    nlohmann::json images;
    for (const auto& gen : pres.generators) images[gen] = word_json(endo.images.at(gen));
    j["images"] = std::move(images);
    if (compare_inner) {
      nlohmann::json per;
      for (const auto& [gen, verdict] : cmp.per_generator) per[gen] = to_string(verdict);
      j["comparison"] = {{"conjugator", word_json(conjugator)},
                         {"per_generator", std::move(per)},
                         {"all_syntactic", cmp.all_syntactic()}};
    }
    return j.dump(2) + "\n";
  }
  std::string out = "twist " + fam->chain_id + ": cut (" + fam->cut[0] + "," + fam->cut[1] +
                    "), p = " + to_string(t.p) + ", q = " + to_string(t.q) + "\n";
  out += "images:\n";
  for (const auto& gen : pres.generators)
    out += "  " + gen + " -> " + word_to_text(endo.images.at(gen)) + "\n";
  if (compare_inner) {
    out += "comparison with conjugation by " + word_to_text(conjugator) + ":\n";
    for (const auto& [gen, verdict] : cmp.per_generator)
      out += "  " + gen + ": " + to_string(verdict) + "\n";
    out += "all syntactic: " + std::string(cmp.all_syntactic() ? "yes" : "no") + "\n";
  }
  return out;
}

std::string cmd_autos(const RunConfig& cfg) {
  DualGraph g = load_graph(cfg);
  auto autos = tree_automorphisms(g);
  BranchPermutationReport rep = branch_permutation_map(g);
  if (cfg.format == "json") {
    nlohmann::json j;
    j["automorphisms"] = nlohmann::json::array();
    for (const auto& a : autos) j["automorphisms"].push_back(a.map);
    j["branch_permutations"] = nlohmann::json::array();
    for (const auto& perm : rep.permutations) j["branch_permutations"].push_back(perm);
    j["injective"] = rep.injective;
    return j.dump(2) + "\n";
  }
  std::string out = "automorphisms: " + std::to_string(autos.size()) + "\n";
  for (std::size_t i = 0; i < autos.size(); ++i) {
    std::vector<std::string> moved;
    for (const auto& [from, to] : autos[i].map)
      if (from != to) moved.push_back(from + "->" + to);
    out += "auto " + std::to_string(i) + ": " + (moved.empty() ? "identity" : join(moved)) + "\n";
  }
  for (std::size_t i = 0; i < rep.permutations.size(); ++i) {
    std::vector<std::string> parts;
    for (const auto& [from, to] : rep.permutations[i]) parts.push_back(from + "->" + to);
    out += "branch action " + std::to_string(i) + ": " + or_none(parts) + "\n";
  }
  out += "injective: " + std::string(rep.injective ? "yes" : "no") + "\n";
  return out;
}

// --- verify-example ---------------------------------------------------

int cmd_verify_example(const RunConfig& cfg, std::ostream& out) {
  ExampleVerification v = verify_example();
  std::size_t total = 0;
  std::size_t failed = 0;
  std::istringstream lines(v.report);
  std::string line;
  nlohmann::json checks = nlohmann::json::array();
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++total;
    bool pass = line.rfind("PASS ", 0) == 0;
    if (!pass) ++failed;
    checks.push_back({{"pass", pass}, {"label", line.substr(5)}});
  }
  std::string payload;
  if (cfg.format == "json") {
    nlohmann::json j;
    j["ok"] = v.ok;
    j["checks"] = std::move(checks);
    payload = j.dump(2) + "\n";
  } else {
    payload = v.report;
    payload += v.ok ? "all " + std::to_string(total) + " checks passed\n"
                    : std::to_string(failed) + " of " + std::to_string(total) +
                          " checks failed\n";
  }
  write_output(cfg, out, payload);
  return v.ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string hj_from, hj_to;
  std::string twist_chain;
  long long twist_p = 0, twist_q = 0;
  bool compare_inner = false;

  ::CLI::App app{"invariants of plane curve singularities via resolution dual trees"};
  app.name("curvetop");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("-i,--input", cfg.input, "input file, JSON ('-' for stdin)")
      ->capture_default_str();
  app.add_option("-o,--output", cfg.output, "output file ('-' for stdout)")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "output format: text, json, or dot")
      ->check(::CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed,
                 "seed reserved for randomized runs; current subcommands are deterministic");

  auto add = [&](const std::string& name, const std::string& desc) {
    ::CLI::App* sub = app.add_subcommand(name, desc);
    sub->callback([&cfg, name] { cfg.subcommand = name; });
    return sub;
  };
  add("resolve", "resolve branches into the weighted dual tree (branch or graph JSON)");
  add("classify", "rupture vertices, chains, dead branches, strict attachments");
  add("jsj", "quotient graph: rupture vertices joined by chains");
  add("matrix", "intersection matrices of the divisor");
  add("mult", "multiplicities of the exceptional components");
  add("pi1", "fundamental group presentation of the boundary manifold");
  add("h1", "first homology: rank, torsion, meridian classes");
  add("meridians", "meridian recurrences and coefficients per chain and dead branch");
  ::CLI::App* hj = add("hj", "continued-fraction chain between two primitive lattice vectors");
  hj->add_option("--from", hj_from, "start vector 'x,y'")->required();
  hj->add_option("--to", hj_to, "end vector 'x,y'")->required();
  add("seifert", "Seifert block data at every rupture vertex");
  add("mcg", "mapping-class generator catalogue: Artin blocks and twist families");
  ::CLI::App* tw = add("twist", "Dehn twist endomorphism along a chain");
  tw->add_option("--chain", twist_chain, "chain id (defaults to the unique chain)");
  tw->add_option("-p", twist_p, "exponent of the first cut meridian")->required();
  tw->add_option("-q", twist_q, "exponent of the second cut meridian")->required();
  tw->add_flag("--compare-inner", compare_inner,
               "compare against conjugation by the same word");
  add("autos", "weighted-tree automorphisms and their action on branches");
  add("verify-example", "run the built-in reference-curve battery");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const ::CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const ::CLI::CallForAllHelp&) {
    out << app.help("", ::CLI::AppFormatMode::All);
    return 0;
  } catch (const ::CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  if (cfg.format == "dot" && cfg.subcommand != "resolve") {
    err << "error: --format dot is only available for 'resolve'\n";
    return 2;
  }

  try {
    if (cfg.subcommand == "verify-example") return cmd_verify_example(cfg, out);
    std::string payload;
    if (cfg.subcommand == "resolve") payload = cmd_resolve(cfg);
    else if (cfg.subcommand == "classify") payload = cmd_classify(cfg);
    else if (cfg.subcommand == "jsj") payload = cmd_jsj(cfg);
    else if (cfg.subcommand == "matrix") payload = cmd_matrix(cfg);
    else if (cfg.subcommand == "mult") payload = cmd_mult(cfg);
    else if (cfg.subcommand == "pi1") payload = cmd_pi1(cfg);
    else if (cfg.subcommand == "h1") payload = cmd_h1(cfg);
    else if (cfg.subcommand == "meridians") payload = cmd_meridians(cfg);
    else if (cfg.subcommand == "hj") payload = cmd_hj(cfg, hj_from, hj_to);
    else if (cfg.subcommand == "seifert") payload = cmd_seifert(cfg);
    else if (cfg.subcommand == "mcg") payload = cmd_mcg(cfg);
    else if (cfg.subcommand == "twist")
      payload = cmd_twist(cfg, twist_chain, twist_p, twist_q, compare_inner);
    else if (cfg.subcommand == "autos") payload = cmd_autos(cfg);
    else {
      err << "error: no subcommand selected\n";
      return 2;
    }
    write_output(cfg, out, payload);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace curvetop::cli
