#include "curvetop/fixtures.hpp"

#include "curvetop/graph.hpp"
#include "curvetop/lattice.hpp"
#include "curvetop/mcg.hpp"
#include "curvetop/meridian.hpp"
#include "curvetop/presentation.hpp"
#include "curvetop/resolution.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvetop {

DualGraph example_curve_graph() {
  DualGraph g;
  g.add_exceptional("E1", Int(-3));
  g.add_exceptional("E2", Int(-2));
  g.add_exceptional("E3", Int(-3));
  g.add_exceptional("E4", Int(-2));
  g.add_exceptional("E5", Int(-1));
  g.add_strict("S");
  g.add_edge("E1", "E3");
  g.add_edge("E2", "E3");
  g.add_edge("E3", "E5");
  g.add_edge("E4", "E5");
  g.add_edge("E5", "S");
  return g;
}

std::map<std::string, std::string> example_curve_aliases() {
  return {{"E1", "a1"}, {"E2", "b1"}, {"E3", "c1"},
          {"E4", "b2"}, {"E5", "c2"}, {"S", "d"}};
}

namespace {

struct Battery {
  bool ok = true;
  std::string report;

  void check(bool cond, const std::string& label, const std::string& detail = "") {
    report += cond ? "PASS " : "FAIL ";
    report += label;
    if (!cond && !detail.empty()) report += " (" + detail + ")";
    report += "\n";
    if (!cond) ok = false;
  }
};

bool vec2_eq(const Vec2& a, const Vec2& b) { return a(0) == b(0) && a(1) == b(1); }

bool seq_eq(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!vec2_eq(a[i], b[i])) return false;
  return true;
}

std::string ints_to_text(const IVec& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    if (i) out += ", ";
    out += to_string(v(i));
  }
  return out + ")";
}

bool word_is_single(const Word& w, const std::string& gen) {
  return w.size() == 1 && w[0].gen == gen && w[0].exp == 1;
}

void run_battery(Battery& b) {
  const DualGraph g = example_curve_graph();
  const auto al = example_curve_aliases();

  // --- structure -------------------------------------------------------
  ValidationReport vr = validate(g);
  b.check(vr.ok(), "graph validates",
          vr.violations.empty() ? "" : vr.violations.front());
  b.check(vr.minimal, "graph is minimal");

  // --- independent reconstruction by the blow-up engine ----------------
  {
    auto specs = parse_branches(
        R"({"branches":[{"name":"S","series":[)"
        R"({"coeff":"1","exponent":"3/2"},{"coeff":"1","exponent":"7/4"}]}]})");
    DualGraph resolved = resolve(specs);
    b.check(resolved == g, "blow-up of y = x^(3/2) + x^(7/4) reproduces the graph",
            graph_to_json(resolved));
  }

  // --- intersection lattice --------------------------------------------
  IntersectionMatrix im = intersection_matrix(g);
  Int det = determinant(im.ee);
  b.check(det == -1, "intersection determinant is -1", "got " + to_string(det));
  b.check(is_negative_definite(im.ee), "intersection matrix is negative definite");

  MultiplicityVector mv = multiplicity_vector(g);
  IVec total = mv.total();
  IVec expected_nu(5);
  expected_nu << Int(4), Int(6), Int(12), Int(13), Int(26);
  bool nu_ok = total.rows() == 5;
  for (Eigen::Index i = 0; nu_ok && i < 5; ++i) nu_ok = total(i) == expected_nu(i);
  b.check(nu_ok, "multiplicities are (4, 6, 12, 13, 26)", "got " + ints_to_text(total));

  // --- rupture/chain/dead-branch decomposition -------------------------
  Classification cls = classify(g);
  b.check(cls.rupture == std::vector<std::string>{"E3", "E5"},
          "rupture vertices are E3 and E5");
  b.check(cls.chains.size() == 1 && cls.chains[0].id == "C0" &&
              cls.chains[0].ends == std::array<std::string, 2>{"E3", "E5"} &&
              cls.chains[0].interior.empty(),
          "chain C0 joins E3 to E5 directly");
  bool deads_ok = cls.dead_branches.size() == 3;
  if (deads_ok) {
    const auto& d = cls.dead_branches;
    deads_ok = d[0].id == "M0" && d[0].attach == "E3" && d[0].tail == std::vector<std::string>{"E1"} &&
               d[1].id == "M1" && d[1].attach == "E3" && d[1].tail == std::vector<std::string>{"E2"} &&
               d[2].id == "M2" && d[2].attach == "E5" && d[2].tail == std::vector<std::string>{"E4"};
  }
  b.check(deads_ok, "dead branches are E1, E2 at E3 and E4 at E5");
  b.check(cls.strict_pairs.size() == 1 && cls.strict_pairs[0].strict_id == "S" &&
              cls.strict_pairs[0].attach == "E5" && cls.strict_pairs[0].attach_is_rupture,
          "the branch attaches to rupture vertex E5");
  b.check(cls.residual.empty(), "no residual vertices");

  JsjGraph jsj = jsj_graph(cls);
  b.check(jsj.vertices == std::vector<std::string>{"E3", "E5"} &&
              jsj.edges == std::vector<std::pair<std::string, std::string>>{{"E3", "E5"}},
          "quotient graph is a single edge E3 - E5");

  // --- serialization round-trip ----------------------------------------
  b.check(graph_from_json(graph_to_json(g)) == g,
          "serialization round-trip preserves the graph");

  // --- fundamental group presentation -----------------------------------
  Presentation p = fundamental_group_presentation(g);
  p.aliases = al;
  const std::vector<std::string> expected_relators = {
      "c1 a1^-3",
      "c1 b1^-2",
      "a1 b1 c2 c1^-3",
      "c2 b2^-2",
      "c1 b2 d c2^-1",
      "a1 c1 a1^-1 c1^-1",
      "b1 c1 b1^-1 c1^-1",
      "c1 c2 c1^-1 c2^-1",
      "b2 c2 b2^-1 c2^-1",
      "c2 d c2^-1 d^-1",
  };
  bool rel_ok = p.relators.size() == expected_relators.size();
  std::string rel_detail;
  for (std::size_t i = 0; rel_ok && i < expected_relators.size(); ++i) {
    std::string got = word_to_text(p.relators[i], al);
    if (got != expected_relators[i]) {
      rel_ok = false;
      rel_detail = "relator " + std::to_string(i) + ": expected '" +
                   expected_relators[i] + "', got '" + got + "'";
    }
  }
  if (p.relators.size() != expected_relators.size())
    rel_detail = "expected 10 relators, got " + std::to_string(p.relators.size());
  b.check(rel_ok, "the ten relators match the reference presentation", rel_detail);

  auto peripheral = peripheral_subgroups(p, g);
  b.check(peripheral.size() == 1 && peripheral[0].strict_id == "S" &&
              word_to_text(peripheral[0].meridian, al) == "d" &&
              word_to_text(peripheral[0].fiber, al) == "c2",
          "peripheral pair of the branch is (d, c2)");

  // --- abelianization ---------------------------------------------------
  H1Summary h1 = abelianization(p);
  b.check(h1.free_rank == 1 && h1.torsion.empty(),
          "first homology is free of rank one");
  bool expr_ok = h1.expression.rows() == 5 && h1.expression.cols() == 1;
  for (Eigen::Index i = 0; expr_ok && i < 5; ++i)
    expr_ok = h1.expression(i, 0) == expected_nu(i);
  b.check(expr_ok, "meridian classes equal the multiplicities in homology");
  b.check(check_relations_abelian(p, h1), "relators abelianize to zero");

  // --- meridian calculus on the dead branches and the chain -------------
  {
    DeadBranchMeridian m1 = dead_branch_meridian(dead_branch_weights(g, cls.dead_branch("M0")));
    Vec2 want1;
    want1 << Int(-1), Int(3);
    b.check(vec2_eq(m1.meridian, want1) && m1.coefficients.a == 3 && m1.coefficients.b == -1,
            "dead branch M0 (weight -3) has meridian (-1, 3) with coefficients (3, -1)");
    DeadBranchMeridian m2 = dead_branch_meridian(dead_branch_weights(g, cls.dead_branch("M1")));
    DeadBranchMeridian m3 = dead_branch_meridian(dead_branch_weights(g, cls.dead_branch("M2")));
    Vec2 want2;
    want2 << Int(-1), Int(2);
    b.check(vec2_eq(m2.meridian, want2) && m2.coefficients.a == 2 && m2.coefficients.b == -1 &&
                vec2_eq(m3.meridian, want2) && m3.coefficients.a == 2 && m3.coefficients.b == -1,
            "dead branches M1, M2 (weight -2) have meridian (-1, 2) with coefficients (2, -1)");

    Vec2 c0;
    c0 << Int(1), Int(0);
    bool hj_ok = seq_eq(hj_chain(c0, m1.meridian), m1.sequence) &&
                 seq_eq(hj_chain(c0, m2.meridian), m2.sequence) &&
                 seq_eq(hj_chain(c0, m3.meridian), m3.sequence);
    b.check(hj_ok, "recurrence sequences agree with the continued-fraction chains");

    auto bf1 = brute_force_chain(c0, m1.meridian, Int(4));
    auto bf2 = brute_force_chain(c0, m2.meridian, Int(4));
    b.check(bf1.status == BruteForceChain::Status::unique && seq_eq(bf1.found[0], m1.sequence) &&
                bf2.status == BruteForceChain::Status::unique && seq_eq(bf2.found[0], m2.sequence),
            "exhaustive bounded search confirms the chains");

    ChainCoefficients cc = chain_coefficients(chain_weights(g, cls.chain("C0")));
    b.check(cc.a == 1 && cc.b == 0, "the empty chain C0 has coefficients (1, 0)");
  }

  // --- Seifert blocks ----------------------------------------------------
  {
    auto blocks = seifert_blocks(g);
    bool e3_ok = blocks.size() == 2 && blocks[0].vertex == "E3" &&
                 blocks[0].boundary_count == 1 && blocks[0].fibers.size() == 2 &&
                 blocks[0].fibers[0].dead_branch_id == "M0" && blocks[0].fibers[0].a == 3 &&
                 blocks[0].fibers[0].b == -1 && blocks[0].fibers[1].dead_branch_id == "M1" &&
                 blocks[0].fibers[1].a == 2 && blocks[0].fibers[1].b == -1;
    b.check(e3_ok, "block at E3 has one boundary and fibers (3, -1), (2, -1)");
    bool e5_ok = blocks.size() == 2 && blocks[1].vertex == "E5" &&
                 blocks[1].boundary_count == 2 && blocks[1].fibers.size() == 1 &&
                 blocks[1].fibers[0].dead_branch_id == "M2" && blocks[1].fibers[0].a == 2 &&
                 blocks[1].fibers[0].b == -1;
    b.check(e5_ok, "block at E5 has two boundaries and fiber (2, -1)");
  }

  // --- mapping-class generator catalogue ---------------------------------
  GeneratorCatalogue cat = generator_catalogue(g);
  bool artin_ok = cat.artin_blocks.size() == 2;
  for (const auto& blk : cat.artin_blocks)
    artin_ok = artin_ok && blk.valence == 3 && blk.strands == 2 && blk.generator_count == 1 &&
               blk.trivial_mod_center &&
               blk.generator_labels == std::vector<std::string>{"A_1_2"};
  b.check(artin_ok && cat.artin_blocks[0].rupture_id == "E3" &&
              cat.artin_blocks[1].rupture_id == "E5",
          "Artin blocks at E3 and E5 are two-strand and trivial mod center");
  b.check(cat.twist_families.size() == 1 && cat.twist_families[0].chain_id == "C0" &&
              cat.twist_families[0].cut == std::array<std::string, 2>{"E3", "E5"},
          "one twist family, cut at the edge (E3, E5)");

  // --- Dehn twist versus inner automorphism ------------------------------
  {
    TwistParam t{"C0", {"E3", "E5"}, Int(2), Int(3)};
    EndoMap twist = dehn_twist_endo(g, p, t);
    Word w{{"E3", Int(2)}, {"E5", Int(3)}};
    EndoMap inner = inner_automorphism(p, w);
    EndoComparison cmp = compare_endos(twist, inner, p, abelianization(p));
    auto verdict = [&](const std::string& gen) { return cmp.per_generator.at(gen); };
    b.check(verdict("E3") == CompareVerdict::equal_syntactic &&
                verdict("E4") == CompareVerdict::equal_syntactic &&
                verdict("E5") == CompareVerdict::equal_syntactic &&
                verdict("S") == CompareVerdict::equal_syntactic,
            "twist and inner automorphism agree syntactically across the cut");
    b.check(verdict("E1") == CompareVerdict::equal_abelianized &&
                verdict("E2") == CompareVerdict::equal_abelianized && !cmp.all_syntactic(),
            "twist and inner automorphism differ before abelianizing at E1, E2");

    TwistParam t_inv{"C0", {"E3", "E5"}, Int(-2), Int(-3)};
    EndoMap round_trip = compose(twist, dehn_twist_endo(g, p, t_inv));
    bool identity_ok = true;
    for (const auto& gen : p.generators)
      identity_ok = identity_ok && word_is_single(round_trip.images.at(gen), gen);
    b.check(identity_ok, "twist composed with its inverse is the identity");
  }

  // --- automorphism action on branches -----------------------------------
  BranchPermutationReport perms = branch_permutation_map(g);
  b.check(perms.permutations.size() == 1 && perms.injective,
          "the weighted tree has no nontrivial automorphisms");
}

}  // namespace

ExampleVerification verify_example() {
  ExampleVerification out;
  Battery b;
  try {
    run_battery(b);
  } catch (const std::exception& ex) {
    b.check(false, "battery aborted by exception", ex.what());
  }
  out.ok = b.ok;
  out.report = b.report;
  return out;
}

}  // namespace curvetop
