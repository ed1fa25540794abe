#include <doctest.h>

#include "curvetop/fixtures.hpp"
#include "curvetop/graph.hpp"
#include "curvetop/lattice.hpp"
#include "curvetop/resolution.hpp"

#include <stdexcept>
#include <string>
#include <vector>

using namespace curvetop;

namespace {

BranchSpec series_branch(const std::string& name,
                         const std::vector<std::pair<std::string, std::string>>& terms) {
  BranchSpec b;
  b.name = name;
  for (const auto& [c, e] : terms) b.series.push_back({parse_rational(c), parse_rational(e)});
  return b;
}

BranchSpec axis_branch(const std::string& name, char axis) {
  BranchSpec b;
  b.name = name;
  b.axis = axis;
  return b;
}

bool same_graph(const DualGraph& a, const DualGraph& b) { return a == b; }

std::vector<Int> totals(const DualGraph& g) {
  IVec t = multiplicity_vector(g).total();
  std::vector<Int> out;
  for (Eigen::Index i = 0; i < t.rows(); ++i) out.push_back(t(i));
  return out;
}

}  // namespace

TEST_SUITE("resolution") {

TEST_CASE("smooth branch: a single blow-up") {
  DualGraph g = resolve({series_branch("S", {{"1", "2"}})});
  DualGraph expected;
  expected.add_exceptional("E1", Int(-1));
  expected.add_strict("S");
  expected.add_edge("E1", "S");
  CHECK(same_graph(g, expected));
  CHECK(totals(g) == std::vector<Int>{Int(1)});
  ValidationReport v = validate(g);
  CHECK(v.ok());
  CHECK(v.minimal);
}

TEST_CASE("ordinary cusp y = x^(3/2)") {
  DualGraph g = resolve({series_branch("S", {{"1", "3/2"}})});
  DualGraph expected;
  expected.add_exceptional("E1", Int(-3));
  expected.add_exceptional("E2", Int(-2));
  expected.add_exceptional("E3", Int(-1));
  expected.add_strict("S");
  expected.add_edge("E1", "E3");
  expected.add_edge("E2", "E3");
  expected.add_edge("E3", "S");
  CHECK(same_graph(g, expected));
  CHECK(totals(g) == std::vector<Int>{Int(2), Int(3), Int(6)});
}

TEST_CASE("tacnode y = x^2, y = -x^2") {
  DualGraph g =
      resolve({series_branch("A", {{"1", "2"}}), series_branch("B", {{"-1", "2"}})});
  DualGraph expected;
  expected.add_exceptional("E1", Int(-2));
  expected.add_exceptional("E2", Int(-1));
  expected.add_strict("A");
  expected.add_strict("B");
  expected.add_edge("E1", "E2");
  expected.add_edge("A", "E2");
  expected.add_edge("B", "E2");
  CHECK(same_graph(g, expected));
  CHECK(totals(g) == std::vector<Int>{Int(2), Int(4)});
}

TEST_CASE("node: the two axes") {
  DualGraph g = resolve({axis_branch("A", 'x'), axis_branch("B", 'y')});
  DualGraph expected;
  expected.add_exceptional("E1", Int(-1));
  expected.add_strict("A");
  expected.add_strict("B");
  expected.add_edge("A", "E1");
  expected.add_edge("B", "E1");
  CHECK(same_graph(g, expected));
  CHECK(totals(g) == std::vector<Int>{Int(2)});
}

TEST_CASE("ramphoid cusp y = x^(5/2)") {
  DualGraph g = resolve({series_branch("S", {{"1", "5/2"}})});
  DualGraph expected;
  expected.add_exceptional("E1", Int(-2));
  expected.add_exceptional("E2", Int(-3));
  expected.add_exceptional("E3", Int(-2));
  expected.add_exceptional("E4", Int(-1));
  expected.add_strict("S");
  expected.add_edge("E1", "E2");
  expected.add_edge("E2", "E4");
  expected.add_edge("E3", "E4");
  expected.add_edge("E4", "S");
  CHECK(same_graph(g, expected));
  CHECK(totals(g) == std::vector<Int>{Int(2), Int(4), Int(5), Int(10)});
}

TEST_CASE("exponent 5/3 singularity") {
  DualGraph g = resolve({series_branch("S", {{"1", "5/3"}})});
  DualGraph expected;
  expected.add_exceptional("E1", Int(-3));
  expected.add_exceptional("E2", Int(-3));
  expected.add_exceptional("E3", Int(-2));
  expected.add_exceptional("E4", Int(-1));
  expected.add_strict("S");
  expected.add_edge("E1", "E3");
  expected.add_edge("E2", "E4");
  expected.add_edge("E3", "E4");
  expected.add_edge("E4", "S");
  CHECK(same_graph(g, expected));
  CHECK(totals(g) == std::vector<Int>{Int(3), Int(5), Int(9), Int(15)});
}

TEST_CASE("two-scale branch reproduces the built-in reference graph") {
  DualGraph g =
      resolve({series_branch("S", {{"1", "3/2"}, {"1", "7/4"}})});
  CHECK(same_graph(g, example_curve_graph()));
  CHECK(totals(g) ==
        std::vector<Int>{Int(4), Int(6), Int(12), Int(13), Int(26)});
}

TEST_CASE("every resolved graph is valid, minimal, and unimodular") {
  std::vector<std::vector<BranchSpec>> inputs = {
      {series_branch("S", {{"1", "2"}})},
      {series_branch("S", {{"1", "3/2"}})},
      {series_branch("A", {{"1", "2"}}), series_branch("B", {{"-1", "2"}})},
      {series_branch("S", {{"1", "5/2"}})},
      {series_branch("S", {{"1", "5/3"}})},
      {series_branch("S", {{"1", "3/2"}, {"1", "7/4"}})},
      {axis_branch("A", 'x'), series_branch("B", {{"1", "3/2"}})},
  };
  for (const auto& branches : inputs) {
    DualGraph g = resolve(branches);
    ValidationReport v = validate(g);
    CHECK(v.ok());
    CHECK(v.minimal);
    IntersectionMatrix im = intersection_matrix(g);
    Int d = determinant(im.ee);
    CHECK((d == 1 || d == -1));
    CHECK(is_negative_definite(im.ee));
  }
}

TEST_CASE("blow-up trace: complexity strictly decreases") {
  ResolutionTrace tr = resolve_trace({series_branch("S", {{"1", "3/2"}})});
  REQUIRE(tr.steps.size() == 3);
  CHECK(tr.initial == ResolutionMeasure{Int(1), Int(0), Int(0), Int(0), Int(1)});
  CHECK(tr.steps[0].measure == ResolutionMeasure{Int(0), Int(0), Int(1), Int(0), Int(0)});
  CHECK(tr.steps[1].measure == ResolutionMeasure{Int(0), Int(0), Int(0), Int(1), Int(0)});
  CHECK(tr.steps[2].measure == ResolutionMeasure{Int(0), Int(0), Int(0), Int(0), Int(0)});

  ResolutionMeasure prev = tr.initial;
  for (const ResolutionStep& s : tr.steps) {
    CHECK(s.measure < prev);  // lexicographic
    prev = s.measure;
  }
  CHECK(tr.steps[0].blown_up == "E1");
  CHECK(tr.steps[1].blown_up == "E2");
  CHECK(tr.steps[2].blown_up == "E3");
  CHECK(same_graph(tr.graph, resolve({series_branch("S", {{"1", "3/2"}})})));
}

TEST_CASE("blow-up trace: intermediate divisors are unimodular and definite") {
  ResolutionTrace tr =
      resolve_trace({series_branch("S", {{"1", "3/2"}, {"1", "7/4"}})});
  REQUIRE(!tr.steps.empty());
  for (const ResolutionStep& s : tr.steps) {
    IntersectionMatrix im = intersection_matrix(s.exceptional_part);
    Int d = determinant(im.ee);
    CHECK((d == 1 || d == -1));
    CHECK(is_negative_definite(im.ee));
  }
  // Final step's divisor has the same exceptional set as the result.
  const DualGraph& last = tr.steps.back().exceptional_part;
  CHECK(last.exceptional_ids() == tr.graph.exceptional_ids());
  CHECK(last.strict_ids().empty());
}

TEST_CASE("branch JSON parsing") {
  SUBCASE("series and axis forms") {
    std::vector<BranchSpec> bs = parse_branches(
        R"({"branches":[{"name":"S","series":[{"coeff":"1","exponent":"3/2"}]},
                        {"name":"A","axis":"x"}]})");
    REQUIRE(bs.size() == 2);
    CHECK(bs[0].name == "S");
    REQUIRE(bs[0].series.size() == 1);
    CHECK(bs[0].series[0].exponent == Rat(3) / 2);
    CHECK(!bs[0].axis.has_value());
    CHECK(bs[1].axis == 'x');
    CHECK(bs[1].series.empty());
  }
  SUBCASE("malformed payloads are rejected") {
    CHECK_THROWS_AS(parse_branches("not json"), std::invalid_argument);
    CHECK_THROWS_AS(parse_branches(R"({"nope":[]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_branches(R"({"branches":[]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_branches(R"({"branches":[{"series":[]}]})"),
                    std::invalid_argument);  // missing name
    CHECK_THROWS_AS(
        parse_branches(R"({"branches":[{"name":"E1","axis":"x"}]})"),
        std::invalid_argument);  // reserved id
    CHECK_THROWS_AS(
        parse_branches(
            R"({"branches":[{"name":"A","axis":"x"},{"name":"A","axis":"y"}]})"),
        std::invalid_argument);  // duplicate name
    CHECK_THROWS_AS(
        parse_branches(
            R"({"branches":[{"name":"A","axis":"x","series":[{"coeff":"1","exponent":"2"}]}]})"),
        std::invalid_argument);  // both forms at once
    CHECK_THROWS_AS(parse_branches(R"({"branches":[{"name":"A"}]})"),
                    std::invalid_argument);  // neither form
    CHECK_THROWS_AS(
        parse_branches(
            R"({"branches":[{"name":"A","series":[{"coeff":"0","exponent":"2"}]}]})"),
        std::invalid_argument);  // zero coefficient
    CHECK_THROWS_AS(
        parse_branches(
            R"({"branches":[{"name":"A","series":[{"coeff":"1","exponent":"-2"}]}]})"),
        std::invalid_argument);  // nonpositive exponent
    CHECK_THROWS_AS(
        parse_branches(
            R"({"branches":[{"name":"A","series":[{"coeff":"1","exponent":"2"},
                                                   {"coeff":"1","exponent":"2"}]}]})"),
        std::invalid_argument);  // exponents must increase
    CHECK_THROWS_AS(
        parse_branches(R"({"branches":[{"name":"A","axis":"z"}]})"),
        std::invalid_argument);  // unknown axis
  }
}

TEST_CASE("branches that never separate are rejected") {
  // Identical series: the truncations describe the same branch.
  CHECK_THROWS_AS(resolve({series_branch("A", {{"1", "3/2"}}),
                           series_branch("B", {{"1", "3/2"}})}),
                  std::invalid_argument);
  // Conjugate series: same branch through another root of unity.
  CHECK_THROWS_AS(resolve({series_branch("A", {{"1", "3/2"}}),
                           series_branch("B", {{"-1", "3/2"}})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(resolve({}), std::invalid_argument);
}

TEST_CASE("combined report is internally consistent") {
  ResolutionReport rep =
      resolve_and_report({series_branch("S", {{"1", "3/2"}, {"1", "7/4"}})});
  CHECK(same_graph(rep.graph, example_curve_graph()));
  CHECK(rep.classification.rupture == std::vector<std::string>{"E3", "E5"});
  REQUIRE(rep.classification.chains.size() == 1);
  CHECK(rep.classification.chains[0].id == "C0");
  IVec t = rep.multiplicities.total();
  CHECK(t(4) == Int(26));
}

TEST_CASE("separating distinct branches with shared leading terms") {
  // A and B agree to order x^2 and then split: the tree must contain two
  // strict transforms attached at different or equal vertices, and validate.
  DualGraph g = resolve({series_branch("A", {{"1", "2"}, {"1", "3"}}),
                         series_branch("B", {{"1", "2"}, {"-1", "3"}})});
  ValidationReport v = validate(g);
  CHECK(v.ok());
  CHECK(v.minimal);
  CHECK(g.strict_ids() == std::vector<std::string>{"A", "B"});
}

}  // TEST_SUITE("resolution")
