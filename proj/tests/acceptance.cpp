// Acceptance battery: one line per criterion, PASS/FAIL with timing; the
// exit code is the number of failed criteria.  All tolerances are exact
// (integer arithmetic throughout); time budgets are wall-clock upper bounds.

#include "curvetop/cli.hpp"
#include "curvetop/fixtures.hpp"
#include "curvetop/graph.hpp"
#include "curvetop/lattice.hpp"
#include "curvetop/mcg.hpp"
#include "curvetop/meridian.hpp"
#include "curvetop/presentation.hpp"
#include "curvetop/resolution.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace curvetop;

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

struct Criterion {
  bool ok = true;
  std::string reason;  // first failure
  long failures = 0;

  void fail(const std::string& why) {
    if (ok) reason = why;
    ok = false;
    ++failures;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

int report(int index, const std::string& what, const Criterion& c, long elapsed_ms,
           long budget_ms) {
  Criterion final = c;
  if (budget_ms > 0 && elapsed_ms > budget_ms) {
    std::ostringstream why;
    why << "exceeded the " << budget_ms << " ms budget";
    final.fail(why.str());
  }
  if (final.ok) {
    std::cout << "PASS criterion " << index << ": " << what << " (" << elapsed_ms
              << " ms)\n";
    return 0;
  }
  std::cout << "FAIL criterion " << index << ": " << what << " (" << elapsed_ms
            << " ms) - " << final.reason;
  if (final.failures > 1) std::cout << " [+" << (final.failures - 1) << " more]";
  std::cout << "\n";
  return 1;
}

BranchSpec series_branch(const std::string& name,
                         const std::vector<std::pair<std::string, std::string>>& terms) {
  BranchSpec b;
  b.name = name;
  for (const auto& [c, e] : terms) b.series.push_back({parse_rational(c), parse_rational(e)});
  return b;
}

// ---------------------------------------------------------------- criterion 1

int criterion_reference_battery() {
  auto start = Clock::now();
  Criterion c;
  ExampleVerification v = verify_example();
  c.require(v.ok, "built-in battery reported failures:\n" + v.report);
  return report(1, "built-in reference-curve battery (31 exact checks)", c,
                ms_since(start), 1000);
}

// ---------------------------------------------------------------- criterion 2

int criterion_pipeline() {
  Criterion c;
  long worst = 0;

  auto run_case = [&](const std::string& label, const std::vector<BranchSpec>& branches,
                      const DualGraph& expected, const std::vector<long>& mult) {
    auto start = Clock::now();
    DualGraph g = resolve(branches);
    MultiplicityVector mv = multiplicity_vector(g);
    long elapsed = ms_since(start);
    worst = std::max(worst, elapsed);
    c.require(g == expected, label + ": wrong resolution tree");
    IVec total = mv.total();
    c.require(total.rows() == static_cast<Eigen::Index>(mult.size()),
              label + ": wrong multiplicity count");
    for (Eigen::Index i = 0; i < total.rows(); ++i)
      c.require(total(i) == Int(mult[static_cast<std::size_t>(i)]),
                label + ": wrong multiplicity");
    c.require(elapsed < 1000, label + ": exceeded the per-curve 1000 ms budget");
  };

  {
    DualGraph cusp;
    cusp.add_exceptional("E1", Int(-3));
    cusp.add_exceptional("E2", Int(-2));
    cusp.add_exceptional("E3", Int(-1));
    cusp.add_strict("S");
    cusp.add_edge("E1", "E3");
    cusp.add_edge("E2", "E3");
    cusp.add_edge("E3", "S");
    run_case("cusp x^(3/2)", {series_branch("S", {{"1", "3/2"}})}, cusp, {2, 3, 6});
  }
  {
    DualGraph tac;
    tac.add_exceptional("E1", Int(-2));
    tac.add_exceptional("E2", Int(-1));
    tac.add_strict("A");
    tac.add_strict("B");
    tac.add_edge("E1", "E2");
    tac.add_edge("A", "E2");
    tac.add_edge("B", "E2");
    run_case("tacnode y = x^2, y = -x^2",
             {series_branch("A", {{"1", "2"}}), series_branch("B", {{"-1", "2"}})}, tac,
             {2, 4});
  }
  {
    DualGraph smooth;
    smooth.add_exceptional("E1", Int(-1));
    smooth.add_strict("S");
    smooth.add_edge("E1", "S");
    run_case("smooth branch", {series_branch("S", {{"1", "2"}})}, smooth, {1});
  }

  return report(2, "blow-up pipeline reproduces the three reference trees", c, worst,
                1000);
}

// ---------------------------------------------------------------- criterion 3

int criterion_chain_recurrence() {
  auto start = Clock::now();
  Criterion c;
  std::mt19937_64 rng(0x5eed0003);
  std::uniform_int_distribution<std::size_t> len(0, 8);
  std::uniform_int_distribution<int> weight(-9, -2);
  const int trials = 10000;

  for (int t = 0; t < trials; ++t) {
    std::vector<Int> e(len(rng));
    for (Int& x : e) x = Int(weight(rng));

    ChainMeridians cm = chain_meridians(e);
    for (std::size_t j = 0; j + 1 < cm.c.size(); ++j)
      c.require(det2(cm.c[j], cm.c[j + 1]) == Int(1),
                "det(c_j, c_{j+1}) != 1 at trial " + std::to_string(t));
    for (std::size_t j = 1; j + 1 < cm.c.size(); ++j)
      c.require(det2(cm.c[j - 1], cm.c[j + 1]) == -e[j - 1],
                "det(c_{j-1}, c_{j+1}) != -e_j at trial " + std::to_string(t));

    ChainCoefficients k = chain_coefficients(e);
    IMat a = IMat::Zero(static_cast<Eigen::Index>(e.size()),
                        static_cast<Eigen::Index>(e.size()));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      a(i, i) = e[static_cast<std::size_t>(i)];
      if (i + 1 < a.rows()) {
        a(i, i + 1) = Int(1);
        a(i + 1, i) = Int(1);
      }
    }
    c.require(k.abs_a == boost::multiprecision::abs(determinant(a)),
              "|a| != |det A| at trial " + std::to_string(t));
  }

  return report(3,
                "chain recurrence identities on " + std::to_string(trials) +
                    " random chains",
                c, ms_since(start), 10000);
}

// ---------------------------------------------------------------- criterion 4

int criterion_hull_chains() {
  auto start = Clock::now();
  Criterion c;
  const long coord_bound = 12;
  const Int det_bound(30);

  std::vector<Vec2> primitive;
  for (long x = -coord_bound; x <= coord_bound; ++x)
    for (long y = -coord_bound; y <= coord_bound; ++y) {
      Vec2 v{Int(x), Int(y)};
      if ((x != 0 || y != 0) && is_primitive(v)) primitive.push_back(v);
    }

  long cones = 0;
  for (const Vec2& a : primitive)
    for (const Vec2& b : primitive) {
      Int d = det2(a, b);
      if (d <= 0 || d > det_bound) continue;
      ++cones;
      std::vector<Vec2> chain = hj_chain(a, b);
      c.require(chain.size() >= 2 && chain.front() == a && chain.back() == b,
                "chain endpoints wrong");
      for (const Vec2& v : chain)
        c.require(is_primitive(v), "non-primitive chain vector");
      for (std::size_t j = 0; j + 1 < chain.size(); ++j)
        c.require(det2(chain[j], chain[j + 1]) == Int(1),
                  "consecutive determinant != 1");
      for (std::size_t j = 1; j + 1 < chain.size(); ++j)
        c.require(det2(chain[j - 1], chain[j + 1]) >= Int(2),
                  "skip-level determinant < 2");
      if (!c.ok && c.failures > 50) break;  // enough evidence
    }

  // Exhaustive oracle on the small-coordinate cones.
  long oracle_cases = 0, conclusive = 0;
  for (const Vec2& a : primitive)
    for (const Vec2& b : primitive) {
      if (boost::multiprecision::abs(a(0)) > 3 || boost::multiprecision::abs(a(1)) > 3 ||
          boost::multiprecision::abs(b(0)) > 3 || boost::multiprecision::abs(b(1)) > 3)
        continue;
      Int d = det2(a, b);
      if (d <= 0 || d > det_bound) continue;
      ++oracle_cases;
      BruteForceChain bf = brute_force_chain(a, b, Int(6));
      c.require(bf.status != BruteForceChain::Status::ambiguous,
                "oracle found two distinct chains in one cone");
      if (bf.status == BruteForceChain::Status::unique) {
        ++conclusive;
        c.require(bf.found.size() == 1 && bf.found[0] == hj_chain(a, b),
                  "oracle chain differs from the hull walk");
      }
    }
  c.require(oracle_cases > 0 && conclusive * 10 >= oracle_cases * 9,
            "oracle was inconclusive on more than 10% of the small cones");

  std::ostringstream what;
  what << "hull chains on " << cones << " cones, exhaustive oracle agreement on "
       << conclusive << " small cones";
  return report(4, what.str(), c, ms_since(start), 30000);
}

// ---------------------------------------------------------------- criterion 5

int criterion_random_resolutions() {
  auto start = Clock::now();
  Criterion c;
  std::mt19937_64 rng(0x5eed0005);
  std::uniform_int_distribution<int> branch_count(1, 3);
  std::uniform_int_distribution<int> term_count(1, 3);
  std::uniform_int_distribution<int> denom_pick(0, 3);
  std::uniform_int_distribution<int> num_step(1, 5);
  std::uniform_int_distribution<int> coeff_pick(0, 5);
  const int denominators[4] = {1, 2, 3, 4};
  const char* coefficients[6] = {"1", "-1", "2", "-2", "1/2", "3"};

  const int target = 500;
  int built = 0;
  long attempts = 0;

  while (built < target && attempts < target * 40L) {
    ++attempts;
    std::vector<BranchSpec> branches;
    int nb = branch_count(rng);
    for (int i = 0; i < nb; ++i) {
      BranchSpec b;
      b.name = "B" + std::to_string(i + 1);
      int den = denominators[denom_pick(rng)];
      int num = den + num_step(rng);  // exponent > 1
      int nt = term_count(rng);
      for (int t = 0; t < nt; ++t) {
        PuiseuxTerm term;
        term.coeff = parse_rational(coefficients[coeff_pick(rng)]);
        term.exponent = Rat(num) / den;
        b.series.push_back(term);
        num += num_step(rng);  // strictly increasing exponents
      }
      branches.push_back(std::move(b));
    }

    DualGraph g;
    try {
      g = resolve(branches);
    } catch (const std::invalid_argument&) {
      continue;  // coincident or conjugate branches: redraw
    }
    ++built;

    ValidationReport v = validate(g);
    c.require(v.ok(), "resolved tree failed validation");
    c.require(v.minimal, "resolved tree is not minimal");

    IntersectionMatrix im = intersection_matrix(g);
    Int d = determinant(im.ee);
    c.require(d == 1 || d == -1, "intersection determinant is not a unit");
    c.require(is_negative_definite(im.ee),
              "intersection matrix is not negative definite");

    Presentation p = fundamental_group_presentation(g);
    H1Summary h = abelianization(p);
    c.require(h.free_rank == Int(static_cast<long>(g.strict_ids().size())),
              "first homology rank differs from the branch count");
    c.require(h.torsion.empty(), "first homology has torsion");
    c.require(check_relations_abelian(p, h), "a relator does not abelianize to zero");

    if (!c.ok && c.failures > 50) break;
  }
  c.require(built >= target, "could not build " + std::to_string(target) +
                                 " sample curves (got " + std::to_string(built) + ")");

  std::ostringstream what;
  what << "structural invariants on " << built << " randomized resolutions";
  return report(5, what.str(), c, ms_since(start), 0);
}

// ---------------------------------------------------------------- criterion 6

int criterion_cli_determinism() {
  auto start = Clock::now();
  Criterion c;

  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "curvetop_acceptance";
  std::filesystem::create_directories(dir);
  std::string cusp = (dir / "cusp.json").string();
  std::ofstream(cusp) << R"({"branches":[{"name":"S","series":)"
                      << R"([{"coeff":"1","exponent":"3/2"}]}]})";
  std::string fixture = (dir / "fixture.json").string();
  std::ofstream(fixture) << graph_to_json(example_curve_graph());

  std::vector<std::vector<std::string>> invocations = {
      {"resolve", "-i", cusp},
      {"resolve", "-i", cusp, "--format", "json"},
      {"resolve", "-i", cusp, "--format", "dot"},
      {"classify", "-i", fixture},
      {"classify", "-i", fixture, "--format", "json"},
      {"jsj", "-i", fixture},
      {"matrix", "-i", fixture},
      {"mult", "-i", fixture},
      {"mult", "-i", fixture, "--format", "json"},
      {"pi1", "-i", fixture},
      {"pi1", "-i", fixture, "--format", "json"},
      {"h1", "-i", fixture},
      {"meridians", "-i", fixture},
      {"hj", "--from", "1,0", "--to", "-3,5"},
      {"seifert", "-i", fixture},
      {"mcg", "-i", fixture},
      {"twist", "-i", fixture, "-p", "2", "-q", "3", "--compare-inner"},
      {"autos", "-i", fixture},
      {"verify-example"},
  };

  for (const auto& args : invocations) {
    std::string outs[2], errs[2];
    int codes[2];
    for (int round = 0; round < 2; ++round) {
      std::ostringstream out, err;
      codes[round] = cli::run(args, out, err);
      outs[round] = out.str();
      errs[round] = err.str();
    }
    std::string cmd = args.empty() ? "" : args[0];
    c.require(codes[0] == codes[1], cmd + ": exit codes differ between runs");
    c.require(outs[0] == outs[1], cmd + ": stdout differs between runs");
    c.require(errs[0] == errs[1], cmd + ": stderr differs between runs");
    c.require(codes[0] == 0, cmd + ": expected success, got exit code " +
                                 std::to_string(codes[0]));
  }

  std::ostringstream what;
  what << "command line byte-deterministic across " << invocations.size()
       << " invocations run twice";
  return report(6, what.str(), c, ms_since(start), 0);
}

}  // namespace

int main() {
  int failures = 0;
  failures += criterion_reference_battery();
  failures += criterion_pipeline();
  failures += criterion_chain_recurrence();
  failures += criterion_hull_chains();
  failures += criterion_random_resolutions();
  failures += criterion_cli_determinism();
  if (failures == 0)
    std::cout << "all 6 criteria passed\n";
  else
    std::cout << failures << " of 6 criteria failed\n";
  return failures;
}
