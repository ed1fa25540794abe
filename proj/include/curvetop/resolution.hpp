#pragma once

// Embedded resolution front-end: takes branches given by exact rational
// Puiseux truncations (the truncation *is* the branch) and produces the
// weighted dual tree of the minimal resolution by simulating blow-ups.
// All bookkeeping is exact; branches are carried as parametrizations whose
// coordinates are rational functions of the local parameter.

#include "curvetop/exact.hpp"
#include "curvetop/graph.hpp"
#include "curvetop/lattice.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace curvetop {

struct PuiseuxTerm {
  Rat coeff;     // nonzero
  Rat exponent;  // positive, strictly increasing along the series
};

// A branch is either y = sum of terms in x (series), or one of the
// coordinate axes x = 0 / y = 0 declared explicitly.
struct BranchSpec {
  std::string name;
  std::vector<PuiseuxTerm> series;
  std::optional<char> axis;  // 'x' or 'y'
};

// JSON schema:
//   {"branches":[{"name":"S","series":[{"coeff":"1","exponent":"3/2"}]},
//                {"name":"A","axis":"x"}]}
// Coefficients and exponents are decimal or "p/q" strings.
std::vector<BranchSpec> parse_branches(const std::string& text);

DualGraph resolve(const std::vector<BranchSpec>& branches);

// Lexicographic complexity of the unresolved state; strictly decreases at
// every blow-up.  Components: remaining delta invariant over all branches,
// total pairwise contact of co-located branches, tangency excess of
// branches against divisor axes, branch-at-corner incidences, and a flag
// for the not-yet-blown-up origin.
using ResolutionMeasure = std::array<Int, 5>;

struct ResolutionStep {
  std::string blown_up;        // id of the exceptional component created
  DualGraph exceptional_part;  // divisor so far (no strict transforms)
  ResolutionMeasure measure;   // measured after this blow-up
};

struct ResolutionTrace {
  ResolutionMeasure initial;
  std::vector<ResolutionStep> steps;
  DualGraph graph;
};

ResolutionTrace resolve_trace(const std::vector<BranchSpec>& branches);

struct ResolutionReport {
  DualGraph graph;
  Classification classification;
  MultiplicityVector multiplicities;
};

ResolutionReport resolve_and_report(const std::vector<BranchSpec>& branches);

}  // namespace curvetop
