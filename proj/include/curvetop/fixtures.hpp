#pragma once

// Built-in reference fixture: the irreducible curve
//   (y^2 - x^3)^2 - 4 x^5 y - x^7 = 0,
// i.e. the branch y = x^{3/2} + x^{7/4}.  Its minimal resolution has five
// exceptional components and one branch.  The graph here is constructed
// directly from the intersection data, so it can serve as an independent
// reference for the blow-up engine.

#include "curvetop/graph.hpp"

#include <map>
#include <string>

namespace curvetop {

DualGraph example_curve_graph();

// Display names of the meridian generators used in the reference
// presentation: E1->a1, E2->b1, E3->c1, E4->b2, E5->c2, S->d.
std::map<std::string, std::string> example_curve_aliases();

// Runs the full battery of checks on the fixture; returns a text report
// with one PASS/FAIL line per check.  `ok` is true iff all pass.
struct ExampleVerification {
  bool ok = false;
  std::string report;
};

ExampleVerification verify_example();

}  // namespace curvetop
