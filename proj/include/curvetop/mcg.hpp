#pragma once

// Mapping-class-side machinery: the generator catalogue (one Artin block
// per rupture vertex, one rank-2 twist family per chain), Dehn twist
// endomorphisms of the presentation, inner automorphisms, canonical forms
// under partial commutation, and the automorphism action on branches.

#include "curvetop/exact.hpp"
#include "curvetop/graph.hpp"
#include "curvetop/presentation.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace curvetop {

struct ArtinBlock {
  std::string rupture_id;
  int valence = 0;          // adjacent components, strict transforms included
  int strands = 0;          // valence - 1
  int generator_count = 0;  // (valence-1)(valence-2)/2
  bool trivial_mod_center = false;
  std::vector<std::string> generator_labels;  // abstract labels A_i_j
};

struct TwistFamily {
  std::string chain_id;
  std::array<std::string, 2> cut;  // edge (D0, D1); basis (c_D0, c_D1)
};

struct GeneratorCatalogue {
  std::vector<ArtinBlock> artin_blocks;
  std::vector<TwistFamily> twist_families;
};

GeneratorCatalogue generator_catalogue(const DualGraph& g);

// Twist parameters: the cut edge (D0, D1) of the chain and the exponents
// (p, q) of the conjugating word c_D0^p c_D1^q.
struct TwistParam {
  std::string chain_id;
  std::array<std::string, 2> cut;
  Int p, q;
};

struct EndoMap {
  std::map<std::string, Word> images;
};

// Conjugates the generators of every component on the D1 side of the cut
// edge by c_D0^p c_D1^q; all other generators are fixed.
EndoMap dehn_twist_endo(const DualGraph& g, const Presentation& p, const TwistParam& t);

EndoMap inner_automorphism(const Presentation& p, const Word& w);

// Image of a word under an endomorphism (substitute and freely reduce).
Word apply_endo(const EndoMap& e, const Word& w);

// compose(f, g): first f, then g.
EndoMap compose(const EndoMap& f, const EndoMap& g);

using CommPairs = std::set<std::pair<std::string, std::string>>;  // normalized pairs

CommPairs comm_pairs_of(const Presentation& p);

// Canonical form in the group generated freely modulo the given commutation
// pairs: cancels inverse pairs across commuting separators, then sorts
// commuting adjacent syllables to the lexicographically least shuffle.
// Deterministic; words equal modulo the commutations reduce identically.
Word reduce_with_commutations(Word w, const CommPairs& pairs);

enum class CompareVerdict { equal_syntactic, equal_abelianized, different, unverified };

std::string to_string(CompareVerdict v);

struct EndoComparison {
  std::map<std::string, CompareVerdict> per_generator;
  bool all_syntactic() const;
};

// Per generator: syntactic comparison of the commutation-reduced images,
// falling back to comparison of the abelianized images over the
// strict-transform basis.
EndoComparison compare_endos(const EndoMap& e1, const EndoMap& e2, const Presentation& p,
                             const H1Summary& summary);

// The permutation action of the weighted-tree automorphism group on the
// strict transforms, with an injectivity report for the induced map.
struct BranchPermutationReport {
  std::vector<std::map<std::string, std::string>> permutations;  // one per automorphism
  bool injective = false;
};

BranchPermutationReport branch_permutation_map(const DualGraph& g);

}  // namespace curvetop
