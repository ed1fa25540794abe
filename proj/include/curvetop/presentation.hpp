#pragma once

// Fundamental group presentation of the boundary manifold read off the
// dual tree: one generator (a meridian) per component, one product relator
// per exceptional component, one commutator per edge; plus the peripheral
// pairs and the abelianization.

#include "curvetop/exact.hpp"
#include "curvetop/graph.hpp"

#include <map>
#include <string>
#include <vector>

namespace curvetop {

struct Syllable {
  std::string gen;
  Int exp;  // nonzero in reduced words
  bool operator==(const Syllable& o) const { return gen == o.gen && exp == o.exp; }
};

using Word = std::vector<Syllable>;

Word free_reduce(Word w);
Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);        // freely reduced
Word conjugate(const Word& w, const Word& by);    // by . w . by^-1, reduced

struct Presentation {
  std::vector<std::string> generators;        // component ids, sorted
  std::vector<std::string> exceptional_gens;  // subset, sorted
  std::vector<std::string> strict_gens;       // subset, sorted
  std::vector<Word> relators;                 // product relators, then commutators
  std::map<std::string, std::vector<std::string>> star_orders;  // per exceptional vertex
  std::map<std::string, std::string> aliases;  // optional display names

  // Unordered generator pairs {g,h} with a commutator relator.
  std::vector<std::pair<std::string, std::string>> commuting_pairs() const;
};

// Product relator of E: the meridians of the neighbours of E in star order,
// then the meridian of E itself raised to its self-intersection.
Presentation fundamental_group_presentation(const DualGraph& g);

struct PeripheralPair {
  std::string strict_id;
  Word meridian;  // generator of the strict transform itself
  Word fiber;     // generator of the component it attaches to
};

std::vector<PeripheralPair> peripheral_subgroups(const Presentation& p, const DualGraph& g);

// Abelianization via Smith normal form of the relation matrix.  For a valid
// dual tree it is free of rank = #strict transforms, and `expression` gives
// each exceptional meridian class as a row of multiplicities over the
// strict-transform basis.  Torsion is an error (invalid graph).
struct H1Summary {
  Int free_rank;
  std::vector<Int> torsion;
  std::vector<std::string> exceptional_ids;
  std::vector<std::string> strict_ids;
  IMat expression;  // |exceptional| x |strict|
};

H1Summary abelianization(const Presentation& p);

// True when every relator of p maps to zero in the free abelian group on
// the strict transforms under the summary's expression of the exceptional
// generators.  The summary must come from an uncorrupted source.
bool check_relations_abelian(const Presentation& p, const H1Summary& summary);

std::string word_to_text(const Word& w, const std::map<std::string, std::string>& aliases = {});
std::string presentation_to_text(const Presentation& p);
std::string presentation_to_json(const Presentation& p);

}  // namespace curvetop
