#include "curvetop/mcg.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace curvetop {

GeneratorCatalogue generator_catalogue(const DualGraph& g) {
  Classification cls = classify(g);
  GeneratorCatalogue cat;
  for (const std::string& r : cls.rupture) {
    ArtinBlock block;
    block.rupture_id = r;
    block.valence = valence(g, r);
    block.strands = block.valence - 1;
    block.generator_count = block.strands * (block.strands - 1) / 2;
    block.trivial_mod_center = block.valence <= 3;
    for (int i = 1; i <= block.strands; ++i)
      for (int j = i + 1; j <= block.strands; ++j)
        block.generator_labels.push_back("A_" + std::to_string(i) + "_" + std::to_string(j));
    cat.artin_blocks.push_back(std::move(block));
  }
  for (const Chain& c : cls.chains) {
    TwistFamily f;
    f.chain_id = c.id;
    f.cut = {c.ends[0], c.interior.empty() ? c.ends[1] : c.interior.front()};
    cat.twist_families.push_back(std::move(f));
  }
  return cat;
}

EndoMap dehn_twist_endo(const DualGraph& g, const Presentation& p, const TwistParam& t) {
  const std::string& d0 = t.cut[0];
  const std::string& d1 = t.cut[1];
  if (!g.has_vertex(d0) || !g.has_vertex(d1) || !g.adjacent(d0, d1))
    throw std::invalid_argument("cut (" + d0 + ", " + d1 + ") is not an edge of the graph");
  // Everything on the d1 side of the cut edge gets conjugated.
  std::set<std::string> far{d1};
  std::vector<std::string> stack{d1};
  while (!stack.empty()) {
    std::string v = std::move(stack.back());
    stack.pop_back();
    for (const std::string& n : g.neighbors(v)) {
      if ((v == d1 && n == d0) || (v == d0 && n == d1)) continue;
      if (far.insert(n).second) stack.push_back(n);
    }
  }
  Word w = free_reduce({{d0, t.p}, {d1, t.q}});
  EndoMap e;
  for (const std::string& gen : p.generators)
    e.images[gen] =
        far.count(gen) ? conjugate(Word{{gen, Int(1)}}, w) : Word{{gen, Int(1)}};
  return e;
}

EndoMap inner_automorphism(const Presentation& p, const Word& w) {
  Word by = free_reduce(w);
  EndoMap e;
  for (const std::string& gen : p.generators)
    e.images[gen] = conjugate(Word{{gen, Int(1)}}, by);
  return e;
}

namespace {

constexpr long long kPowerGuard = 1 << 16;

Word power_word(const Word& w, const Int& k) {
  if (k == 0 || w.empty()) return {};
  if (w.size() == 1) return {{w.front().gen, w.front().exp * k}};
  const std::size_t n = w.size();
  if (n % 2 == 1) {
    // u s u^-1 powers syllable-wise: u s^k u^-1.
    bool conjugate_shape = true;
    for (std::size_t i = 0; conjugate_shape && i < n / 2; ++i)
      conjugate_shape = w[i].gen == w[n - 1 - i].gen && w[i].exp == -w[n - 1 - i].exp;
    if (conjugate_shape) {
      Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n / 2));
      out.push_back({w[n / 2].gen, w[n / 2].exp * k});
      out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(n / 2) + 1, w.end());
      return free_reduce(std::move(out));
    }
  }
  if (abs(k) > kPowerGuard)
    throw std::invalid_argument("word power exponent " + to_string(k) + " too large");
  Word base = k > 0 ? w : inverse_word(w);
  Word out;
  for (Int i = abs(k); i > 0; --i) out = concat(out, base);
  return out;
}

}  // namespace

Word apply_endo(const EndoMap& e, const Word& w) {
  Word out;
  for (const Syllable& s : w) {
    auto it = e.images.find(s.gen);
    if (it == e.images.end())
      throw std::invalid_argument("endomorphism has no image for generator '" + s.gen + "'");
    Word part = power_word(it->second, s.exp);
    out.insert(out.end(), part.begin(), part.end());
  }
  return free_reduce(std::move(out));
}

EndoMap compose(const EndoMap& f, const EndoMap& g) {
  EndoMap out;
  for (const auto& [gen, img] : f.images) out.images[gen] = apply_endo(g, img);
  return out;
}

CommPairs comm_pairs_of(const Presentation& p) {
  auto pairs = p.commuting_pairs();
  return CommPairs(pairs.begin(), pairs.end());
}

namespace {

bool commutes(const CommPairs& pairs, const std::string& a, const std::string& b) {
  if (a == b) return true;
  return pairs.count(std::minmax(a, b)) > 0;
}

}  // namespace

Word reduce_with_commutations(Word w, const CommPairs& pairs) {
  w = free_reduce(std::move(w));
  // Merge same-generator syllables whenever every separator commutes with
  // the generator; cancellation may cascade, so sweep to a fixed point.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (w[j].gen != w[i].gen) continue;
        bool clear = true;
        for (std::size_t k = i + 1; clear && k < j; ++k)
          clear = commutes(pairs, w[k].gen, w[i].gen);
        if (clear) {
          w[i].exp += w[j].exp;
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
          if (w[i].exp == 0) w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
          w = free_reduce(std::move(w));
          changed = true;
        }
        // A non-commuting separator blocks every later syllable of this
        // generator as well.
        break;
      }
    }
  }
  // Lexicographically least shuffle: repeatedly emit the least generator
  // whose syllable commutes past everything before it.
  Word out;
  while (!w.empty()) {
    std::size_t best = 0;
    for (std::size_t idx = 1; idx < w.size(); ++idx) {
      bool movable = true;
      for (std::size_t k = 0; movable && k < idx; ++k)
        movable = commutes(pairs, w[k].gen, w[idx].gen);
      if (movable && w[idx].gen < w[best].gen) best = idx;
    }
    out.push_back(w[best]);
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

std::string to_string(CompareVerdict v) {
  switch (v) {
    case CompareVerdict::equal_syntactic: return "equal_syntactic";
    case CompareVerdict::equal_abelianized: return "equal_abelianized";
    case CompareVerdict::different: return "different";
    case CompareVerdict::unverified: return "unverified";
  }
  return "unverified";
}

bool EndoComparison::all_syntactic() const {
  for (const auto& [gen, verdict] : per_generator)
    if (verdict != CompareVerdict::equal_syntactic) return false;
  return true;
}

namespace {

std::optional<IVec> strict_class(const Word& w, const H1Summary& summary) {
  IVec acc = IVec::Zero(static_cast<Eigen::Index>(summary.strict_ids.size()));
  for (const Syllable& s : w) {
    auto e = std::find(summary.exceptional_ids.begin(), summary.exceptional_ids.end(), s.gen);
    if (e != summary.exceptional_ids.end()) {
      Eigen::Index row = static_cast<Eigen::Index>(e - summary.exceptional_ids.begin());
      acc += s.exp * summary.expression.row(row).transpose();
      continue;
    }
    auto t = std::find(summary.strict_ids.begin(), summary.strict_ids.end(), s.gen);
    if (t == summary.strict_ids.end()) return std::nullopt;
    acc(static_cast<Eigen::Index>(t - summary.strict_ids.begin())) += s.exp;
  }
  return acc;
}

}  // namespace

EndoComparison compare_endos(const EndoMap& e1, const EndoMap& e2, const Presentation& p,
                             const H1Summary& summary) {
  CommPairs pairs = comm_pairs_of(p);
  EndoComparison cmp;
  for (const std::string& gen : p.generators) {
    auto i1 = e1.images.find(gen);
    auto i2 = e2.images.find(gen);
    if (i1 == e1.images.end() || i2 == e2.images.end())
      throw std::invalid_argument("endomorphism has no image for generator '" + gen + "'");
    Word w1 = reduce_with_commutations(i1->second, pairs);
    Word w2 = reduce_with_commutations(i2->second, pairs);
    if (w1 == w2) {
      cmp.per_generator[gen] = CompareVerdict::equal_syntactic;
      continue;
    }
    std::optional<IVec> v1 = strict_class(w1, summary);
    std::optional<IVec> v2 = strict_class(w2, summary);
    if (!v1 || !v2) {
      cmp.per_generator[gen] = CompareVerdict::unverified;
      continue;
    }
    bool equal = true;
    for (Eigen::Index i = 0; equal && i < v1->rows(); ++i) equal = (*v1)(i) == (*v2)(i);
    cmp.per_generator[gen] = equal ? CompareVerdict::equal_abelianized : CompareVerdict::different;
  }
  return cmp;
}

BranchPermutationReport branch_permutation_map(const DualGraph& g) {
  BranchPermutationReport rep;
  std::set<std::map<std::string, std::string>> seen;
  for (const TreeAutomorphism& a : tree_automorphisms(g)) {
    std::map<std::string, std::string> action = a.strict_action(g);
    seen.insert(action);
    rep.permutations.push_back(std::move(action));
  }
  rep.injective = seen.size() == rep.permutations.size();
  return rep;
}

}  // namespace curvetop
