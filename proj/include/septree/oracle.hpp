#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <unordered_map>

#include "septree/algebra.hpp"

namespace septree {

// Independent reference implementations used to cross-check the main
// engines.  Everything here is deliberately written against different
// definitions (pairwise geodesics, raw word walks, literal relation
// rewriting) rather than sharing code with the primary algorithms.

// Compatibility via the quadratic definition: the geodesic between every
// pair of nodes avoids the forbidden backward-then-forward block adjacency.
bool compatible_by_pairs(const SeparatedGraph& g, const ETree& t);

// Composition by concatenate-then-rescan free reduction.
std::optional<Path> compose_naive(const SeparatedGraph& g, const Path& a, const Path& b);

// ---- Symbol-word encoding --------------------------------------------------
//
// Words over the doubled alphabet plus vertex units, used by the word-level
// oracles.  Codes: 0..V-1 are vertex units, V + 2e (+1) is edge e forward
// (backward).  The empty word stands for the zero element.

using CcWord = std::vector<int>;

int unit_code(const SeparatedGraph& g, VertexId v);
int letter_code(const SeparatedGraph& g, Letter l);
bool code_is_unit(const SeparatedGraph& g, int code);
Letter code_letter(const SeparatedGraph& g, int code);
VertexId code_src(const SeparatedGraph& g, int code);
VertexId code_dst(const SeparatedGraph& g, int code);
std::string code_name(const SeparatedGraph& g, int code);

// Unit-prefixed depth-first traversal of the tree (down-letter, subtree,
// up-letter) followed by the marker letters.
CcWord word_of_element(const SeparatedGraph& g, const SgValue& v);
CcWord word_of_path(const SeparatedGraph& g, const Path& p);
CcWord concat_words(const CcWord& a, const CcWord& b);

// ---- Prefix-trace evaluation ----------------------------------------------
//
// Evaluates a raw symbol word to a canonical semigroup element without
// using the multiplication engine: walk the letters, cancelling as you go,
// and collect every visited prefix; the visited set is the tree and the
// final position the marker.  Zero on non-composable junctions and, in
// compatibility regimes, on incompatible visited sets.
SgValue prefix_trace(const SeparatedGraph& g, const Regime& r, const CcWord& w);
SgValue prefix_trace_letters(const SeparatedGraph& g, const Regime& r, VertexId root,
                             const Word& letters);

// ---- Bounded congruence closure ---------------------------------------------
//
// Decides word equality in the presented quotient by saturating the set of
// words reachable from a seed through single relation applications (both
// directions) inside a fixed length bound.  The relations are the regime's:
// unit laws everywhere, backward-then-forward cancellation to a unit when
// the regime prunes, designated-edge co-cancellation for edges in U, the
// separation zero when the regime has compatibility zeros, and the
// inverse-semigroup laws (u u~ u = u for short u, commuting short
// idempotent pairs).  Saturation is exact within the bound: reported
// equality is always sound; inequality is sound whenever the true proof
// fits in the bound (tests pick bounds with validated slack).
class CongruenceOracle {
 public:
  CongruenceOracle(const SeparatedGraph& g, const Regime& r, int max_len,
                   size_t node_cap = 2'000'000);

  struct Component {
    bool has_zero = false;
    std::set<std::uint64_t> keys;
  };

  // Saturated equivalence component of the seed; components are cached and
  // shared across queries (they are consistent for a fixed length bound).
  const Component& component(const CcWord& seed) const;
  bool equal(const CcWord& a, const CcWord& b) const;
  std::uint64_t pack(const CcWord& w) const;
  // A word with a non-composable junction denotes zero outright.
  bool is_zero_seed(const CcWord& w) const;

 private:
  void neighbors(const CcWord& w, std::vector<CcWord>& out, bool& zero) const;

  const SeparatedGraph& g_;
  Regime r_;
  int max_len_;
  size_t node_cap_;
  unsigned bits_ = 6;  // symbol width of the packed word key
  Component zero_comp_{true, {}};
  mutable std::vector<std::unique_ptr<Component>> comps_;
  mutable std::unordered_map<std::uint64_t, int> class_of_;
};

// ---- Literal relation rewriter ----------------------------------------------
//
// Rewrites rational combinations of raw symbol words with the algebra's
// defining relations, chosen in seeded random order: unit merges,
// backward-forward cancellation within a block (zero across distinct
// edges), completion of the chosen edge pair of a complete block into the
// complementary difference, and the shrinking tame law u u~ u -> u.  Every
// step preserves the represented element, so any two seeds must agree with
// each other and with the tree-level normal form under evaluation.
class LiteralRewriter {
 public:
  using Terms = std::map<CcWord, Rational>;

  LiteralRewriter(const AlgebraCtx& ctx, std::uint64_t seed);

  Terms rewrite(Terms input, int step_cap = 200000);
  Terms term_of_element(const AlgebraElement& a) const;
  // Fold the word's symbols through the algebra (unit / letter / star).
  AlgebraElement evaluate(const Terms& terms) const;

 private:
  struct Redex {
    CcWord word;
    size_t pos;
    int kind;
  };
  std::vector<Redex> redexes(const CcWord& w) const;

  const AlgebraCtx& ctx_;
  std::mt19937_64 rng_;
};

// ---- Exact rank bookkeeping -------------------------------------------------
//
// Incremental Gaussian elimination over the rationals with monomials as
// coordinates.  insert() returns whether the element enlarged the span.
class RankChecker {
 public:
  bool insert(const AlgebraElement& a);
  bool in_span(const AlgebraElement& a) const;
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  using SparseRow = std::map<int, Rational>;
  std::optional<SparseRow> reduce(const AlgebraElement& a) const;
  int coord(const Monomial& m);

  std::map<Monomial, int> coords_;
  std::map<int, SparseRow> rows_;  // leading coordinate -> normalized row
};

}  // namespace septree
