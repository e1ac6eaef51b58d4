#pragma once

#include <optional>

#include "septree/tree.hpp"

namespace septree {

// Multiplication regime for the tree semigroups: whether trees are pruned
// (backward-letter leaves plus leaves through the forward edges in `U`) and
// whether separation-incompatible trees collapse to the zero element.
//
//   munn       - no pruning, no compatibility zeros (free tree calculus)
//   toeplitz   - pruning with a chosen U, no compatibility zeros
//   cohn       - prune backward letters only, compatibility zeros
//   leavitt    - additionally prune singleton-block edges
//   cl         - prune singleton-block edges of the blocks in S only
struct Regime {
  bool reduce = false;
  std::set<EdgeId> U;
  bool compat = false;

  static Regime munn() { return {false, {}, false}; }
  static Regime toeplitz(std::set<EdgeId> u) { return {true, std::move(u), false}; }
  static Regime cohn() { return {true, {}, true}; }
  static Regime leavitt(const SeparatedGraph& g) {
    return {true, g.singleton_block_edges(), true};
  }
  static Regime cl(const SeparatedGraph& g, const std::set<BlockRef>& S) {
    std::set<EdgeId> u;
    for (const BlockRef& b : S)
      if (g.block_edges(b).size() == 1) u.insert(g.block_edges(b).front());
    return {true, std::move(u), true};
  }

  auto operator<=>(const Regime&) const = default;
};

// A nonzero semigroup element: a tree together with a marker path out of
// its root.  Canonical form: the tree is reduced for the regime and always
// contains the marker's reduced head (the entire marker when the regime
// does not prune), so structural equality is semigroup equality.
struct SgElement {
  ETree tree;
  Path marker;
  auto operator<=>(const SgElement&) const = default;
};

// Element values including the zero of the semigroup.
using SgValue = std::optional<SgElement>;

// The marker head left over after stripping the regime's prunable tail.
Path marker_head(const SeparatedGraph& g, const Regime& r, const Path& marker);

// Canonicalizes (tree, marker): adds the marker's prefixes, applies the
// regime's pruning, and collapses to zero on incompatibility when the
// regime demands it.  Throws DomainError on malformed input (root/source
// mismatch, invalid paths).
SgValue make_element(const SeparatedGraph& g, const Regime& r, const ETree& t,
                     const Path& marker);

// e(T): the idempotent with trivial marker.
SgValue sg_idempotent(const SeparatedGraph& g, const Regime& r, const ETree& t);

SgValue sg_multiply(const SeparatedGraph& g, const Regime& r, const SgValue& a,
                    const SgValue& b);
SgValue sg_invert(const SeparatedGraph& g, const Regime& r, const SgValue& a);

// Natural partial order: a <= b iff a = 0 or b (a^-1 a) = a.
bool natural_leq(const SeparatedGraph& g, const Regime& r, const SgValue& a,
                 const SgValue& b);

bool is_idempotent_element(const SgValue& a);

// Partial action of a path on trees: theta_p(T) = reduce(p . (T u {p^-1}v)),
// defined when the reduced head of p^-1 already lies in T and, in
// compatibility regimes, the union stays compatible.  T must be rooted at
// the range of p; the result is rooted at its source.
std::optional<ETree> theta(const SeparatedGraph& g, const Regime& r, const Path& p,
                           const ETree& t);

}  // namespace septree
