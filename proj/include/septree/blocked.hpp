#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "septree/algebra.hpp"
#include "septree/tree.hpp"

namespace septree {

// A tree together with a family of blocked exits.  Each entry (anchor,
// block) stands for the translate set {anchor.x : x in block}; anchors are
// node words extended by inverse letters, so every translate is a
// forward-neighborhood element of the tree.  The entry list is kept
// sorted and free of repeats, which already makes the translate sets
// pairwise disjoint: equal translates share their final letter and hence
// their block and anchor.
struct BlockedTree {
  ETree tree;
  std::vector<std::pair<Word, BlockRef>> blocks;
  auto operator<=>(const BlockedTree&) const = default;
};

// Splits an anchor word as head . tail where the tail is the maximal run
// of trailing inverse letters (so the head is empty or ends forward).
std::pair<Word, Word> split_anchor(const Word& anchor);

// Construction invariant: the tree is compatible with no maximal node
// ending backward, every translate anchor.x is a forward-neighborhood
// element of the tree (in particular outside it), every anchor head is a
// tree node, and the entry list is sorted without repeats.  On failure
// `why` (when given) receives a diagnostic.
bool is_valid_blocked(const SeparatedGraph& g, const BlockedTree& b,
                      std::string* why = nullptr);

// Sorts and deduplicates the entries, then validates; throws DomainError
// on invalid data.
BlockedTree make_blocked(const SeparatedGraph& g, ETree tree,
                         std::vector<std::pair<Word, BlockRef>> blocks);

// Maximal tree nodes whose exits are blocked: h such that some anchor
// extends h by inverse letters only (equivalently: the anchor's head is a
// prefix of h and h is a prefix of the anchor).
std::vector<Word> b_max(const BlockedTree& b);
// The complementary maximal nodes.
std::vector<Word> nb_max(const BlockedTree& b);

// The blocked idempotent e(tree \ blocks): the product over all entries of
//   e(tree) - sum over x in block of e(tree u {anchor.x})
// expanded in the ambient algebra, or e(tree) itself for an empty family.
AlgebraElement blocked_idempotent(const AlgebraCtx& ctx, const BlockedTree& b);

// The product of two blocked idempotents at the level of the data: the
// union tree with the union family when the trees share their root, the
// union is compatible and neither family has a translate lying inside the
// other tree; nullopt (the zero element) otherwise.
std::optional<BlockedTree> blocked_product(const SeparatedGraph& g,
                                           const BlockedTree& a,
                                           const BlockedTree& b);

// All blocked trees over all roots whose tree edges plus anchor-tail
// letters total at most `bound`.  Families are non-empty unless
// `allow_empty` is set.
std::vector<BlockedTree> enumerate_blocked(const SeparatedGraph& g, int bound,
                                           bool allow_empty = false);

// ---- The ideal generated by the block-completion defects ------------------

// A generator e(tree \ blocks) |> marker of the kernel of the projection
// onto the fully block-completed algebra.
struct QBasisElement {
  BlockedTree blocked;
  Path marker;
  auto operator<=>(const QBasisElement&) const = default;
};

// The algebra element the generator denotes: blocked idempotent times the
// marker path.
AlgebraElement q_basis_expand(const AlgebraCtx& ctx, const QBasisElement& q);

// The canonical linear basis of the kernel ideal, cut to the budget: tree
// edges plus anchor-tail letters at most `bound`, marker length at most
// `bound`.  An element qualifies when its family is non-empty, the
// marker's head is a tree node, and every non-blocked maximal node other
// than the marker head avoids ending in the chosen edge of its block.
// `choice` overrides the lexicographic default per block.
std::vector<QBasisElement> q_basis_enumerate(const SeparatedGraph& g, int bound,
                                             const ChoiceFunction& choice = {});

// ---- Corner embedding into the completed algebra --------------------------

// Choice-function convention on the extension: either every extended
// block keeps the base block's chosen edge (so added edges head canonical
// trees of the kernel ideal), or it switches to the added edge (so pure
// base monomials stay irreducible).
enum class ExtChoice { keep_base, added_edge };

// The isomorphism onto the full corner of the Leavitt algebra over the
// extension of the base graph by one fresh sink edge per incomplete
// block.  Generators map to themselves; a monomial of the image decodes
// back to a blocked idempotent times its marker, with the added-edge
// leaves turning into blocked exits.
class CornerMap {
 public:
  explicit CornerMap(const AlgebraCtx& base,
                     ExtChoice convention = ExtChoice::keep_base);
  CornerMap(const CornerMap&) = delete;
  CornerMap& operator=(const CornerMap&) = delete;

  const ExtendedGraph& extension() const { return *ext_; }
  const AlgebraCtx& image_ctx() const { return image_; }

  // The element over the extension (generators fixed, renormalized there).
  AlgebraElement map(const AlgebraElement& a) const;
  // Decoded data of a single image monomial; rejects monomials that leave
  // the corner (markers through added edges, roots at added sinks).
  QBasisElement decode(const Monomial& m) const;
  // Term-by-term decode and expansion back over the base graph.
  AlgebraElement inverse(const AlgebraElement& a) const;

 private:
  const AlgebraCtx* base_;
  std::unique_ptr<ExtendedGraph> ext_;
  AlgebraCtx image_;
};

// Kernel membership: maps the element into the Leavitt algebra of the
// extension and checks that every surviving monomial's tree reaches an
// added edge; the witness is that normalized image.
struct QMembership {
  bool member = false;
  AlgebraElement witness;
};
QMembership q_membership(const AlgebraCtx& ctx, const AlgebraElement& a);

}  // namespace septree
