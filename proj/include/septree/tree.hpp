#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "septree/path.hpp"

namespace septree {

// A finite prefix-closed set of reduced paths out of a common root vertex,
// i.e. a finite subtree of the doubled graph's covering forest containing
// the root.  Node addresses are stored as sorted words; the empty word is
// always present.  Sortedness makes structural equality, hashing and
// deterministic iteration free (a word precedes its extensions, so every
// prefix of the sorted list is itself prefix-closed).
class ETree {
 public:
  ETree() = default;
  explicit ETree(VertexId root) : root_(root), nodes_{Word{}} {}

  VertexId root() const { return root_; }
  const std::vector<Word>& nodes() const { return nodes_; }
  int total_length() const { return static_cast<int>(nodes_.size()) - 1; }
  size_t cardinality() const { return nodes_.size(); }

  bool contains(const Word& w) const;
  // Inserts the node and every prefix of it.
  void add_word(const Word& w);
  void add_path(const SeparatedGraph& g, const Path& p);

  Path node_path(const Word& w) const { return {root_, w}; }
  std::vector<Word> max_elements() const;
  // Letters of the children of `w` present in the tree.
  std::vector<Letter> children(const Word& w) const;

  auto operator<=>(const ETree&) const = default;

 private:
  VertexId root_ = -1;
  std::vector<Word> nodes_;
};

ETree tree_of_path(const SeparatedGraph& g, const Path& p);
ETree tree_union(const ETree& a, const ETree& b);

// Left translation g . t of a whole tree; requires range(g) == root(t) and
// g^{-1} in t (which makes the result prefix-closed again).
ETree translate_tree(const SeparatedGraph& g, const Path& p, const ETree& t);

// Every node path is a valid reduced path of the graph.
bool is_valid_tree(const SeparatedGraph& g, const ETree& t);

// Compatibility of the whole tree: pairwise geodesics between nodes avoid
// the separation-forbidden adjacency.  Checked locally: every node path is
// separated, and no node has two distinct forward children inside one
// block.  (The equivalence with the pairwise definition is covered by the
// oracle tests.)
bool is_c_compatible(const SeparatedGraph& g, const ETree& t);

// Iteratively removes leaves whose incoming letter is an inverse letter or
// a forward edge from `U`.
ETree reduce_tree(const SeparatedGraph& g, const ETree& t, const std::set<EdgeId>& U);

struct TreeClass {
  bool in_y = false;    // compatible
  bool in_y0 = false;   // ... and no maximal element ends backward
  bool in_yl = false;   // ... nor in a singleton-block edge
};
TreeClass classify(const SeparatedGraph& g, const ETree& t);
// As in_yl but with the singleton condition restricted to blocks in S.
bool in_ys(const SeparatedGraph& g, const ETree& t, const std::set<BlockRef>& S);

// ---- Outward walks -------------------------------------------------------
//
// Both the forward-neighborhood of a tree (backward chains ending in one
// forward step) and its exit set (backward chains interleaved with
// singleton-block edges, ending in an edge of a block of size >= 2) are
// regular languages over a finite state set (vertex, last letter).  The
// engine decides finiteness exactly: the language is infinite iff the
// trimmed automaton (states reachable from a valid first step and
// co-reachable to an accepting final letter) contains a cycle.

struct WalkResult {
  bool finite = true;
  // All elements when finite; the elements of suffix length <= cap when
  // infinite (cap is the listing bound, not part of the decision).
  std::vector<Path> elements;
};

WalkResult neighborhood(const SeparatedGraph& g, const ETree& t, int cap = 6);
WalkResult exits(const SeparatedGraph& g, const ETree& t, int cap = 6);

// Direct membership test for the forward-neighborhood (works regardless of
// finiteness; used to validate blocking families).
bool is_neighborhood_element(const SeparatedGraph& g, const ETree& t, const Path& p);

// ---- Enumeration ---------------------------------------------------------

// All trees with at most `max_edges` edges rooted at `root`; when
// `compatible_only` is set the search prunes incompatible extensions.
std::vector<ETree> enumerate_trees(const SeparatedGraph& g, VertexId root,
                                   int max_edges, bool compatible_only);

// All separated reduced paths from `root` with at most `max_len` letters.
std::vector<Path> enumerate_paths(const SeparatedGraph& g, VertexId root, int max_len);

}  // namespace septree
