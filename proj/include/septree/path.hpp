#pragma once

#include <compare>
#include <optional>
#include <set>
#include <vector>

#include "septree/graph.hpp"

namespace septree {

// One step of a path: an edge traversed forward or backward.
struct Letter {
  EdgeId edge = -1;
  bool inv = false;
  auto operator<=>(const Letter&) const = default;
};

inline Letter pos(EdgeId e) { return {e, false}; }
inline Letter neg(EdgeId e) { return {e, true}; }
inline Letter inverse(Letter l) { return {l.edge, !l.inv}; }
inline VertexId letter_src(const SeparatedGraph& g, Letter l) {
  return l.inv ? g.dst(l.edge) : g.src(l.edge);
}
inline VertexId letter_dst(const SeparatedGraph& g, Letter l) {
  return l.inv ? g.src(l.edge) : g.dst(l.edge);
}

// A node address inside a tree: the letters read off from the root.
using Word = std::vector<Letter>;

// A reduced path in the doubled graph, anchored at its source vertex.
// Trivial paths (vertices) have an empty letter sequence.
struct Path {
  VertexId root = -1;
  Word letters;
  auto operator<=>(const Path&) const = default;

  bool trivial() const { return letters.empty(); }
  int length() const { return static_cast<int>(letters.size()); }
};

inline Path trivial_path(VertexId v) { return {v, {}}; }

VertexId range(const SeparatedGraph& g, const Path& p);
inline VertexId source(const Path& p) { return p.root; }

// True when consecutive letters neither cancel nor violate composability.
bool is_reduced_path(const SeparatedGraph& g, const Path& p);

// Adjacent pair admissible in a reduced path: `b` composes after `a` and
// does not cancel it.
inline bool reduced_pair(Letter a, Letter b) { return b != inverse(a); }

// Forbidden adjacency of the separation: backward out of one edge of a
// block, forward into a different edge of the same block.
inline bool separation_violation(const SeparatedGraph& g, Letter a, Letter b) {
  return a.inv && !b.inv && g.block_of(a.edge) == g.block_of(b.edge);
}

// No subword runs backward out of a block and forward into the same block.
bool is_c_separated(const SeparatedGraph& g, const Path& p);

// Groupoid composition: concatenate and cancel; nullopt when the ranges do
// not match (the zero of the groupoid).
std::optional<Path> compose(const SeparatedGraph& g, const Path& a, const Path& b);
Path invert_path(const SeparatedGraph& g, const Path& p);

// a is a prefix of b (same source, initial segment of letters).
bool prefix_leq(const Path& a, const Path& b);

// Splits p as (head, tail) where the tail is the maximal suffix consisting
// of inverse letters and forward letters from `U`; the head then ends in
// neither (or is trivial).  The splitting is unique.
std::pair<Path, Word> decompose(const SeparatedGraph& g, const Path& p,
                                const std::set<EdgeId>& U);

Path path_of_word(VertexId root, const Word& w);
Path prefix_path(const Path& p, int len);

}  // namespace septree
