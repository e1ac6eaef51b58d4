#pragma once

#include <vector>

#include "septree/algebra.hpp"
#include "septree/blocked.hpp"

namespace septree {

// ---- Isolated points -------------------------------------------------------

// A Leavitt tree is isolated when it admits no extension ending in an edge
// of a block of size >= 2: its exit language is empty.
bool is_isolated(const SeparatedGraph& g, const ETree& t);

// All isolated Leavitt trees with total_length <= bound, over all roots.
std::vector<ETree> isolated_points(const SeparatedGraph& g, int bound);

// ---- Orbits of the single-letter partial maps ------------------------------

struct OrbitEdge {
  int from = -1;
  EdgeId letter = -1;  // the single-edge map carrying nodes[from] to nodes[to]
  int to = -1;
  auto operator<=>(const OrbitEdge&) const = default;
};

// Breadth-first closure of one isolated tree under the single-letter
// partial maps and their inverses.  nodes[0] is the seed; transversal[i]
// is a path w with theta_w(seed) = nodes[i], read off the spanning tree of
// the search.  Every discovered node is checked to be isolated again.
struct OrbitGraph {
  std::vector<ETree> nodes;
  std::vector<OrbitEdge> edges;  // sorted, deduplicated
  std::vector<Path> transversal;
  bool overflow = false;  // node cap hit; nodes/edges are partial
};

OrbitGraph orbit(const SeparatedGraph& g, const ETree& seed, int cap = 1024);

// The search graph is connected, so freeness of the point stabilizer is
// exactly tree-ness of the Schreier graph (no independent cycles).
bool isotropy_trivial(const OrbitGraph& og);

// The elementary matrix unit of this orbit's block: the normalized element
// with tree nodes[i] and marker alpha_i . alpha_j^{-1}.
AlgebraElement matrix_unit(const AlgebraCtx& ctx, const OrbitGraph& og, int i,
                           int j);

// ---- Socle report ----------------------------------------------------------

struct SocleClass {
  OrbitGraph orbit;
  bool trivial_isotropy = false;
};

struct SocleReport {
  int bound = 0;
  std::vector<SocleClass> classes;  // one per orbit met within the bound
  // Matrix block sizes of the trivial-isotropy classes, ascending.
  std::vector<int> block_sizes() const;
};

SocleReport socle_report(const SeparatedGraph& g, int bound, int cap = 1024);

// ---- Completely blockable trees --------------------------------------------

// Trees whose full neighborhood is finite and non-empty, blocked at every
// neighbor.  Their idempotents generate the minimal part of the kernel
// ideal; the matrix block attached to a tree has size |T|.
struct EcbEntry {
  BlockedTree blocked;  // family = the entire neighborhood
  int block_size = 0;   // cardinality of the underlying tree
};

struct EcbReport {
  int bound = 0;
  std::vector<EcbEntry> found;
  std::vector<ETree> infinite;  // neighborhood certified infinite
  std::vector<ETree> empty;     // neighborhood empty: nothing to block
  std::vector<int> block_sizes() const;
};

EcbReport ecb_search(const SeparatedGraph& g, int bound);

// |N(T) \ F|: the number of unblocked neighbors of a blocked tree.
// DomainError when the neighborhood is infinite.
int open_neighbor_count(const SeparatedGraph& g, const BlockedTree& b);

// ---- Free-inverse-monoid tools ---------------------------------------------

// The word graph on an n-letter alphabet: a root plus one sink per letter,
// with two parallel edges root -> sink_i in separate singleton blocks
// ("ei" forward, "fi" backward).  Reduced group words correspond to
// alternating two-letter paths from the root.
SeparatedGraph fim_graph(int n);

// Number of group elements represented by a root-rooted tree of the word
// graph: one for the root plus one per odd-depth node.
int munn_cardinality(const ETree& t);

struct FimClass {
  std::vector<ETree> members;  // the whole translation class, sorted
  int size = 0;                // munn_cardinality, equal across the class
};

struct FimReport {
  int n = 0;
  int bound = 0;  // cap on munn_cardinality
  std::vector<FimClass> classes;
  std::vector<int> block_sizes() const;
};

// Enumerates the root-rooted translation classes of word trees with at
// most `bound` group elements; each class size equals the member count.
FimReport fim_socle(int n, int bound);

}  // namespace septree
