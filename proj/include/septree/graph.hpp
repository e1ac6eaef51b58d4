#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace septree {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

// Thrown when an operation's mathematical precondition is violated
// (mismatched sources, invalid tree data, unknown names, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by the text-format parsers; carries a 1-based source line.
struct ParseError : std::runtime_error {
  int line;
  ParseError(std::string msg, int line_) : std::runtime_error(std::move(msg)), line(line_) {}
};

// Identifies one block of the out-edge partition at a vertex.
struct BlockRef {
  VertexId vertex = -1;
  std::int32_t index = -1;
  auto operator<=>(const BlockRef&) const = default;
};

// A finite directed graph together with, at every non-sink vertex, a
// partition of its out-edges into named blocks.  Vertices and edges are
// interned: names map to dense integer ids, all internal computation is on
// ids, and printing goes back through the stored names.  Names must be
// globally unique across vertices and edges so that path literals stay
// unambiguous.
class SeparatedGraph {
 public:
  VertexId add_vertex(const std::string& name);
  EdgeId add_edge(const std::string& name, VertexId src, VertexId dst);
  // Installs the out-edge partition of `v`.  Every out-edge of `v` must
  // occur in exactly one block, blocks must be non-empty, and a sink must
  // have an empty block list.
  void set_partition(VertexId v, std::vector<std::vector<EdgeId>> blocks);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::string& vertex_name(VertexId v) const { return vertices_[v].name; }
  const std::string& edge_name(EdgeId e) const { return edges_[e].name; }
  VertexId src(EdgeId e) const { return edges_[e].src; }
  VertexId dst(EdgeId e) const { return edges_[e].dst; }

  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& name) const;

  int block_count(VertexId v) const { return static_cast<int>(vertices_[v].blocks.size()); }
  const std::vector<EdgeId>& block_edges(BlockRef b) const {
    return vertices_[b.vertex].blocks[b.index];
  }
  // Block containing edge `e` (every edge belongs to exactly one block of
  // its source vertex once the partition is installed).
  BlockRef block_of(EdgeId e) const { return {edges_[e].src, edges_[e].block}; }
  bool is_singleton_block(EdgeId e) const {
    return block_edges(block_of(e)).size() == 1;
  }
  bool is_sink(VertexId v) const { return out_edges(v).empty(); }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return vertices_[v].out; }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return vertices_[v].in; }

  // All edges lying in singleton blocks; this is the default reduction set
  // of the Leavitt regime.
  std::set<EdgeId> singleton_block_edges() const;

  // Full structural check: partition installed wherever out-edges exist,
  // blocks disjoint, covering, non-empty.  Returns human-readable
  // diagnostics; empty means valid.
  std::vector<std::string> validate() const;

 private:
  struct VertexInfo {
    std::string name;
    std::vector<EdgeId> out, in;
    std::vector<std::vector<EdgeId>> blocks;
    bool partition_set = false;
  };
  struct EdgeInfo {
    std::string name;
    VertexId src, dst;
    std::int32_t block = -1;  // index within the source vertex's block list
  };
  std::vector<VertexInfo> vertices_;
  std::vector<EdgeInfo> edges_;
  std::map<std::string, std::pair<bool, std::int32_t>> names_;  // true = vertex
};

// A choice function: one distinguished edge per block (on the blocks where
// the tree-level expansion rule applies).
using ChoiceFunction = std::map<BlockRef, EdgeId>;

// Lexicographically least edge name within every block.
ChoiceFunction default_choice(const SeparatedGraph& g);

// Result of adjoining, for every block X outside `relative`, a fresh sink
// and a fresh edge from the block's vertex into that sink, placed at the
// end of the block.  Original vertex/edge ids are preserved verbatim, so
// paths over the base graph remain valid over the extension.
struct ExtendedGraph {
  SeparatedGraph graph;
  int base_vertex_count = 0;
  int base_edge_count = 0;
  std::map<BlockRef, EdgeId> added_edge;    // block (base coords) -> d-edge
  std::map<BlockRef, VertexId> added_sink;  // block (base coords) -> new sink
  bool is_added_edge(EdgeId e) const { return e >= base_edge_count; }
  bool is_base_vertex(VertexId v) const { return v < base_vertex_count; }
};

ExtendedGraph extend_graph(const SeparatedGraph& g, const std::set<BlockRef>& relative);

}  // namespace septree
