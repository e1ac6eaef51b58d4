#include "septree/graph.hpp"

#include <algorithm>

namespace septree {

namespace {
bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}
}  // namespace

VertexId SeparatedGraph::add_vertex(const std::string& name) {
  if (!valid_name(name))
    throw DomainError("invalid identifier '" + name + "'");
  if (names_.count(name))
    throw DomainError("duplicate identifier '" + name + "'");
  VertexId id = static_cast<VertexId>(vertices_.size());
  vertices_.push_back({name, {}, {}, {}, false});
  names_[name] = {true, id};
  return id;
}

EdgeId SeparatedGraph::add_edge(const std::string& name, VertexId src, VertexId dst) {
  if (!valid_name(name))
    throw DomainError("invalid identifier '" + name + "'");
  if (names_.count(name))
    throw DomainError("duplicate identifier '" + name + "'");
  if (src < 0 || src >= vertex_count() || dst < 0 || dst >= vertex_count())
    throw DomainError("edge '" + name + "' references unknown vertex");
  if (vertices_[src].partition_set)
    throw DomainError("edge '" + name + "' added after partition of its source");
  EdgeId id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({name, src, dst, -1});
  vertices_[src].out.push_back(id);
  vertices_[dst].in.push_back(id);
  names_[name] = {false, id};
  return id;
}

void SeparatedGraph::set_partition(VertexId v, std::vector<std::vector<EdgeId>> blocks) {
  auto& info = vertices_[v];
  if (info.partition_set)
    throw DomainError("partition of '" + info.name + "' set twice");
  std::set<EdgeId> seen;
  for (const auto& blk : blocks) {
    if (blk.empty()) throw DomainError("empty block at '" + info.name + "'");
    for (EdgeId e : blk) {
      if (e < 0 || e >= edge_count() || edges_[e].src != v)
        throw DomainError("block at '" + info.name + "' contains a non-out-edge");
      if (!seen.insert(e).second)
        throw DomainError("edge '" + edges_[e].name + "' listed in two blocks");
    }
  }
  if (seen.size() != info.out.size())
    throw DomainError("partition at '" + info.name + "' does not cover all out-edges");
  info.blocks = std::move(blocks);
  info.partition_set = true;
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(info.blocks.size()); ++i)
    for (EdgeId e : info.blocks[i]) edges_[e].block = i;
}

std::optional<VertexId> SeparatedGraph::find_vertex(const std::string& name) const {
  auto it = names_.find(name);
  if (it == names_.end() || !it->second.first) return std::nullopt;
  return it->second.second;
}

std::optional<EdgeId> SeparatedGraph::find_edge(const std::string& name) const {
  auto it = names_.find(name);
  if (it == names_.end() || it->second.first) return std::nullopt;
  return it->second.second;
}

std::set<EdgeId> SeparatedGraph::singleton_block_edges() const {
  std::set<EdgeId> out;
  for (EdgeId e = 0; e < edge_count(); ++e)
    if (is_singleton_block(e)) out.insert(e);
  return out;
}

std::vector<std::string> SeparatedGraph::validate() const {
  std::vector<std::string> diags;
  for (VertexId v = 0; v < vertex_count(); ++v) {
    const auto& info = vertices_[v];
    if (!info.out.empty() && !info.partition_set)
      diags.push_back("vertex '" + info.name + "' has out-edges but no partition");
    if (info.out.empty() && !info.blocks.empty())
      diags.push_back("sink '" + info.name + "' has a non-empty partition");
  }
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const auto& info = edges_[e];
    if (vertices_[info.src].partition_set && info.block < 0)
      diags.push_back("edge '" + info.name + "' not covered by any block");
  }
  return diags;
}

ChoiceFunction default_choice(const SeparatedGraph& g) {
  ChoiceFunction choice;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (std::int32_t i = 0; i < g.block_count(v); ++i) {
      BlockRef b{v, i};
      const auto& edges = g.block_edges(b);
      EdgeId best = edges.front();
      for (EdgeId e : edges)
        if (g.edge_name(e) < g.edge_name(best)) best = e;
      choice[b] = best;
    }
  }
  return choice;
}

ExtendedGraph extend_graph(const SeparatedGraph& g, const std::set<BlockRef>& relative) {
  for (const BlockRef& b : relative) {
    if (b.vertex < 0 || b.vertex >= g.vertex_count() || b.index < 0 ||
        b.index >= g.block_count(b.vertex))
      throw DomainError("relative set references unknown block");
  }
  ExtendedGraph ext;
  ext.base_vertex_count = g.vertex_count();
  ext.base_edge_count = g.edge_count();
  SeparatedGraph& out = ext.graph;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.add_vertex(g.vertex_name(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    out.add_edge(g.edge_name(e), g.src(e), g.dst(e));

  // Derive fresh names from the block content ("d_ab" for block {a,b}); fall
  // back to a numeric suffix when taken or unwieldy.
  auto fresh = [&out](std::string base) {
    std::string name = base;
    int n = 0;
    while (out.find_vertex(name) || out.find_edge(name)) name = base + "_" + std::to_string(n++);
    return name;
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::vector<EdgeId>> blocks;
    for (std::int32_t i = 0; i < g.block_count(v); ++i) {
      BlockRef b{v, i};
      std::vector<EdgeId> blk = g.block_edges(b);
      if (!relative.count(b)) {
        std::string tag;
        for (EdgeId e : blk) tag += g.edge_name(e);
        if (tag.size() > 12) tag = g.vertex_name(v) + std::to_string(i);
        VertexId sink = out.add_vertex(fresh("w_" + tag));
        EdgeId d = out.add_edge(fresh("d_" + tag), v, sink);
        blk.push_back(d);
        ext.added_edge[b] = d;
        ext.added_sink[b] = sink;
      }
      blocks.push_back(std::move(blk));
    }
    if (!blocks.empty()) out.set_partition(v, std::move(blocks));
  }
  return ext;
}

}  // namespace septree
