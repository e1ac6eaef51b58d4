#include "septree/socle.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <tuple>

#include "septree/semigroup.hpp"

namespace septree {

bool is_isolated(const SeparatedGraph& g, const ETree& t) {
  WalkResult r = exits(g, t);
  return r.finite && r.elements.empty();
}

std::vector<ETree> isolated_points(const SeparatedGraph& g, int bound) {
  std::vector<ETree> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (const ETree& t : enumerate_trees(g, v, bound, true))
      if (classify(g, t).in_yl && is_isolated(g, t)) out.push_back(t);
  return out;
}

OrbitGraph orbit(const SeparatedGraph& g, const ETree& seed, int cap) {
  if (!is_valid_tree(g, seed) || !is_c_compatible(g, seed) ||
      !classify(g, seed).in_yl)
    throw DomainError("orbit: seed is not a Leavitt tree");
  if (!is_isolated(g, seed)) throw DomainError("orbit: seed is not isolated");

  Regime regime = Regime::leavitt(g);
  OrbitGraph og;
  og.nodes.push_back(seed);
  og.transversal.push_back(trivial_path(seed.root()));
  std::map<ETree, int> index{{seed, 0}};
  std::set<std::tuple<int, EdgeId, int>> seen;
  std::queue<int> todo;
  todo.push(0);

  while (!todo.empty() && !og.overflow) {
    int i = todo.front();
    todo.pop();
    const ETree t = og.nodes[i];
    for (EdgeId e = 0; e < g.edge_count() && !og.overflow; ++e) {
      // The single-letter map by `e` carries trees rooted at its target to
      // trees rooted at its source; the inverse letter goes back.
      for (bool fwd : {true, false}) {
        Path p = fwd ? Path{g.src(e), {pos(e)}} : Path{g.dst(e), {neg(e)}};
        if (range(g, p) != t.root()) continue;
        std::optional<ETree> img = theta(g, regime, p, t);
        if (!img) continue;
        auto [it, fresh] = index.try_emplace(*img, static_cast<int>(og.nodes.size()));
        int j = it->second;
        if (fresh) {
          if (static_cast<int>(og.nodes.size()) >= cap) {
            og.overflow = true;
            index.erase(it);
            break;
          }
          if (!is_isolated(g, *img))
            throw DomainError("orbit: reached a non-isolated tree");
          og.nodes.push_back(*img);
          std::optional<Path> word = compose(g, p, og.transversal[i]);
          if (!word) throw DomainError("orbit: transversal word does not compose");
          og.transversal.push_back(*word);
          todo.push(j);
        }
        OrbitEdge edge = fwd ? OrbitEdge{i, e, j} : OrbitEdge{j, e, i};
        if (seen.insert({edge.from, edge.letter, edge.to}).second)
          og.edges.push_back(edge);
      }
    }
  }
  std::sort(og.edges.begin(), og.edges.end());
  return og;
}

bool isotropy_trivial(const OrbitGraph& og) {
  return !og.overflow && og.edges.size() == og.nodes.size() - 1;
}

AlgebraElement matrix_unit(const AlgebraCtx& ctx, const OrbitGraph& og, int i,
                           int j) {
  if (og.overflow) throw DomainError("matrix_unit: orbit truncated at cap");
  std::optional<Path> marker = compose(
      *ctx.graph, og.transversal[i], invert_path(*ctx.graph, og.transversal[j]));
  if (!marker) throw DomainError("matrix_unit: transversal words do not compose");
  return normalize_monomial(ctx, og.nodes[i], *marker);
}

std::vector<int> SocleReport::block_sizes() const {
  std::vector<int> out;
  for (const SocleClass& c : classes)
    if (c.trivial_isotropy) out.push_back(static_cast<int>(c.orbit.nodes.size()));
  std::sort(out.begin(), out.end());
  return out;
}

SocleReport socle_report(const SeparatedGraph& g, int bound, int cap) {
  SocleReport rep;
  rep.bound = bound;
  std::set<ETree> visited;
  for (const ETree& t : isolated_points(g, bound)) {
    if (visited.count(t)) continue;
    SocleClass cls;
    cls.orbit = orbit(g, t, cap);
    for (const ETree& n : cls.orbit.nodes) visited.insert(n);
    cls.trivial_isotropy = isotropy_trivial(cls.orbit);
    rep.classes.push_back(std::move(cls));
  }
  return rep;
}

std::vector<int> EcbReport::block_sizes() const {
  std::vector<int> out;
  for (const EcbEntry& e : found) out.push_back(e.block_size);
  std::sort(out.begin(), out.end());
  return out;
}

EcbReport ecb_search(const SeparatedGraph& g, int bound) {
  EcbReport rep;
  rep.bound = bound;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (const ETree& t : enumerate_trees(g, v, bound, true)) {
      if (!classify(g, t).in_y0) continue;
      WalkResult nb = neighborhood(g, t);
      if (!nb.finite) {
        rep.infinite.push_back(t);
        continue;
      }
      if (nb.elements.empty()) {
        rep.empty.push_back(t);
        continue;
      }
      std::set<std::pair<Word, BlockRef>> entries;
      for (const Path& p : nb.elements) {
        Word anchor(p.letters.begin(), p.letters.end() - 1);
        entries.insert({anchor, g.block_of(p.letters.back().edge)});
      }
      // A neighbor's whole sibling block consists of neighbors, so the
      // neighborhood is the disjoint union of the entries' translates.
      size_t covered = 0;
      for (const auto& [anchor, block] : entries)
        covered += g.block_edges(block).size();
      if (covered != nb.elements.size())
        throw DomainError("ecb_search: neighborhood not a union of full blocks");
      rep.found.push_back(
          {make_blocked(g, t, {entries.begin(), entries.end()}),
           static_cast<int>(t.cardinality())});
    }
  return rep;
}

int open_neighbor_count(const SeparatedGraph& g, const BlockedTree& b) {
  WalkResult nb = neighborhood(g, b.tree);
  if (!nb.finite) throw DomainError("open_neighbor_count: infinite neighborhood");
  size_t blocked = 0;
  for (const auto& [anchor, block] : b.blocks)
    blocked += g.block_edges(block).size();
  return static_cast<int>(nb.elements.size() - blocked);
}

SeparatedGraph fim_graph(int n) {
  if (n < 1) throw DomainError("fim_graph: need at least one letter");
  SeparatedGraph g;
  VertexId v = g.add_vertex("v");
  std::vector<std::vector<EdgeId>> blocks;
  for (int i = 1; i <= n; ++i) {
    VertexId x = g.add_vertex("x" + std::to_string(i));
    EdgeId e = g.add_edge("e" + std::to_string(i), v, x);
    EdgeId f = g.add_edge("f" + std::to_string(i), v, x);
    blocks.push_back({e});
    blocks.push_back({f});
    g.set_partition(x, {});
  }
  g.set_partition(v, std::move(blocks));
  return g;
}

int munn_cardinality(const ETree& t) {
  int odd = 0;
  for (const Word& w : t.nodes())
    if (w.size() % 2 == 1) ++odd;
  return odd + 1;
}

std::vector<int> FimReport::block_sizes() const {
  std::vector<int> out;
  for (const FimClass& c : classes) out.push_back(c.size);
  std::sort(out.begin(), out.end());
  return out;
}

FimReport fim_socle(int n, int bound) {
  FimReport rep;
  rep.n = n;
  rep.bound = bound;
  SeparatedGraph g = fim_graph(n);
  if (bound < 1) return rep;
  VertexId root = 0;

  // One two-letter path per group generator and inverse.
  std::vector<Path> gens;
  for (int i = 0; i < n; ++i) {
    EdgeId e = 2 * i, f = 2 * i + 1;
    gens.push_back({root, {pos(e), neg(f)}});
    gens.push_back({root, {pos(f), neg(e)}});
  }

  std::set<ETree> visited;
  for (const ETree& t : enumerate_trees(g, root, 2 * (bound - 1), true)) {
    if (!classify(g, t).in_y0) continue;
    if (munn_cardinality(t) > bound) continue;
    if (visited.count(t)) continue;

    std::set<ETree> members{t};
    std::queue<ETree> todo;
    todo.push(t);
    while (!todo.empty()) {
      ETree cur = todo.front();
      todo.pop();
      for (const Path& p : gens) {
        std::optional<ETree> img = theta(g, Regime::cohn(), p, cur);
        if (img && members.insert(*img).second) todo.push(*img);
      }
    }

    FimClass cls;
    cls.members.assign(members.begin(), members.end());
    cls.size = munn_cardinality(t);
    for (const ETree& m : cls.members) {
      if (munn_cardinality(m) != cls.size)
        throw DomainError("fim_socle: translation changed the element count");
      visited.insert(m);
    }
    if (static_cast<int>(cls.members.size()) != cls.size)
      throw DomainError("fim_socle: class size differs from element count");
    rep.classes.push_back(std::move(cls));
  }
  std::sort(rep.classes.begin(), rep.classes.end(),
            [](const FimClass& a, const FimClass& b) {
              return std::tie(a.size, a.members) < std::tie(b.size, b.members);
            });
  return rep;
}

}  // namespace septree
