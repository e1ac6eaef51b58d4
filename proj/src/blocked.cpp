#include "septree/blocked.hpp"

#include <algorithm>
#include <functional>

namespace septree {

namespace {

Word translate_word(const Word& anchor, EdgeId x) {
  Word w = anchor;
  w.push_back(pos(x));
  return w;
}

bool word_prefix(const Word& a, const Word& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool valid_block_ref(const SeparatedGraph& g, const BlockRef& b) {
  return b.vertex >= 0 && b.vertex < g.vertex_count() && b.index >= 0 &&
         b.index < g.block_count(b.vertex);
}

}  // namespace

std::pair<Word, Word> split_anchor(const Word& anchor) {
  size_t i = anchor.size();
  while (i > 0 && anchor[i - 1].inv) --i;
  return {Word(anchor.begin(), anchor.begin() + i),
          Word(anchor.begin() + i, anchor.end())};
}

bool is_valid_blocked(const SeparatedGraph& g, const BlockedTree& b,
                      std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (!is_valid_tree(g, b.tree)) return fail("tree: invalid node path");
  if (!classify(g, b.tree).in_y0)
    return fail("tree: incompatible or a maximal node ends backward");
  if (!std::is_sorted(b.blocks.begin(), b.blocks.end()))
    return fail("entries: not sorted");
  if (std::adjacent_find(b.blocks.begin(), b.blocks.end()) != b.blocks.end())
    return fail("entries: repeated entry");
  for (const auto& [anchor, block] : b.blocks) {
    if (!valid_block_ref(g, block)) return fail("entries: unknown block");
    Path gamma = b.tree.node_path(anchor);
    if (!is_reduced_path(g, gamma) || !is_c_separated(g, gamma))
      return fail("entries: anchor is not a separated reduced path");
    if (range(g, gamma) != block.vertex)
      return fail("entries: anchor does not end at the block's vertex");
    if (!b.tree.contains(split_anchor(anchor).first))
      return fail("entries: anchor head is not a tree node");
    for (EdgeId x : g.block_edges(block))
      if (!is_neighborhood_element(g, b.tree,
                                   b.tree.node_path(translate_word(anchor, x))))
        return fail("entries: translate " + g.edge_name(x) +
                    " is not a neighborhood element of the tree");
  }
  return true;
}

BlockedTree make_blocked(const SeparatedGraph& g, ETree tree,
                         std::vector<std::pair<Word, BlockRef>> blocks) {
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
  BlockedTree b{std::move(tree), std::move(blocks)};
  std::string why;
  if (!is_valid_blocked(g, b, &why)) throw DomainError("blocked tree: " + why);
  return b;
}

std::vector<Word> b_max(const BlockedTree& b) {
  std::vector<Word> out;
  for (const Word& h : b.tree.max_elements()) {
    for (const auto& [anchor, block] : b.blocks) {
      if (word_prefix(split_anchor(anchor).first, h) && word_prefix(h, anchor)) {
        out.push_back(h);
        break;
      }
    }
  }
  return out;
}

std::vector<Word> nb_max(const BlockedTree& b) {
  std::vector<Word> blocked = b_max(b), out;
  for (const Word& h : b.tree.max_elements())
    if (!std::binary_search(blocked.begin(), blocked.end(), h))
      out.push_back(h);
  return out;
}

AlgebraElement blocked_idempotent(const AlgebraCtx& ctx, const BlockedTree& b) {
  const SeparatedGraph& g = *ctx.graph;
  std::string why;
  if (!is_valid_blocked(g, b, &why))
    throw DomainError("blocked idempotent: " + why);
  AlgebraElement acc = idempotent_element(ctx, b.tree);
  for (const auto& [anchor, block] : b.blocks) {
    AlgebraElement factor = idempotent_element(ctx, b.tree);
    for (EdgeId x : g.block_edges(block)) {
      ETree grown = b.tree;
      grown.add_word(translate_word(anchor, x));
      factor -= idempotent_element(ctx, grown);
    }
    acc = algebra_multiply(ctx, acc, factor);
  }
  return acc;
}

std::optional<BlockedTree> blocked_product(const SeparatedGraph& g,
                                           const BlockedTree& a,
                                           const BlockedTree& b) {
  std::string why;
  if (!is_valid_blocked(g, a, &why) || !is_valid_blocked(g, b, &why))
    throw DomainError("blocked product: " + why);
  if (a.tree.root() != b.tree.root()) return std::nullopt;
  ETree u = tree_union(a.tree, b.tree);
  if (!is_c_compatible(g, u)) return std::nullopt;
  // A blocked exit of one factor lying inside the other tree kills the
  // product (the complement factor meets the matching node idempotent).
  for (const auto& [anchor, block] : a.blocks)
    for (EdgeId x : g.block_edges(block))
      if (b.tree.contains(translate_word(anchor, x))) return std::nullopt;
  for (const auto& [anchor, block] : b.blocks)
    for (EdgeId x : g.block_edges(block))
      if (a.tree.contains(translate_word(anchor, x))) return std::nullopt;
  std::vector<std::pair<Word, BlockRef>> blocks = a.blocks;
  blocks.insert(blocks.end(), b.blocks.begin(), b.blocks.end());
  return make_blocked(g, std::move(u), std::move(blocks));
}

std::vector<BlockedTree> enumerate_blocked(const SeparatedGraph& g, int bound,
                                           bool allow_empty) {
  std::vector<BlockedTree> out;
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    for (const ETree& t : enumerate_trees(g, root, bound, true)) {
      if (!classify(g, t).in_y0) continue;
      int budget = bound - t.total_length();
      // Candidate entries paired with their tail cost.  Anchors are tree
      // nodes not ending backward, extended by runs of inverse letters;
      // every anchor is generated exactly once because the intermediate
      // words of a run end backward and are therefore never heads.
      std::vector<std::pair<std::pair<Word, BlockRef>, int>> cand;
      std::function<void(const Word&, int)> grow = [&](const Word& anchor,
                                                       int cost) {
        VertexId at = range(g, t.node_path(anchor));
        for (int bi = 0; bi < g.block_count(at); ++bi) {
          BlockRef block{at, bi};
          bool ok = true;
          for (EdgeId x : g.block_edges(block))
            if (!is_neighborhood_element(
                    g, t, t.node_path(translate_word(anchor, x)))) {
              ok = false;
              break;
            }
          if (ok) cand.push_back({{anchor, block}, cost});
        }
        if (cost == budget) return;
        for (EdgeId e : g.in_edges(at)) {
          if (!anchor.empty() && anchor.back() == pos(e)) continue;
          Word longer = anchor;
          longer.push_back(neg(e));
          grow(longer, cost + 1);
        }
      };
      for (const Word& node : t.nodes())
        if (node.empty() || !node.back().inv) grow(node, 0);
      std::sort(cand.begin(), cand.end());
      // Families: subsets within the budget, built in index order so the
      // entry lists come out sorted.
      std::vector<std::pair<Word, BlockRef>> cur;
      std::function<void(size_t, int)> pick = [&](size_t i, int left) {
        if (i == cand.size()) {
          if (!cur.empty() || allow_empty)
            out.push_back(BlockedTree{t, cur});
          return;
        }
        pick(i + 1, left);
        if (cand[i].second <= left) {
          cur.push_back(cand[i].first);
          pick(i + 1, left - cand[i].second);
          cur.pop_back();
        }
      };
      pick(0, budget);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

AlgebraElement q_basis_expand(const AlgebraCtx& ctx, const QBasisElement& q) {
  return algebra_multiply(ctx, blocked_idempotent(ctx, q.blocked),
                          path_algebra_element(ctx, q.marker));
}

std::vector<QBasisElement> q_basis_enumerate(const SeparatedGraph& g, int bound,
                                             const ChoiceFunction& choice) {
  ChoiceFunction chosen = default_choice(g);
  for (const auto& [block, e] : choice) {
    if (!valid_block_ref(g, block) ||
        !std::count(g.block_edges(block).begin(), g.block_edges(block).end(), e))
      throw DomainError("choice: edge does not belong to the block");
    chosen[block] = e;
  }
  std::vector<QBasisElement> out;
  for (const BlockedTree& b : enumerate_blocked(g, bound, false)) {
    std::vector<Word> free_max = nb_max(b);
    for (const Path& m : enumerate_paths(g, b.tree.root(), bound)) {
      Word head = decompose(g, m, {}).first.letters;
      if (!b.tree.contains(head)) continue;
      bool ok = true;
      for (const Word& h : free_max) {
        if (h == head || h.empty() || h.back().inv) continue;
        if (chosen.at(g.block_of(h.back().edge)) == h.back().edge) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back({b, m});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CornerMap::CornerMap(const AlgebraCtx& base, ExtChoice convention)
    : base_(&base),
      ext_(std::make_unique<ExtendedGraph>(extend_graph(*base.graph, base.S))) {
  ChoiceFunction c = base.choice;
  if (convention == ExtChoice::added_edge)
    for (const auto& [block, d] : ext_->added_edge) c[block] = d;
  image_ = AlgebraCtx::leavitt(ext_->graph, c);
}

AlgebraElement CornerMap::map(const AlgebraElement& a) const {
  AlgebraElement out;
  for (const auto& [m, c] : a.terms())
    out += normalize_monomial(image_, m.tree, m.marker, c);
  return out;
}

QBasisElement CornerMap::decode(const Monomial& m) const {
  if (!ext_->is_base_vertex(m.tree.root()))
    throw DomainError("corner: monomial rooted at an added sink");
  for (Letter l : m.marker.letters)
    if (ext_->is_added_edge(l.edge))
      throw DomainError("corner: marker through an added edge");
  ETree t(m.tree.root());
  std::vector<std::pair<Word, BlockRef>> blocks;
  for (const Word& w : m.tree.nodes()) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
      if (ext_->is_added_edge(w[i].edge))
        throw DomainError("corner: tree continues past an added edge");
    if (!w.empty() && !w.back().inv && ext_->is_added_edge(w.back().edge)) {
      blocks.emplace_back(Word(w.begin(), w.end() - 1),
                          ext_->graph.block_of(w.back().edge));
    } else {
      if (!w.empty() && ext_->is_added_edge(w.back().edge))
        throw DomainError("corner: inverse added letter in a tree node");
      t.add_word(split_anchor(w).first);
    }
  }
  return {make_blocked(*base_->graph, std::move(t), std::move(blocks)),
          m.marker};
}

AlgebraElement CornerMap::inverse(const AlgebraElement& a) const {
  AlgebraElement out;
  for (const auto& [m, c] : a.terms())
    out += c * q_basis_expand(*base_, decode(m));
  return out;
}

QMembership q_membership(const AlgebraCtx& ctx, const AlgebraElement& a) {
  CornerMap corner(ctx);
  QMembership r;
  r.witness = corner.map(a);
  r.member = true;
  for (const auto& [m, c] : r.witness.terms()) {
    bool reaches_added = false;
    for (const Word& w : m.tree.nodes())
      for (Letter l : w)
        if (corner.extension().is_added_edge(l.edge)) {
          reaches_added = true;
          break;
        }
    if (!reaches_added) {
      r.member = false;
      break;
    }
  }
  return r;
}

}  // namespace septree
