#include "septree/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>

namespace septree {

namespace {

ChoiceFunction merge_choice(const SeparatedGraph& g, const ChoiceFunction& user) {
  ChoiceFunction c = default_choice(g);
  for (const auto& [b, e] : user) {
    if (b.vertex < 0 || b.vertex >= g.vertex_count() || b.index < 0 ||
        b.index >= g.block_count(b.vertex))
      throw DomainError("choice: unknown block");
    const auto& edges = g.block_edges(b);
    if (std::find(edges.begin(), edges.end(), e) == edges.end())
      throw DomainError("choice: edge does not belong to the block");
    c[b] = e;
  }
  return c;
}

ETree remove_leaf(const ETree& t, const Word& w) {
  ETree out(t.root());
  for (const Word& u : t.nodes())
    if (u != w) out.add_word(u);
  return out;
}

// Deepest (then lexicographically least) non-marker leaf ending in the
// chosen edge of a complete block of size >= 2.
std::optional<Word> expansion_leaf(const AlgebraCtx& ctx, const ETree& t,
                                   const Word& exempt) {
  const SeparatedGraph& g = *ctx.graph;
  std::optional<Word> best;
  for (const Word& w : t.max_elements()) {
    if (w.empty() || w == exempt) continue;
    Letter l = w.back();
    if (l.inv) continue;
    BlockRef b = g.block_of(l.edge);
    if (!ctx.block_complete(b)) continue;
    if (g.block_edges(b).size() < 2) continue;
    if (ctx.choice.at(b) != l.edge) continue;
    if (!best || w.size() > best->size() ||
        (w.size() == best->size() && w < *best))
      best = w;
  }
  return best;
}

}  // namespace

AlgebraCtx AlgebraCtx::cohn(const SeparatedGraph& g) {
  AlgebraCtx ctx;
  ctx.graph = &g;
  ctx.mode = AlgebraMode::cohn;
  ctx.choice = default_choice(g);
  ctx.regime = Regime::cohn();
  return ctx;
}

AlgebraCtx AlgebraCtx::leavitt(const SeparatedGraph& g, ChoiceFunction choice) {
  AlgebraCtx ctx;
  ctx.graph = &g;
  ctx.mode = AlgebraMode::leavitt;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (int b = 0; b < g.block_count(v); ++b)
      ctx.S.insert(BlockRef{v, b});
  ctx.choice = merge_choice(g, choice);
  ctx.regime = Regime::leavitt(g);
  return ctx;
}

AlgebraCtx AlgebraCtx::cl(const SeparatedGraph& g, std::set<BlockRef> S,
                          ChoiceFunction choice) {
  for (const BlockRef& b : S)
    if (b.vertex < 0 || b.vertex >= g.vertex_count() || b.index < 0 ||
        b.index >= g.block_count(b.vertex))
      throw DomainError("cl: unknown block");
  AlgebraCtx ctx;
  ctx.graph = &g;
  ctx.mode = AlgebraMode::cl;
  ctx.S = std::move(S);
  ctx.choice = merge_choice(g, choice);
  ctx.regime = Regime::cl(g, ctx.S);
  return ctx;
}

bool AlgebraCtx::block_complete(const BlockRef& b) const {
  switch (mode) {
    case AlgebraMode::cohn: return false;
    case AlgebraMode::leavitt: return true;
    case AlgebraMode::cl: return S.count(b) > 0;
  }
  return false;
}

void AlgebraElement::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(std::move(m), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

AlgebraElement normalize_monomial(const AlgebraCtx& ctx, const ETree& t,
                                  const Path& marker, const Rational& c) {
  AlgebraElement out;
  if (c == 0) return out;
  const SeparatedGraph& g = *ctx.graph;
  SgValue seed = make_element(g, ctx.regime, t, marker);
  if (!seed) return out;
  const Path& mk = seed->marker;
  Word exempt = marker_head(g, ctx.regime, mk).letters;

  struct Item {
    ETree tree;
    Rational coeff;
  };
  std::deque<Item> work;
  work.push_back({seed->tree, c});
  while (!work.empty()) {
    Item item = std::move(work.front());
    work.pop_front();
    std::optional<Word> leaf = expansion_leaf(ctx, item.tree, exempt);
    if (!leaf) {
      out.add_term(Monomial{std::move(item.tree), mk}, item.coeff);
      continue;
    }
    ETree base = remove_leaf(item.tree, *leaf);
    Word parent(leaf->begin(), leaf->end() - 1);
    BlockRef b = g.block_of(leaf->back().edge);
    work.push_back({reduce_tree(g, base, ctx.regime.U), item.coeff});
    for (EdgeId x : g.block_edges(b)) {
      if (x == leaf->back().edge) continue;
      ETree sib = base;
      Word node = parent;
      node.push_back(pos(x));
      sib.add_word(node);
      assert(is_c_compatible(g, sib));
      work.push_back({std::move(sib), -item.coeff});
    }
  }
  return out;
}

AlgebraElement normalize(const AlgebraCtx& ctx, const AlgebraElement& a) {
  AlgebraElement out;
  for (const auto& [m, c] : a.terms())
    out += normalize_monomial(ctx, m.tree, m.marker, c);
  return out;
}

AlgebraElement algebra_multiply(const AlgebraCtx& ctx, const AlgebraElement& a,
                                const AlgebraElement& b) {
  AlgebraElement out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      SgValue p = sg_multiply(*ctx.graph, ctx.regime, SgElement{ma.tree, ma.marker},
                              SgElement{mb.tree, mb.marker});
      if (!p) continue;
      out += normalize_monomial(ctx, p->tree, p->marker, ca * cb);
    }
  return out;
}

AlgebraElement star(const AlgebraCtx& ctx, const AlgebraElement& a) {
  AlgebraElement out;
  for (const auto& [m, c] : a.terms()) {
    SgValue v = sg_invert(*ctx.graph, ctx.regime, SgElement{m.tree, m.marker});
    assert(v);
    out += normalize_monomial(ctx, v->tree, v->marker, c);
  }
  return out;
}

AlgebraElement iota(const AlgebraCtx& ctx, const SgValue& v) {
  if (!v) return {};
  return normalize_monomial(ctx, v->tree, v->marker, 1);
}

AlgebraElement vertex_element(const AlgebraCtx& ctx, VertexId v) {
  return normalize_monomial(ctx, ETree(v), trivial_path(v), 1);
}

AlgebraElement path_algebra_element(const AlgebraCtx& ctx, const Path& p) {
  return normalize_monomial(ctx, tree_of_path(*ctx.graph, p), p, 1);
}

AlgebraElement idempotent_element(const AlgebraCtx& ctx, const ETree& t) {
  return normalize_monomial(ctx, t, trivial_path(t.root()), 1);
}

AlgebraElement zel(const AlgebraCtx& ctx, const Path& lambda, const Path& mu) {
  const SeparatedGraph& g = *ctx.graph;
  if (range(g, lambda) != range(g, mu))
    throw DomainError("zel: paths must share their range");
  Path marker = *compose(g, lambda, invert_path(g, mu));
  return normalize_monomial(ctx, tree_of_path(g, lambda), marker, 1);
}

bool zel_crosscheck(const AlgebraCtx& ctx, const Path& lambda, const Path& mu) {
  AlgebraElement direct = zel(ctx, lambda, mu);
  AlgebraElement routed = algebra_multiply(ctx, path_algebra_element(ctx, lambda),
                                           star(ctx, path_algebra_element(ctx, mu)));
  return direct == routed;
}

bool iota_injectivity_check(const AlgebraCtx& ctx, int max_edges,
                            std::string* failure) {
  const SeparatedGraph& g = *ctx.graph;
  std::set<SgElement> elems;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (const ETree& t : enumerate_trees(g, v, max_edges, true))
      for (const Word& w : t.nodes()) {
        SgValue e = make_element(g, ctx.regime, t, path_of_word(v, w));
        if (e) elems.insert(*e);
      }
  std::map<AlgebraElement::Terms, SgElement> images;
  for (const SgElement& e : elems) {
    AlgebraElement img = iota(ctx, e);
    if (img.is_zero()) {
      if (failure) *failure = "nonzero element maps to zero";
      return false;
    }
    auto [it, fresh] = images.try_emplace(img.terms(), e);
    if (!fresh) {
      if (failure) *failure = "two distinct elements share a normal form";
      return false;
    }
  }
  return true;
}

std::vector<Monomial> algebra_basis(const AlgebraCtx& ctx, int bound) {
  const SeparatedGraph& g = *ctx.graph;
  std::set<Monomial> out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (const ETree& t : enumerate_trees(g, v, bound, true)) {
      if (reduce_tree(g, t, ctx.regime.U) != t) continue;
      std::function<void(Path&, int)> grow = [&](Path& p, int added) {
        SgValue e = make_element(g, ctx.regime, t, p);
        if (e && e->tree == t) {
          Word m = marker_head(g, ctx.regime, p).letters;
          if (!expansion_leaf(ctx, t, m)) out.insert(Monomial{t, p});
        }
        VertexId at = range(g, p);
        for (EdgeId ed = 0; ed < g.edge_count(); ++ed)
          for (bool inv : {false, true}) {
            Letter l{ed, inv};
            if (letter_src(g, l) != at) continue;
            if (!p.letters.empty() &&
                (!reduced_pair(p.letters.back(), l) ||
                 separation_violation(g, p.letters.back(), l)))
              continue;
            p.letters.push_back(l);
            int nadded = added + (t.contains(p.letters) ? 0 : 1);
            if (t.total_length() + nadded <= bound) grow(p, nadded);
            p.letters.pop_back();
          }
      };
      Path p = trivial_path(v);
      grow(p, 0);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace septree
