#include "septree/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace septree {

bool ETree::contains(const Word& w) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), w);
}

void ETree::add_word(const Word& w) {
  for (size_t len = 0; len <= w.size(); ++len) {
    Word p(w.begin(), w.begin() + len);
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), p);
    if (it == nodes_.end() || *it != p) nodes_.insert(it, std::move(p));
  }
}

void ETree::add_path(const SeparatedGraph& g, const Path& p) {
  if (p.root != root_) throw DomainError("path rooted at a different vertex");
  if (!is_reduced_path(g, p)) throw DomainError("non-reduced path added to tree");
  add_word(p.letters);
}

std::vector<Word> ETree::max_elements() const {
  std::vector<Word> out;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    // In sorted order an extension of nodes_[i], if any exists, need not be
    // adjacent, so test for children directly.
    if (children(nodes_[i]).empty()) out.push_back(nodes_[i]);
  }
  return out;
}

std::vector<Letter> ETree::children(const Word& w) const {
  std::vector<Letter> out;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), w);
  for (; it != nodes_.end(); ++it) {
    if (it->size() < w.size() ||
        !std::equal(w.begin(), w.end(), it->begin()))
      break;
    if (it->size() == w.size() + 1) out.push_back(it->back());
  }
  return out;
}

ETree tree_of_path(const SeparatedGraph& g, const Path& p) {
  ETree t(p.root);
  t.add_path(g, p);
  return t;
}

ETree tree_union(const ETree& a, const ETree& b) {
  if (a.root() != b.root()) throw DomainError("union of trees with different roots");
  ETree out = a;
  for (const Word& w : b.nodes()) out.add_word(w);
  return out;
}

ETree translate_tree(const SeparatedGraph& g, const Path& p, const ETree& t) {
  if (range(g, p) != t.root()) throw DomainError("translate: range/root mismatch");
  Word pinv;
  for (auto it = p.letters.rbegin(); it != p.letters.rend(); ++it)
    pinv.push_back(inverse(*it));
  if (!t.contains(pinv))
    throw DomainError("translate: inverse of the translating path not in tree");
  ETree out(p.root);
  for (const Word& w : t.nodes()) {
    Path moved = *compose(g, p, t.node_path(w));
    out.add_word(moved.letters);
  }
  return out;
}

bool is_valid_tree(const SeparatedGraph& g, const ETree& t) {
  if (t.root() < 0 || t.root() >= g.vertex_count()) return false;
  for (const Word& w : t.nodes())
    if (!is_reduced_path(g, t.node_path(w))) return false;
  return true;
}

bool is_c_compatible(const SeparatedGraph& g, const ETree& t) {
  for (const Word& w : t.nodes()) {
    if (!is_c_separated(g, t.node_path(w))) return false;
    std::vector<Letter> kids = t.children(w);
    for (size_t i = 0; i < kids.size(); ++i) {
      if (kids[i].inv) continue;
      for (size_t j = i + 1; j < kids.size(); ++j) {
        if (kids[j].inv) continue;
        if (g.block_of(kids[i].edge) == g.block_of(kids[j].edge)) return false;
      }
    }
  }
  return true;
}

ETree reduce_tree(const SeparatedGraph& g, const ETree& t, const std::set<EdgeId>& U) {
  (void)g;
  std::set<Word> live(t.nodes().begin(), t.nodes().end());
  // Iteratively prune leaves whose incoming letter is backward or lies in U.
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Word> prunable;
    for (const Word& w : live) {
      if (w.empty()) continue;
      Letter last = w.back();
      if (!last.inv && !U.count(last.edge)) continue;
      // Extensions of w, if any, sort immediately after it.
      auto nx = live.upper_bound(w);
      bool leaf = !(nx != live.end() && nx->size() > w.size() &&
                    std::equal(w.begin(), w.end(), nx->begin()));
      if (leaf) prunable.push_back(w);
    }
    for (const Word& w : prunable) {
      live.erase(w);
      changed = true;
    }
  }
  ETree out(t.root());
  for (const Word& w : live) out.add_word(w);
  return out;
}

TreeClass classify(const SeparatedGraph& g, const ETree& t) {
  TreeClass c;
  c.in_y = is_c_compatible(g, t);
  if (!c.in_y) return c;
  c.in_y0 = true;
  c.in_yl = true;
  for (const Word& w : t.max_elements()) {
    if (w.empty()) continue;
    Letter last = w.back();
    if (last.inv) {
      c.in_y0 = false;
      c.in_yl = false;
    } else if (g.is_singleton_block(last.edge)) {
      c.in_yl = false;
    }
  }
  return c;
}

bool in_ys(const SeparatedGraph& g, const ETree& t, const std::set<BlockRef>& S) {
  if (!is_c_compatible(g, t)) return false;
  for (const Word& w : t.max_elements()) {
    if (w.empty()) continue;
    Letter last = w.back();
    if (last.inv) return false;
    if (!last.inv && g.is_singleton_block(last.edge) &&
        S.count(g.block_of(last.edge)))
      return false;
  }
  return true;
}

// ---- Walk engine ----------------------------------------------------------

namespace {

struct WalkSpec {
  bool singleton_steps;   // allow forward singleton-block edges as inner letters
  bool final_big_blocks;  // accepting letter must lie in a block of size >= 2
};

bool junction_ok(const SeparatedGraph& g, Letter a, Letter b) {
  return reduced_pair(a, b) && !separation_violation(g, a, b);
}

// Valid first letters out of tree node `w`: leave the tree, stay reduced
// and separated against the node's last letter, and (for a forward letter)
// avoid a block clash with the node's existing forward children.
bool first_step_ok(const SeparatedGraph& g, const ETree& t, const Word& w, Letter l) {
  Word next = w;
  next.push_back(l);
  if (t.contains(next)) return false;
  if (!w.empty() && !junction_ok(g, w.back(), l)) return false;
  if (!l.inv) {
    for (Letter c : t.children(w))
      if (!c.inv && g.block_of(c.edge) == g.block_of(l.edge)) return false;
  }
  return true;
}

bool is_inner_letter(const SeparatedGraph& g, const WalkSpec& spec, Letter l) {
  if (l.inv) return true;
  return spec.singleton_steps && g.is_singleton_block(l.edge);
}

bool is_final_letter(const SeparatedGraph& g, const WalkSpec& spec, Letter l) {
  if (l.inv) return false;
  if (spec.final_big_blocks) return g.block_edges(g.block_of(l.edge)).size() >= 2;
  return true;
}

// State of the automaton after at least one inner letter: the vertex we
// stand at and the letter we just consumed.
struct State {
  VertexId at;
  Letter last;
  auto operator<=>(const State&) const = default;
};

WalkResult run_walk(const SeparatedGraph& g, const ETree& t, const WalkSpec& spec, int cap) {
  std::vector<Letter> all_letters;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    all_letters.push_back(pos(e));
    all_letters.push_back(neg(e));
  }

  // Inner transition graph over states.
  std::map<State, std::vector<State>> succ;
  std::set<State> states;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    for (bool inv : {false, true}) {
      Letter l{e, inv};
      if (!is_inner_letter(g, spec, l) && !is_final_letter(g, spec, l)) continue;
      states.insert({letter_dst(g, l), l});
    }
  for (const State& s : states) {
    auto& vec = succ[s];
    for (Letter m : all_letters) {
      if (!is_inner_letter(g, spec, m)) continue;
      if (letter_src(g, m) != s.at) continue;
      if (!junction_ok(g, s.last, m)) continue;
      vec.push_back({letter_dst(g, m), m});
    }
  }
  auto can_accept = [&](const State& s) {
    for (Letter y : all_letters)
      if (is_final_letter(g, spec, y) && letter_src(g, y) == s.at &&
          junction_ok(g, s.last, y))
        return true;
    return false;
  };

  // Start states: one inner first step out of any tree node.
  std::set<State> start;
  std::vector<std::pair<Word, Letter>> immediate;  // node + accepting first step
  for (const Word& w : t.nodes()) {
    VertexId at = range(g, t.node_path(w));
    for (Letter l : all_letters) {
      if (letter_src(g, l) != at) continue;
      if (!first_step_ok(g, t, w, l)) continue;
      if (is_final_letter(g, spec, l)) immediate.push_back({w, l});
      if (is_inner_letter(g, spec, l)) start.insert({letter_dst(g, l), l});
    }
  }

  // Reachable states.
  std::set<State> reach = start;
  {
    std::vector<State> stack(start.begin(), start.end());
    while (!stack.empty()) {
      State s = stack.back();
      stack.pop_back();
      for (const State& n : succ[s])
        if (reach.insert(n).second) stack.push_back(n);
    }
  }
  // Productive states: can still reach acceptance.
  std::set<State> productive;
  {
    std::map<State, std::vector<State>> pred;
    for (const auto& [s, ns] : succ)
      for (const State& n : ns) pred[n].push_back(s);
    std::vector<State> stack;
    for (const State& s : states)
      if (can_accept(s)) {
        productive.insert(s);
        stack.push_back(s);
      }
    while (!stack.empty()) {
      State s = stack.back();
      stack.pop_back();
      for (const State& p : pred[s])
        if (productive.insert(p).second) stack.push_back(p);
    }
  }
  // Trim = reachable and productive; a cycle inside means infinitely many
  // accepted words.
  std::set<State> trim;
  for (const State& s : reach)
    if (productive.count(s)) trim.insert(s);
  bool infinite = false;
  {
    std::map<State, int> color;  // 0 unseen, 1 on stack, 2 done
    std::function<bool(const State&)> dfs = [&](const State& s) {
      color[s] = 1;
      for (const State& n : succ[s]) {
        if (!trim.count(n)) continue;
        if (color[n] == 1) return true;
        if (color[n] == 0 && dfs(n)) return true;
      }
      color[s] = 2;
      return false;
    };
    for (const State& s : trim)
      if (color[s] == 0 && dfs(s)) {
        infinite = true;
        break;
      }
  }

  WalkResult res;
  res.finite = !infinite;
  // Enumerate: BFS over (node, suffix, state) by suffix length; when finite
  // the trim graph is acyclic so this terminates on its own.
  std::set<Path> found;
  for (const auto& [w, y] : immediate) {
    Word suf = w;
    suf.push_back(y);
    found.insert(Path{t.root(), suf});
  }
  struct Item {
    Word word;       // node + inner letters so far
    int suffix_len;  // inner letters consumed so far
    State st;
  };
  std::queue<Item> q;
  for (const Word& w : t.nodes()) {
    VertexId at = range(g, t.node_path(w));
    for (Letter l : all_letters) {
      if (letter_src(g, l) != at || !is_inner_letter(g, spec, l)) continue;
      if (!first_step_ok(g, t, w, l)) continue;
      State s{letter_dst(g, l), l};
      if (!trim.count(s)) continue;
      Word word = w;
      word.push_back(l);
      q.push({word, 1, s});
    }
  }
  while (!q.empty()) {
    Item it = q.front();
    q.pop();
    // Accepted paths have suffix length suffix_len + 1.
    if (res.finite || it.suffix_len + 1 <= cap) {
      for (Letter y : all_letters) {
        if (!is_final_letter(g, spec, y) || letter_src(g, y) != it.st.at) continue;
        if (!junction_ok(g, it.st.last, y)) continue;
        Word suf = it.word;
        suf.push_back(y);
        found.insert(Path{t.root(), suf});
      }
    }
    if (!res.finite && it.suffix_len + 1 >= cap) continue;
    for (const State& n : succ[it.st]) {
      if (!trim.count(n)) continue;
      Word word = it.word;
      word.push_back(n.last);
      q.push({word, it.suffix_len + 1, n});
    }
  }
  res.elements.assign(found.begin(), found.end());
  return res;
}

}  // namespace

WalkResult neighborhood(const SeparatedGraph& g, const ETree& t, int cap) {
  return run_walk(g, t, WalkSpec{false, false}, cap);
}

WalkResult exits(const SeparatedGraph& g, const ETree& t, int cap) {
  return run_walk(g, t, WalkSpec{true, true}, cap);
}

bool is_neighborhood_element(const SeparatedGraph& g, const ETree& t, const Path& p) {
  if (p.root != t.root() || p.trivial()) return false;
  if (!is_reduced_path(g, p) || !is_c_separated(g, p)) return false;
  if (t.contains(p.letters)) return false;
  // Longest prefix inside the tree, then inverse letters, then one forward.
  size_t k = p.letters.size();
  while (k > 0 && !t.contains(Word(p.letters.begin(), p.letters.begin() + k))) --k;
  if (k + 1 > p.letters.size()) return false;
  for (size_t i = k; i + 1 < p.letters.size(); ++i)
    if (!p.letters[i].inv) return false;
  if (p.letters.back().inv) return false;
  ETree grown = t;
  grown.add_word(p.letters);
  return is_c_compatible(g, grown);
}

std::vector<ETree> enumerate_trees(const SeparatedGraph& g, VertexId root,
                                   int max_edges, bool compatible_only) {
  std::vector<ETree> out;
  ETree seed(root);
  // Grow by appending nodes in increasing word order; each tree is then
  // produced exactly once.
  std::function<void(const ETree&)> grow = [&](const ETree& t) {
    out.push_back(t);
    if (t.total_length() >= max_edges) return;
    const Word& last = t.nodes().back();
    for (const Word& w : t.nodes()) {
      VertexId at = range(g, t.node_path(w));
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        for (bool inv : {false, true}) {
          Letter l{e, inv};
          if (letter_src(g, l) != at) continue;
          if (!w.empty() && !reduced_pair(w.back(), l)) continue;
          Word nw = w;
          nw.push_back(l);
          if (!(last < nw) || t.contains(nw)) continue;
          if (compatible_only) {
            Path np{root, nw};
            if (!is_c_separated(g, np)) continue;
            bool clash = false;
            if (!l.inv)
              for (Letter c : t.children(w))
                if (!c.inv && c != l && g.block_of(c.edge) == g.block_of(l.edge))
                  clash = true;
            if (clash) continue;
          }
          ETree nt = t;
          nt.add_word(nw);
          grow(nt);
        }
    }
  };
  grow(seed);
  return out;
}

std::vector<Path> enumerate_paths(const SeparatedGraph& g, VertexId root, int max_len) {
  std::vector<Path> out;
  std::function<void(Path&)> grow = [&](Path& p) {
    out.push_back(p);
    if (p.length() >= max_len) return;
    VertexId at = range(g, p);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      for (bool inv : {false, true}) {
        Letter l{e, inv};
        if (letter_src(g, l) != at) continue;
        if (!p.letters.empty() && (!reduced_pair(p.letters.back(), l) ||
                                   separation_violation(g, p.letters.back(), l)))
          continue;
        p.letters.push_back(l);
        grow(p);
        p.letters.pop_back();
      }
  };
  Path p = trivial_path(root);
  grow(p);
  return out;
}

}  // namespace septree
