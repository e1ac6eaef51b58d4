#include "septree/oracle.hpp"

#include <bit>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace septree {

bool compatible_by_pairs(const SeparatedGraph& g, const ETree& t) {
  const auto& nodes = t.nodes();
  for (const Word& a : nodes) {
    for (const Word& b : nodes) {
      std::optional<Path> geo =
          compose(g, invert_path(g, t.node_path(a)), t.node_path(b));
      assert(geo.has_value());
      if (!is_c_separated(g, *geo)) return false;
    }
  }
  return true;
}

std::optional<Path> compose_naive(const SeparatedGraph& g, const Path& a, const Path& b) {
  if (range(g, a) != source(b)) return std::nullopt;
  Word w = a.letters;
  w.insert(w.end(), b.letters.begin(), b.letters.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i + 1] == inverse(w[i])) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i),
                w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return Path{a.root, std::move(w)};
}

// ---- Symbol-word encoding --------------------------------------------------

int unit_code(const SeparatedGraph& g, VertexId v) {
  assert(v >= 0 && v < g.vertex_count());
  return v;
}

int letter_code(const SeparatedGraph& g, Letter l) {
  return g.vertex_count() + 2 * l.edge + (l.inv ? 1 : 0);
}

bool code_is_unit(const SeparatedGraph& g, int code) {
  return code < g.vertex_count();
}

Letter code_letter(const SeparatedGraph& g, int code) {
  assert(!code_is_unit(g, code));
  int k = code - g.vertex_count();
  return Letter{static_cast<EdgeId>(k / 2), (k % 2) != 0};
}

VertexId code_src(const SeparatedGraph& g, int code) {
  if (code_is_unit(g, code)) return code;
  return letter_src(g, code_letter(g, code));
}

VertexId code_dst(const SeparatedGraph& g, int code) {
  if (code_is_unit(g, code)) return code;
  return letter_dst(g, code_letter(g, code));
}

std::string code_name(const SeparatedGraph& g, int code) {
  if (code_is_unit(g, code)) return g.vertex_name(code);
  Letter l = code_letter(g, code);
  return g.edge_name(l.edge) + (l.inv ? "~" : "");
}

CcWord word_of_element(const SeparatedGraph& g, const SgValue& v) {
  if (!v) return {};
  CcWord w{unit_code(g, v->tree.root())};
  std::function<void(const Word&)> dfs = [&](const Word& node) {
    for (Letter l : v->tree.children(node)) {
      w.push_back(letter_code(g, l));
      Word child = node;
      child.push_back(l);
      dfs(child);
      w.push_back(letter_code(g, inverse(l)));
    }
  };
  dfs(Word{});
  for (Letter l : v->marker.letters) w.push_back(letter_code(g, l));
  return w;
}

CcWord word_of_path(const SeparatedGraph& g, const Path& p) {
  CcWord w{unit_code(g, p.root)};
  for (Letter l : p.letters) w.push_back(letter_code(g, l));
  return w;
}

CcWord concat_words(const CcWord& a, const CcWord& b) {
  if (a.empty() || b.empty()) return {};
  CcWord w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// ---- Prefix-trace evaluation ----------------------------------------------

SgValue prefix_trace(const SeparatedGraph& g, const Regime& r, const CcWord& w) {
  if (w.empty()) return std::nullopt;
  VertexId root = code_src(g, w.front());
  Path cur{root, {}};
  ETree visited(root);
  for (int code : w) {
    if (code_src(g, code) != range(g, cur)) return std::nullopt;
    if (code_is_unit(g, code)) continue;
    Letter l = code_letter(g, code);
    if (!cur.letters.empty() && cur.letters.back() == inverse(l))
      cur.letters.pop_back();
    else
      cur.letters.push_back(l);
    visited.add_word(cur.letters);
  }
  return make_element(g, r, visited, cur);
}

SgValue prefix_trace_letters(const SeparatedGraph& g, const Regime& r, VertexId root,
                             const Word& letters) {
  CcWord w{unit_code(g, root)};
  for (Letter l : letters) w.push_back(letter_code(g, l));
  return prefix_trace(g, r, w);
}

// ---- Bounded congruence closure ---------------------------------------------

CongruenceOracle::CongruenceOracle(const SeparatedGraph& g, const Regime& r,
                                   int max_len, size_t node_cap)
    : g_(g), r_(r), max_len_(max_len), node_cap_(node_cap) {
  unsigned top = static_cast<unsigned>(g.vertex_count() + 2 * g.edge_count());
  bits_ = static_cast<unsigned>(std::bit_width(top + 1));
  if (max_len_ < 1 || max_len_ > static_cast<int>(64 / bits_))
    throw DomainError("congruence oracle: length bound does not fit the word packing");
}

std::uint64_t CongruenceOracle::pack(const CcWord& w) const {
  assert(static_cast<int>(w.size()) <= max_len_);
  std::uint64_t key = 0;
  for (size_t i = 0; i < w.size(); ++i)
    key |= static_cast<std::uint64_t>(w[i] + 1) << (bits_ * i);
  return key;
}

bool CongruenceOracle::is_zero_seed(const CcWord& w) const {
  if (w.empty()) return true;
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (code_dst(g_, w[i]) != code_src(g_, w[i + 1])) return true;
  return false;
}

namespace {

CcWord splice(const CcWord& w, size_t pos, size_t count, const CcWord& repl) {
  CcWord out;
  out.reserve(w.size() - count + repl.size());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), repl.begin(), repl.end());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + count), w.end());
  return out;
}

CcWord word_inverse(const SeparatedGraph& g, const CcWord& u) {
  CcWord out;
  out.reserve(u.size());
  for (auto it = u.rbegin(); it != u.rend(); ++it) {
    if (code_is_unit(g, *it))
      out.push_back(*it);
    else
      out.push_back(letter_code(g, inverse(code_letter(g, *it))));
  }
  return out;
}

}  // namespace

void CongruenceOracle::neighbors(const CcWord& w, std::vector<CcWord>& out,
                                 bool& zero) const {
  const size_t len = w.size();
  const int cap = max_len_;

  // Unit laws: drop a unit anywhere (when something remains), or insert the
  // junction's unit at any boundary.
  for (size_t i = 0; i < len; ++i)
    if (code_is_unit(g_, w[i]) && len > 1) out.push_back(splice(w, i, 1, {}));
  if (static_cast<int>(len) + 1 <= cap) {
    for (size_t j = 0; j <= len; ++j) {
      VertexId v = (j == 0) ? code_src(g_, w[0]) : code_dst(g_, w[j - 1]);
      out.push_back(splice(w, j, 0, {unit_code(g_, v)}));
    }
  }

  for (size_t i = 0; i < len; ++i) {
    bool unit_i = code_is_unit(g_, w[i]);

    // Backward-forward cancellation (pruning regimes) and its growth.
    if (r_.reduce) {
      if (!unit_i && i + 1 < len && !code_is_unit(g_, w[i + 1])) {
        Letter a = code_letter(g_, w[i]);
        Letter b = code_letter(g_, w[i + 1]);
        if (a.inv && !b.inv && a.edge == b.edge)
          out.push_back(splice(w, i, 2, {unit_code(g_, letter_dst(g_, b))}));
      }
      if (unit_i && static_cast<int>(len) + 1 <= cap) {
        for (EdgeId e = 0; e < g_.edge_count(); ++e)
          if (g_.dst(e) == w[i])
            out.push_back(splice(w, i, 1,
                                 {letter_code(g_, neg(e)), letter_code(g_, pos(e))}));
      }
    }

    // Forward-backward co-cancellation for the designated edges.
    if (!unit_i && i + 1 < len && !code_is_unit(g_, w[i + 1])) {
      Letter a = code_letter(g_, w[i]);
      Letter b = code_letter(g_, w[i + 1]);
      if (!a.inv && b.inv && a.edge == b.edge && r_.U.count(a.edge))
        out.push_back(splice(w, i, 2, {unit_code(g_, g_.src(a.edge))}));
      // Separation zero.
      if (r_.compat && a.inv && !b.inv && a.edge != b.edge &&
          g_.block_of(a.edge) == g_.block_of(b.edge))
        zero = true;
    }
    if (unit_i && static_cast<int>(len) + 1 <= cap) {
      for (EdgeId e : r_.U)
        if (g_.src(e) == w[i])
          out.push_back(splice(w, i, 1,
                               {letter_code(g_, pos(e)), letter_code(g_, neg(e))}));
    }
  }

  // u u~ u = u, applied in both directions for |u| <= 2.
  for (size_t ulen = 1; ulen <= 2; ++ulen) {
    for (size_t i = 0; i + ulen <= len; ++i) {
      CcWord u(w.begin() + static_cast<std::ptrdiff_t>(i),
               w.begin() + static_cast<std::ptrdiff_t>(i + ulen));
      CcWord ubar = word_inverse(g_, u);
      if (i + 3 * ulen <= len) {
        bool match = true;
        for (size_t k = 0; k < ulen && match; ++k) {
          if (w[i + ulen + k] != ubar[k] || w[i + 2 * ulen + k] != u[k]) match = false;
        }
        if (match) out.push_back(splice(w, i, 3 * ulen, u));
      }
      if (static_cast<int>(len + 2 * ulen) <= cap) {
        CcWord grown = u;
        grown.insert(grown.end(), ubar.begin(), ubar.end());
        grown.insert(grown.end(), u.begin(), u.end());
        out.push_back(splice(w, i, ulen, grown));
      }
    }
  }

  // Commuting adjacent single-letter idempotent pairs: x x~ y y~ -> y y~ x x~.
  for (size_t i = 0; i + 4 <= len; ++i) {
    if (code_is_unit(g_, w[i]) || code_is_unit(g_, w[i + 1]) ||
        code_is_unit(g_, w[i + 2]) || code_is_unit(g_, w[i + 3]))
      continue;
    Letter x = code_letter(g_, w[i]);
    Letter y = code_letter(g_, w[i + 2]);
    if (code_letter(g_, w[i + 1]) == inverse(x) &&
        code_letter(g_, w[i + 3]) == inverse(y))
      out.push_back(splice(w, i, 4, {w[i + 2], w[i + 3], w[i], w[i + 1]}));
  }
}

const CongruenceOracle::Component& CongruenceOracle::component(const CcWord& seed) const {
  if (is_zero_seed(seed)) return zero_comp_;
  if (static_cast<int>(seed.size()) > max_len_)
    throw DomainError("congruence oracle: seed exceeds the length bound");
  std::uint64_t seed_key = pack(seed);
  if (auto it = class_of_.find(seed_key); it != class_of_.end())
    return *comps_[static_cast<size_t>(it->second)];

  auto comp = std::make_unique<Component>();
  std::deque<CcWord> queue{seed};
  comp->keys.insert(seed_key);
  std::vector<CcWord> out;
  while (!queue.empty()) {
    CcWord w = queue.front();
    queue.pop_front();
    out.clear();
    bool zero = false;
    neighbors(w, out, zero);
    if (zero) comp->has_zero = true;
    for (CcWord& n : out) {
      if (comp->keys.insert(pack(n)).second) {
        if (comp->keys.size() > node_cap_)
          throw std::runtime_error("congruence oracle: component exceeded node cap");
        queue.push_back(std::move(n));
      }
    }
  }
  int idx = static_cast<int>(comps_.size());
  for (std::uint64_t k : comp->keys) class_of_.emplace(k, idx);
  comps_.push_back(std::move(comp));
  return *comps_.back();
}

bool CongruenceOracle::equal(const CcWord& a, const CcWord& b) const {
  bool za = is_zero_seed(a), zb = is_zero_seed(b);
  if (za && zb) return true;
  if (za) return component(b).has_zero;
  if (zb) return component(a).has_zero;
  const Component& ca = component(a);
  if (ca.keys.count(pack(b))) return true;
  if (!ca.has_zero) return false;
  return component(b).has_zero;
}

// ---- Literal relation rewriter ----------------------------------------------

namespace {

// Redex kinds for the literal rewriter.
enum RewriteKind {
  kZeroJunction,   // adjacent symbols do not compose: the term is zero
  kUnitMerge,      // drop a unit symbol
  kStarPair,       // x~ y within one block: r(x) if x == y, zero otherwise
  kChosenPair,     // e e~ at the chosen edge of a complete block
  kIdemSwap,       // x x~ y y~ -> y y~ x x~ when y sorts before x
  kSepSkipZero,    // x~ (balanced pairs) y with x != y in one block: zero
  kPairAbsorb,     // drop p p~ when a matching p~ (left) or p (right) is
                   // separated from it only by balanced pairs and units
  kTameShrink,     // u u~ u -> u for |u| <= 2
};

}  // namespace

LiteralRewriter::LiteralRewriter(const AlgebraCtx& ctx, std::uint64_t seed)
    : ctx_(ctx), rng_(seed) {}

std::vector<LiteralRewriter::Redex> LiteralRewriter::redexes(const CcWord& w) const {
  const SeparatedGraph& g = *ctx_.graph;
  std::vector<Redex> out;
  const size_t len = w.size();
  for (size_t i = 0; i < len; ++i) {
    if (i + 1 < len && code_dst(g, w[i]) != code_src(g, w[i + 1])) {
      out.push_back({w, i, kZeroJunction});
      continue;
    }
    if (code_is_unit(g, w[i])) {
      // Dropping a unit is sound only when it composes with its left
      // neighbour; otherwise the junction redex must erase the term first.
      bool left_ok = i == 0 || code_dst(g, w[i - 1]) == w[i];
      if (len > 1 && left_ok) out.push_back({w, i, kUnitMerge});
      continue;
    }
    if (i + 1 < len && !code_is_unit(g, w[i + 1])) {
      Letter a = code_letter(g, w[i]);
      Letter b = code_letter(g, w[i + 1]);
      if (a.inv && !b.inv && g.block_of(a.edge) == g.block_of(b.edge))
        out.push_back({w, i, kStarPair});
      if (!a.inv && b.inv && a.edge == b.edge) {
        BlockRef blk = g.block_of(a.edge);
        if (ctx_.block_complete(blk) && ctx_.choice.at(blk) == a.edge)
          out.push_back({w, i, kChosenPair});
      }
    }
    // Separation zero across balanced idempotent pairs and units: the pairs
    // carry trivial markers, so the product's marker would contain x~ y.
    if (code_letter(g, w[i]).inv) {
      Letter a = code_letter(g, w[i]);
      size_t j = i + 1;
      while (j < len) {
        if (code_is_unit(g, w[j])) {
          ++j;
          continue;
        }
        Letter b = code_letter(g, w[j]);
        if (!b.inv && g.block_of(a.edge) == g.block_of(b.edge)) {
          if (b.edge != a.edge && j > i + 1)  // adjacent case is kStarPair
            out.push_back({w, i, kSepSkipZero});
          break;
        }
        if (j + 1 < len && !code_is_unit(g, w[j + 1]) &&
            code_letter(g, w[j + 1]) == inverse(b))
          j += 2;
        else
          break;
      }
    }
    // Adjacent idempotent pairs commute; swapping only towards sorted order
    // keeps the system terminating while letting separated-block zeros meet.
    if (i + 4 <= len && !code_is_unit(g, w[i + 1]) && !code_is_unit(g, w[i + 2]) &&
        !code_is_unit(g, w[i + 3]) && w[i + 2] < w[i]) {
      Letter x = code_letter(g, w[i]);
      Letter y = code_letter(g, w[i + 2]);
      if (code_letter(g, w[i + 1]) == inverse(x) &&
          code_letter(g, w[i + 3]) == inverse(y))
        out.push_back({w, i, kIdemSwap});
    }
    // A balanced pair is redundant when its branch is already walked by a
    // matching letter on either side, across balanced pairs and units only.
    if (i + 2 <= len && !code_is_unit(g, w[i + 1]) &&
        code_letter(g, w[i + 1]) == inverse(code_letter(g, w[i]))) {
      bool fire = false;
      for (size_t k = i; k > 0 && !fire;) {
        size_t m = k - 1;
        if (code_is_unit(g, w[m])) {
          k = m;
          continue;
        }
        if (w[m] == w[i + 1]) {
          fire = true;
          break;
        }
        if (m >= 1 && !code_is_unit(g, w[m - 1]) &&
            code_letter(g, w[m]) == inverse(code_letter(g, w[m - 1])))
          k = m - 1;
        else
          break;
      }
      for (size_t k = i + 2; k < len && !fire;) {
        if (code_is_unit(g, w[k])) {
          ++k;
          continue;
        }
        if (w[k] == w[i]) {
          fire = true;
          break;
        }
        if (k + 1 < len && !code_is_unit(g, w[k + 1]) &&
            code_letter(g, w[k + 1]) == inverse(code_letter(g, w[k])))
          k += 2;
        else
          break;
      }
      if (fire) out.push_back({w, i, kPairAbsorb});
    }
    for (size_t ulen = 1; ulen <= 2; ++ulen) {
      if (i + 3 * ulen > len) continue;
      CcWord u(w.begin() + static_cast<std::ptrdiff_t>(i),
               w.begin() + static_cast<std::ptrdiff_t>(i + ulen));
      CcWord ubar = word_inverse(g, u);
      bool match = true;
      for (size_t k = 0; k < ulen && match; ++k)
        if (w[i + ulen + k] != ubar[k] || w[i + 2 * ulen + k] != u[k]) match = false;
      if (match) out.push_back({w, i, kTameShrink + static_cast<int>(ulen) - 1});
    }
  }
  return out;
}

LiteralRewriter::Terms LiteralRewriter::rewrite(Terms input, int step_cap) {
  const SeparatedGraph& g = *ctx_.graph;
  auto add = [](Terms& terms, CcWord w, const Rational& c) {
    auto [it, fresh] = terms.try_emplace(std::move(w), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  };

  for (int step = 0; step < step_cap; ++step) {
    std::vector<Redex> all;
    for (const auto& [w, c] : input) {
      std::vector<Redex> rs = redexes(w);
      all.insert(all.end(), rs.begin(), rs.end());
    }
    if (all.empty()) return input;
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    const Redex r = all[pick(rng_)];
    const Rational c = input.at(r.word);
    input.erase(r.word);
    switch (r.kind) {
      case kZeroJunction:
        break;
      case kUnitMerge:
        add(input, splice(r.word, r.pos, 1, {}), c);
        break;
      case kStarPair: {
        Letter a = code_letter(g, r.word[r.pos]);
        Letter b = code_letter(g, r.word[r.pos + 1]);
        if (a.edge == b.edge)
          add(input, splice(r.word, r.pos, 2, {unit_code(g, g.dst(a.edge))}), c);
        break;
      }
      case kChosenPair: {
        Letter a = code_letter(g, r.word[r.pos]);
        add(input, splice(r.word, r.pos, 2, {unit_code(g, g.src(a.edge))}), c);
        for (EdgeId x : g.block_edges(g.block_of(a.edge))) {
          if (x == a.edge) continue;
          add(input,
              splice(r.word, r.pos, 2, {letter_code(g, pos(x)), letter_code(g, neg(x))}),
              -c);
        }
        break;
      }
      case kIdemSwap:
        add(input,
            splice(r.word, r.pos, 4,
                   {r.word[r.pos + 2], r.word[r.pos + 3], r.word[r.pos],
                    r.word[r.pos + 1]}),
            c);
        break;
      case kSepSkipZero:
        break;
      case kPairAbsorb:
        add(input, splice(r.word, r.pos, 2, {}), c);
        break;
      default: {
        size_t ulen = static_cast<size_t>(r.kind - kTameShrink) + 1;
        CcWord u(r.word.begin() + static_cast<std::ptrdiff_t>(r.pos),
                 r.word.begin() + static_cast<std::ptrdiff_t>(r.pos + ulen));
        add(input, splice(r.word, r.pos, 3 * ulen, u), c);
        break;
      }
    }
  }
  throw std::runtime_error("literal rewriter: step cap exceeded");
}

LiteralRewriter::Terms LiteralRewriter::term_of_element(const AlgebraElement& a) const {
  Terms out;
  for (const auto& [m, c] : a.terms())
    out[word_of_element(*ctx_.graph, SgElement{m.tree, m.marker})] += c;
  return out;
}

AlgebraElement LiteralRewriter::evaluate(const Terms& terms) const {
  const SeparatedGraph& g = *ctx_.graph;
  AlgebraElement total;
  for (const auto& [w, c] : terms) {
    assert(!w.empty());
    AlgebraElement acc;
    bool first = true;
    for (int code : w) {
      AlgebraElement sym =
          code_is_unit(g, code)
              ? vertex_element(ctx_, code)
              : path_algebra_element(ctx_, Path{letter_src(g, code_letter(g, code)),
                                                {code_letter(g, code)}});
      acc = first ? sym : algebra_multiply(ctx_, acc, sym);
      first = false;
    }
    total += c * acc;
  }
  return total;
}

// ---- Exact rank bookkeeping -------------------------------------------------

int RankChecker::coord(const Monomial& m) {
  auto [it, fresh] = coords_.try_emplace(m, static_cast<int>(coords_.size()));
  (void)fresh;
  return it->second;
}

bool RankChecker::insert(const AlgebraElement& a) {
  SparseRow row;
  for (const auto& [m, c] : a.terms()) row[coord(m)] = c;
  while (!row.empty()) {
    int lead = row.begin()->first;
    auto pivot = rows_.find(lead);
    if (pivot == rows_.end()) {
      Rational scale = row.begin()->second;
      for (auto& [k, v] : row) v /= scale;
      rows_.emplace(lead, std::move(row));
      return true;
    }
    Rational factor = row.begin()->second;
    for (const auto& [k, v] : pivot->second) {
      auto it = row.find(k);
      Rational next = (it == row.end() ? Rational(0) : it->second) - factor * v;
      if (next == 0) {
        if (it != row.end()) row.erase(it);
      } else if (it == row.end()) {
        row.emplace(k, std::move(next));
      } else {
        it->second = std::move(next);
      }
    }
  }
  return false;
}

bool RankChecker::in_span(const AlgebraElement& a) const {
  std::optional<SparseRow> row = reduce(a);
  return row.has_value() && row->empty();
}

std::optional<RankChecker::SparseRow> RankChecker::reduce(const AlgebraElement& a) const {
  SparseRow row;
  for (const auto& [m, c] : a.terms()) {
    auto it = coords_.find(m);
    if (it == coords_.end()) return std::nullopt;
    row[it->second] = c;
  }
  while (!row.empty()) {
    int lead = row.begin()->first;
    auto pivot = rows_.find(lead);
    if (pivot == rows_.end()) return row;
    Rational factor = row.begin()->second;
    for (const auto& [k, v] : pivot->second) {
      auto it = row.find(k);
      Rational next = (it == row.end() ? Rational(0) : it->second) - factor * v;
      if (next == 0) {
        if (it != row.end()) row.erase(it);
      } else if (it == row.end()) {
        row.emplace(k, std::move(next));
      } else {
        it->second = std::move(next);
      }
    }
  }
  return row;
}

}  // namespace septree
