#include "septree/semigroup.hpp"

#include <cassert>

namespace septree {

namespace {

ETree regime_reduce(const SeparatedGraph& g, const Regime& r, const ETree& t) {
  return r.reduce ? reduce_tree(g, t, r.U) : t;
}

}  // namespace

Path marker_head(const SeparatedGraph& g, const Regime& r, const Path& marker) {
  if (!r.reduce) return marker;
  return decompose(g, marker, r.U).first;
}

SgValue make_element(const SeparatedGraph& g, const Regime& r, const ETree& t,
                     const Path& marker) {
  if (t.root() != marker.root)
    throw DomainError("element: marker does not start at the tree root");
  if (!is_reduced_path(g, marker)) throw DomainError("element: marker not reduced");
  if (!is_valid_tree(g, t)) throw DomainError("element: invalid tree");
  ETree grown = t;
  grown.add_word(marker.letters);
  if (r.compat && !is_c_compatible(g, grown)) return std::nullopt;
  ETree reduced = regime_reduce(g, r, grown);
  assert(reduced.contains(marker_head(g, r, marker).letters));
  return SgElement{std::move(reduced), marker};
}

SgValue sg_idempotent(const SeparatedGraph& g, const Regime& r, const ETree& t) {
  return make_element(g, r, t, trivial_path(t.root()));
}

SgValue sg_multiply(const SeparatedGraph& g, const Regime& r, const SgValue& a,
                    const SgValue& b) {
  if (!a || !b) return std::nullopt;
  if (range(g, a->marker) != b->tree.root()) return std::nullopt;
  ETree grown = a->tree;
  grown.add_word(a->marker.letters);
  for (const Word& w : b->tree.nodes()) {
    Path moved = *compose(g, a->marker, b->tree.node_path(w));
    grown.add_word(moved.letters);
  }
  Path marker = *compose(g, a->marker, b->marker);
  grown.add_word(marker.letters);
  if (r.compat && !is_c_compatible(g, grown)) return std::nullopt;
  ETree reduced = regime_reduce(g, r, grown);
  assert(reduced.contains(marker_head(g, r, marker).letters));
  return SgElement{std::move(reduced), std::move(marker)};
}

SgValue sg_invert(const SeparatedGraph& g, const Regime& r, const SgValue& a) {
  if (!a) return std::nullopt;
  ETree grown = a->tree;
  grown.add_word(a->marker.letters);
  Path inv = invert_path(g, a->marker);
  ETree moved = translate_tree(g, inv, grown);
  if (r.compat && !is_c_compatible(g, moved)) return std::nullopt;
  ETree reduced = regime_reduce(g, r, moved);
  assert(reduced.contains(marker_head(g, r, inv).letters));
  return SgElement{std::move(reduced), std::move(inv)};
}

bool natural_leq(const SeparatedGraph& g, const Regime& r, const SgValue& a,
                 const SgValue& b) {
  if (!a) return true;
  if (!b) return false;
  SgValue dom = sg_multiply(g, r, sg_invert(g, r, a), a);
  return sg_multiply(g, r, b, dom) == a;
}

bool is_idempotent_element(const SgValue& a) { return !a || a->marker.trivial(); }

std::optional<ETree> theta(const SeparatedGraph& g, const Regime& r, const Path& p,
                           const ETree& t) {
  if (range(g, p) != t.root()) throw DomainError("theta: tree not rooted at range of path");
  Path pinv = invert_path(g, p);
  if (!t.contains(marker_head(g, r, pinv).letters)) return std::nullopt;
  ETree grown = t;
  grown.add_word(pinv.letters);
  if (r.compat && !is_c_compatible(g, grown)) return std::nullopt;
  ETree moved = translate_tree(g, p, grown);
  return regime_reduce(g, r, moved);
}

}  // namespace septree
