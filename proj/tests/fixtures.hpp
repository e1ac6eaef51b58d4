#pragma once

#include <string>
#include <vector>

#include "septree/graph.hpp"
#include "septree/path.hpp"
#include "septree/tree.hpp"

namespace fixtures {

using namespace septree;

// u --a--> w, one singleton block at u.
inline SeparatedGraph arrow() {
  SeparatedGraph g;
  VertexId u = g.add_vertex("u");
  VertexId w = g.add_vertex("w");
  EdgeId a = g.add_edge("a", u, w);
  g.set_partition(u, {{a}});
  g.set_partition(w, {});
  return g;
}

// u --a--> v --b--> w, singleton blocks everywhere.
inline SeparatedGraph line3() {
  SeparatedGraph g;
  VertexId u = g.add_vertex("u");
  VertexId v = g.add_vertex("v");
  VertexId w = g.add_vertex("w");
  EdgeId a = g.add_edge("a", u, v);
  EdgeId b = g.add_edge("b", v, w);
  g.set_partition(u, {{a}});
  g.set_partition(v, {{b}});
  g.set_partition(w, {});
  return g;
}

// One vertex, two loops in separate blocks.
inline SeparatedGraph cuntz2_free() {
  SeparatedGraph g;
  VertexId v = g.add_vertex("v");
  EdgeId a = g.add_edge("a", v, v);
  EdgeId b = g.add_edge("b", v, v);
  g.set_partition(v, {{a}, {b}});
  return g;
}

// One vertex, two loops in one block.
inline SeparatedGraph rose2() {
  SeparatedGraph g;
  VertexId v = g.add_vertex("v");
  EdgeId a = g.add_edge("a", v, v);
  EdgeId b = g.add_edge("b", v, v);
  g.set_partition(v, {{a, b}});
  return g;
}

// Four edges to four sinks, two blocks of two.
inline SeparatedGraph twopair() {
  SeparatedGraph g;
  VertexId v = g.add_vertex("v");
  VertexId w1 = g.add_vertex("w1");
  VertexId w2 = g.add_vertex("w2");
  VertexId w3 = g.add_vertex("w3");
  VertexId w4 = g.add_vertex("w4");
  EdgeId a = g.add_edge("a", v, w1);
  EdgeId b = g.add_edge("b", v, w2);
  EdgeId c = g.add_edge("c", v, w3);
  EdgeId d = g.add_edge("d", v, w4);
  g.set_partition(v, {{a, b}, {c, d}});
  for (VertexId s : {w1, w2, w3, w4}) g.set_partition(s, {});
  return g;
}

// Two parallel edges into a sink, each its own block.
inline SeparatedGraph fim1() {
  SeparatedGraph g;
  VertexId v = g.add_vertex("v");
  VertexId u = g.add_vertex("u");
  EdgeId e = g.add_edge("e", v, u);
  EdgeId f = g.add_edge("f", v, u);
  g.set_partition(v, {{e}, {f}});
  g.set_partition(u, {});
  return g;
}

// One vertex, one loop.
inline SeparatedGraph toeplitz() {
  SeparatedGraph g;
  VertexId v = g.add_vertex("v");
  EdgeId a = g.add_edge("a", v, v);
  g.set_partition(v, {{a}});
  return g;
}

// "a" = forward letter, "a~" = backward letter.
inline Letter L(const SeparatedGraph& g, const std::string& s) {
  bool inv = !s.empty() && s.back() == '~';
  std::string name = inv ? s.substr(0, s.size() - 1) : s;
  auto e = g.find_edge(name);
  if (!e) throw DomainError("fixture letter: unknown edge " + name);
  return {*e, inv};
}

inline Path P(const SeparatedGraph& g, const std::string& root,
              const std::vector<std::string>& letters) {
  auto v = g.find_vertex(root);
  if (!v) throw DomainError("fixture path: unknown vertex " + root);
  Path p{*v, {}};
  for (const std::string& s : letters) p.letters.push_back(L(g, s));
  return p;
}

inline ETree T(const SeparatedGraph& g, const std::string& root,
               const std::vector<std::vector<std::string>>& nodes) {
  auto v = g.find_vertex(root);
  if (!v) throw DomainError("fixture tree: unknown vertex " + root);
  ETree t(*v);
  for (const auto& n : nodes) t.add_path(g, P(g, root, n));
  return t;
}

}  // namespace fixtures
