#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include "septree/algebra.hpp"
#include "septree/blocked.hpp"
#include "septree/semigroup.hpp"

namespace septree {

// A parsed graph description: the graph itself plus the choice-function
// overrides and the set of blocks declared complete for the relative mode.
struct GraphFile {
  SeparatedGraph graph;
  ChoiceFunction choice;
  std::set<BlockRef> relative;
};

// Line-based description; '#' starts a comment, blank lines are skipped.
//
//   vertex NAME
//   edge NAME SRC DST
//   partition VERTEX { e1 e2 ... } { ... } ...
//   choice VERTEX BLOCK_INDEX EDGE
//   relative VERTEX BLOCK_INDEX
//
// Names must be declared before use, and a vertex's partition before any
// choice/relative line referring to it.  Throws ParseError carrying the
// 1-based line number; the graph is structurally validated at the end.
GraphFile parse_graph(std::istream& in);
GraphFile parse_graph(const std::string& text);
GraphFile load_graph(const std::string& path);

// ---- Literals ---------------------------------------------------------------
//
//   path     a.b~.c       '.'-separated edge names, '~' inverts the letter
//                         before it; a bare vertex name is the trivial path
//   tree     {a, c.d~}    generator paths sharing one source; {} needs a
//                         root from context
//   element  ({a}; a.b~)  tree and marker with a common root
//   blocked  {a \ a.a@v.0, ...}
//                         tree generators, then the blocked entries as
//                         anchor@vertex.block ('\' may also be written as
//                         the set-minus sign)
//
// Literal parsers throw ParseError with a 1-based column in the message.

Path parse_path(const SeparatedGraph& g, const std::string& text);
ETree parse_tree(const SeparatedGraph& g, const std::string& text,
                 std::optional<VertexId> root = {});
SgElement parse_element(const SeparatedGraph& g, const std::string& text);
BlockedTree parse_blocked(const SeparatedGraph& g, const std::string& text,
                          std::optional<VertexId> root = {});

std::string print_path(const SeparatedGraph& g, const Path& p);
// Maximal nodes as path literals; a root-only tree prints as its root name.
std::string print_tree(const SeparatedGraph& g, const ETree& t);
std::string print_element(const SeparatedGraph& g, const SgElement& e);
std::string print_sg_value(const SeparatedGraph& g, const SgValue& v);
std::string print_blocked(const SeparatedGraph& g, const BlockedTree& b);

// Monomials print as e{...} |> marker with the root carried by the marker,
// so a root-only tree prints as e{}.
std::string print_monomial(const SeparatedGraph& g, const Monomial& m);
// Sum of COEFF * MONOMIAL terms in graded then structural order, signs
// folded into the joins; the zero element prints as "0".
std::string print_algebra(const SeparatedGraph& g, const AlgebraElement& a);
// Kernel generator: e{BLOCKED} |> marker.
std::string print_q_element(const SeparatedGraph& g, const QBasisElement& q);

// ---- Expressions --------------------------------------------------------------
//
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := [RATIONAL '*'] factor ('*' factor)*
//   factor := atom ["'"]              # apostrophe = star involution
//   atom   := IDENT | '(' expr ')'    # vertex or edge name
//   RATIONAL := INT | INT '/' INT
//
// The result is normalized in the given context.  Throws ParseError with a
// 1-based column in the message.
AlgebraElement parse_expression(const AlgebraCtx& ctx, const std::string& text);

}  // namespace septree
