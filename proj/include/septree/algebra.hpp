#pragma once

#include <map>
#include <string>

#include "septree/rational.hpp"
#include "septree/semigroup.hpp"

namespace septree {

// Which defining relations are in force for the path algebra:
//   cohn    - no block completions (pruning of backward letters only)
//   leavitt - every block complete (singleton edges prune, larger blocks
//             expand at their chosen edge)
//   cl      - blocks in S complete, the rest free
enum class AlgebraMode { cohn, leavitt, cl };

struct AlgebraCtx {
  const SeparatedGraph* graph = nullptr;
  AlgebraMode mode = AlgebraMode::cohn;
  std::set<BlockRef> S;    // complete blocks (cl); derived for the others
  ChoiceFunction choice;   // expansion representative per block
  Regime regime;           // matching tree-pruning regime

  static AlgebraCtx cohn(const SeparatedGraph& g);
  static AlgebraCtx leavitt(const SeparatedGraph& g, ChoiceFunction choice = {});
  static AlgebraCtx cl(const SeparatedGraph& g, std::set<BlockRef> S,
                       ChoiceFunction choice = {});

  bool block_complete(const BlockRef& b) const;
};

// A basis monomial e(T) |> g: the product of the node idempotents of T
// times the path g.  Canonical terms keep the reduced head of g inside T
// and no non-marker leaf at a chosen edge of a complete block.
struct Monomial {
  ETree tree;
  Path marker;
  auto operator<=>(const Monomial&) const = default;
};

// A finite rational combination of monomials, kept in canonical sorted
// form with zero coefficients dropped.
class AlgebraElement {
 public:
  using Terms = std::map<Monomial, Rational>;

  AlgebraElement() = default;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  void add_term(Monomial m, const Rational& c);

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const Rational& c);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) {
    return a += b;
  }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) {
    return a -= b;
  }
  friend AlgebraElement operator*(const Rational& c, AlgebraElement a) {
    return a *= c;
  }
  bool operator==(const AlgebraElement&) const = default;

 private:
  Terms terms_;
};

// Rewrites c . e(T) |> g to canonical form: marker closure, compatibility
// zeros, pruning, then expansion of chosen-edge leaves of complete blocks
// (deepest first, marker leaf exempt).  Terminates because each step
// strictly drops the total node weight (chosen-edge nodes weigh 2).
AlgebraElement normalize_monomial(const AlgebraCtx& ctx, const ETree& t,
                                  const Path& marker, const Rational& c = 1);

// Renormalizes every term of an arbitrarily-built combination.
AlgebraElement normalize(const AlgebraCtx& ctx, const AlgebraElement& a);

AlgebraElement algebra_multiply(const AlgebraCtx& ctx, const AlgebraElement& a,
                                const AlgebraElement& b);
AlgebraElement star(const AlgebraCtx& ctx, const AlgebraElement& a);

// Normalized image of a semigroup element (zero maps to zero).
AlgebraElement iota(const AlgebraCtx& ctx, const SgValue& v);

// Convenience constructors.
AlgebraElement vertex_element(const AlgebraCtx& ctx, VertexId v);
AlgebraElement path_algebra_element(const AlgebraCtx& ctx, const Path& p);
AlgebraElement idempotent_element(const AlgebraCtx& ctx, const ETree& t);

// lambda mu^* for paths with a common range, built directly as a single
// canonical monomial.
AlgebraElement zel(const AlgebraCtx& ctx, const Path& lambda, const Path& mu);
// ... and compared against the product route path(lambda) * path(mu)^*.
bool zel_crosscheck(const AlgebraCtx& ctx, const Path& lambda, const Path& mu);

// Checks that distinct nonzero semigroup elements (all trees with at most
// max_edges edges, markers running over their nodes) stay distinct after
// normalization in the algebra.  On failure describes the collision.
bool iota_injectivity_check(const AlgebraCtx& ctx, int max_edges,
                            std::string* failure = nullptr);

// All canonical basis monomials e(T) |> g whose combined support
// T u prefixes(g) has at most `bound` edges.
std::vector<Monomial> algebra_basis(const AlgebraCtx& ctx, int bound);

}  // namespace septree
