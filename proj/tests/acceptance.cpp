// End-to-end acceptance checks.  Each criterion prints exactly one
// PASS/FAIL line; the process exits 0 only if every criterion passes.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "septree/oracle.hpp"
#include "septree/socle.hpp"

using namespace septree;

namespace {

#define CHECK_OR(cond, msg)  \
  do {                       \
    if (!(cond)) {           \
      std::ostringstream os; \
      os << msg;             \
      detail = os.str();     \
      return false;          \
    }                        \
  } while (0)

// All composable letter words from `root` with at most `len` letters.
std::vector<Word> letter_words(const SeparatedGraph& g, VertexId root, int len) {
  std::vector<Word> words;
  Word cur;
  std::function<void(VertexId, int)> gen = [&](VertexId at, int remaining) {
    words.push_back(cur);
    if (remaining == 0) return;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      for (Letter l : {pos(e), neg(e)}) {
        if (letter_src(g, l) != at) continue;
        cur.push_back(l);
        gen(letter_dst(g, l), remaining - 1);
        cur.pop_back();
      }
  };
  gen(root, len);
  return words;
}

SgValue random_element(const SeparatedGraph& g, const Regime& r,
                       std::mt19937_64& rng, int max_len) {
  VertexId root = static_cast<VertexId>(rng() % g.vertex_count());
  Word w;
  VertexId at = root;
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    std::vector<Letter> opts;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.src(e) == at) opts.push_back(pos(e));
      if (g.dst(e) == at) opts.push_back(neg(e));
    }
    if (opts.empty()) break;
    Letter l = opts[rng() % opts.size()];
    w.push_back(l);
    at = letter_dst(g, l);
  }
  return prefix_trace_letters(g, r, root, w);
}

std::vector<SgValue> element_pool(const SeparatedGraph& g, const Regime& r,
                                  int tree_edges, int marker_len, size_t cap) {
  std::set<SgElement> seen;
  std::vector<SgValue> pool;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (const ETree& t : enumerate_trees(g, v, tree_edges, true))
      for (const Path& m : enumerate_paths(g, v, marker_len)) {
        if (SgValue el = make_element(g, r, t, m);
            el && seen.insert(*el).second) {
          pool.push_back(el);
          if (pool.size() >= cap) return pool;
        }
      }
  return pool;
}

using GraphMaker = SeparatedGraph (*)();
const std::vector<std::pair<const char*, GraphMaker>> kAllGraphs = {
    {"arrow", fixtures::arrow},       {"line3", fixtures::line3},
    {"cuntz2", fixtures::cuntz2_free}, {"rose2", fixtures::rose2},
    {"twopair", fixtures::twopair},   {"fim1", fixtures::fim1},
    {"toeplitz", fixtures::toeplitz}};

// ---- 1: acyclic graphs with free separation have one full matrix block ----

bool crit_finite_acyclic(std::string& detail) {
  for (GraphMaker make : {fixtures::arrow, fixtures::line3}) {
    SeparatedGraph g = make();
    int n = g.vertex_count();
    SocleReport sr = socle_report(g, 3);
    CHECK_OR(sr.block_sizes() == std::vector<int>{n},
             "expected a single block of size " << n);
    for (const SocleClass& c : sr.classes)
      CHECK_OR(c.trivial_isotropy && !c.orbit.overflow, "bad orbit class");
    AlgebraCtx lv = AlgebraCtx::leavitt(g);
    size_t b2 = algebra_basis(lv, 2).size();
    size_t b4 = algebra_basis(lv, 4).size();
    CHECK_OR(b2 == size_t(n * n) && b4 == size_t(n * n),
             "basis sizes " << b2 << "/" << b4 << ", want " << n * n);
  }
  return true;
}

// ---- 2: two free loops admit no complete blockings; one loop gives chains --

bool crit_free_separation(std::string& detail) {
  SeparatedGraph cz = fixtures::cuntz2_free();
  EcbReport er = ecb_search(cz, 4);
  CHECK_OR(er.found.empty(), "unexpected completely blockable tree");
  CHECK_OR(er.empty.empty(), "unexpected empty neighborhood");
  CHECK_OR(!er.infinite.empty(), "no infiniteness certificates");
  int y0 = 0;
  for (VertexId v = 0; v < cz.vertex_count(); ++v)
    for (const ETree& t : enumerate_trees(cz, v, 4, true))
      if (classify(cz, t).in_y0) ++y0;
  CHECK_OR(static_cast<int>(er.infinite.size()) == y0,
           "certificates " << er.infinite.size() << " != trees " << y0);
  for (const ETree& t : er.infinite)
    CHECK_OR(!neighborhood(cz, t).finite, "certificate not infinite");

  SeparatedGraph tp = fixtures::toeplitz();
  EcbReport et = ecb_search(tp, 4);
  CHECK_OR(et.block_sizes() == std::vector<int>({1, 2, 3, 4, 5}),
           "single-loop chain sizes wrong");
  VertexId v = *tp.find_vertex("v");
  BlockedTree root_blocked =
      make_blocked(tp, ETree(v), {{{}, BlockRef{v, 0}}});
  CHECK_OR(et.found.front().blocked == root_blocked,
           "missing blocked root corner");
  return true;
}

// ---- 3: free-inverse-monoid blocks are translation classes of word trees --

bool crit_fim(std::string& detail) {
  CHECK_OR(fim_socle(1, 5).block_sizes() == std::vector<int>({1, 2, 3, 4, 5}),
           "one-letter blocks wrong");

  FimReport fr = fim_socle(2, 2);
  std::set<ETree> covered;
  for (const FimClass& c : fr.classes) {
    CHECK_OR(c.size == static_cast<int>(c.members.size()),
             "class size " << c.size << " != member count "
                           << c.members.size());
    for (const ETree& t : c.members) {
      CHECK_OR(munn_cardinality(t) == c.size, "cardinality differs in class");
      CHECK_OR(covered.insert(t).second, "classes overlap");
    }
  }
  SeparatedGraph fg = fim_graph(2);
  VertexId root = *fg.find_vertex("v");
  std::set<ETree> expected;
  for (const ETree& t : enumerate_trees(fg, root, 3, true))
    if (classify(fg, t).in_y0 && munn_cardinality(t) <= 2) expected.insert(t);
  CHECK_OR(covered == expected, "classes cover " << covered.size()
                                                 << " trees, expected "
                                                 << expected.size());
  CHECK_OR(fr.block_sizes() == std::vector<int>({1, 2, 2}),
           "two-letter blocks wrong");
  return true;
}

// ---- 4: the four blocked root idempotents satisfy one linear relation -----

bool crit_kernel_relation(std::string& detail) {
  SeparatedGraph g = fixtures::cuntz2_free();
  AlgebraCtx ch = AlgebraCtx::cohn(g);
  VertexId v = *g.find_vertex("v");
  ETree ta = fixtures::T(g, "v", {{"a"}});
  ETree tb = fixtures::T(g, "v", {{"b"}});
  BlockRef A{v, 0}, B{v, 1};

  AlgebraElement e_ab = blocked_idempotent(ch, make_blocked(g, ta, {{{}, B}}));
  AlgebraElement e_ba = blocked_idempotent(ch, make_blocked(g, tb, {{{}, A}}));
  AlgebraElement e_va =
      blocked_idempotent(ch, make_blocked(g, ETree(v), {{{}, A}}));
  AlgebraElement e_vb =
      blocked_idempotent(ch, make_blocked(g, ETree(v), {{{}, B}}));

  // Independent route: aa* - aa*bb* and bb* - aa*bb* via multiplication.
  Path pa = fixtures::P(g, "v", {"a"});
  Path pb = fixtures::P(g, "v", {"b"});
  AlgebraElement aa = algebra_multiply(
      ch, path_algebra_element(ch, pa), star(ch, path_algebra_element(ch, pa)));
  AlgebraElement bb = algebra_multiply(
      ch, path_algebra_element(ch, pb), star(ch, path_algebra_element(ch, pb)));
  AlgebraElement ab = algebra_multiply(ch, aa, bb);
  CHECK_OR(e_ab == aa - ab, "blocked expansion of aa* side differs");
  CHECK_OR(e_ba == bb - ab, "blocked expansion of bb* side differs");

  CHECK_OR(e_ab + e_va == e_ba + e_vb, "the two sides normalize differently");
  CHECK_OR(!(e_ab == e_ba), "the two corners coincide unexpectedly");

  RankChecker rc;
  rc.insert(e_ab);
  rc.insert(e_ba);
  rc.insert(e_va);
  rc.insert(e_vb);
  CHECK_OR(rc.rank() == 3, "rank " << rc.rank() << ", want 3");
  return true;
}

// ---- 5: the kernel basis is independent and spans sandwich products -------

bool crit_kernel_basis(std::string& detail) {
  std::mt19937_64 rng(20260814);
  for (GraphMaker make : {fixtures::cuntz2_free, fixtures::rose2,
                          fixtures::twopair, fixtures::fim1}) {
    SeparatedGraph g = make();
    AlgebraCtx ch = AlgebraCtx::cohn(g);
    std::vector<QBasisElement> qs = q_basis_enumerate(g, 3);
    CHECK_OR(!qs.empty(), "no kernel generators found");
    RankChecker rc;
    for (const QBasisElement& q : qs)
      CHECK_OR(rc.insert(q_basis_expand(ch, q)), "dependent kernel generator");
    CHECK_OR(rc.rank() == static_cast<int>(qs.size()), "rank below count");

    std::vector<QBasisElement> defects = q_basis_enumerate(g, 0);
    std::vector<Monomial> small = algebra_basis(ch, 1);
    CHECK_OR(!defects.empty() && !small.empty(), "empty sampling pools");
    int checked = 0;
    while (checked < 50) {
      const Monomial& mx = small[rng() % small.size()];
      const Monomial& my = small[rng() % small.size()];
      AlgebraElement qx =
          q_basis_expand(ch, defects[rng() % defects.size()]);
      AlgebraElement x = normalize_monomial(ch, mx.tree, mx.marker);
      AlgebraElement y = normalize_monomial(ch, my.tree, my.marker);
      AlgebraElement prod =
          algebra_multiply(ch, algebra_multiply(ch, x, qx), y);
      if (prod.is_zero()) continue;
      ++checked;
      CHECK_OR(rc.in_span(prod), "sandwich product escapes the span");
      CHECK_OR(q_membership(ch, prod).member, "sandwich product rejected");
    }
  }
  return true;
}

// ---- 6: rewriting is confluent and matches the word-level oracles ---------

bool congruence_bijection(const SeparatedGraph& g, const Regime& r, int len,
                          int bound, std::string& detail) {
  CongruenceOracle cc(g, r, bound);
  std::map<SgValue, std::vector<CcWord>> buckets;
  for (VertexId root = 0; root < g.vertex_count(); ++root)
    for (const Word& w : letter_words(g, root, len)) {
      CcWord cw = word_of_path(g, Path{root, w});
      buckets[prefix_trace_letters(g, r, root, w)].push_back(cw);
    }
  CHECK_OR(buckets.size() > 1, "degenerate word population");
  std::vector<const CcWord*> reps;
  for (const auto& [value, words] : buckets) {
    if (!value.has_value()) {
      for (const CcWord& w : words)
        CHECK_OR(cc.component(w).has_zero, "zero form not proven zero");
      continue;
    }
    const CcWord& rep = words.front();
    const auto& comp = cc.component(rep);
    CHECK_OR(!comp.has_zero, "nonzero form reaches zero");
    for (const CcWord& w : words)
      CHECK_OR(comp.keys.count(cc.pack(w)) == 1,
               "words with one canonical form are not congruent");
    reps.push_back(&rep);
  }
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j)
      CHECK_OR(cc.component(*reps[i]).keys.count(cc.pack(*reps[j])) == 0,
               "distinct canonical forms are identified");
  return true;
}

bool crit_confluence(std::string& detail) {
  int gi = 0;
  for (const auto& [name, make] : kAllGraphs) {
    SeparatedGraph g = make();
    AlgebraCtx lv = AlgebraCtx::leavitt(g);
    std::mt19937_64 rng(77001 + gi++);
    int done = 0, attempts = 0;
    while (done < 1000 && attempts < 40000) {
      ++attempts;
      SgValue el = random_element(g, lv.regime, rng, 5);
      if (!el) continue;
      if (done % 2)
        el = sg_multiply(g, lv.regime, el, sg_invert(g, lv.regime, el));
      LiteralRewriter::Terms input{{word_of_element(g, el), 1}};
      if (done % 3 == 2) {
        SgValue other = random_element(g, lv.regime, rng, 4);
        if (other)
          input = {{concat_words(word_of_element(g, el),
                                 word_of_element(g, other)),
                    1}};
      }
      LiteralRewriter r1(lv, 9000 + done);
      LiteralRewriter r2(lv, 100000 + done);
      LiteralRewriter::Terms normal = r1.rewrite(input);
      CHECK_OR(r2.rewrite(input) == normal,
               name << ": seeded rule orders disagree");
      CHECK_OR(r1.evaluate(normal) == r1.evaluate(input),
               name << ": rewriting changed the value");
      ++done;
    }
    CHECK_OR(done == 1000, name << ": only " << done << " samples");
  }

  {
    SeparatedGraph g = fixtures::rose2();
    if (!congruence_bijection(g, Regime::leavitt(g), 6, 9, detail))
      return false;
  }
  {
    SeparatedGraph g = fixtures::fim1();
    if (!congruence_bijection(g, Regime::leavitt(g), 6, 9, detail))
      return false;
  }
  return true;
}

// ---- 7: the semigroup embeds in the algebra ---------------------------------

bool crit_injectivity(std::string& detail) {
  for (GraphMaker make :
       {fixtures::rose2, fixtures::twopair, fixtures::fim1}) {
    SeparatedGraph g = make();
    AlgebraCtx lv = AlgebraCtx::leavitt(g);
    std::string failure;
    CHECK_OR(iota_injectivity_check(lv, 3, &failure), failure);
  }
  return true;
}

// ---- 8: isolated trees have orbits of their own cardinality ----------------

bool crit_orbits(std::string& detail) {
  SeparatedGraph g = fixtures::twopair();
  std::vector<ETree> iso = isolated_points(g, 3);
  CHECK_OR(!iso.empty(), "no isolated trees found");
  for (const ETree& t : iso) {
    OrbitGraph og = orbit(g, t);
    CHECK_OR(!og.overflow, "orbit overflow");
    CHECK_OR(og.nodes.size() == t.cardinality(),
             "orbit size " << og.nodes.size() << " != cardinality "
                           << t.cardinality());
    CHECK_OR(isotropy_trivial(og), "nontrivial isotropy");
    for (const Word& w : t.max_elements())
      CHECK_OR(g.is_sink(range(g, t.node_path(w))),
               "maximal element not at a sink");
  }
  return true;
}

// ---- 9: the tree semigroups are inverse semigroups -------------------------

bool crit_axioms(std::string& detail) {
  std::mt19937_64 rng(424242);
  for (const auto& [name, make] : kAllGraphs) {
    SeparatedGraph g = make();
    for (const Regime& r : {Regime::leavitt(g), Regime::cohn()}) {
      auto mul = [&](const SgValue& a, const SgValue& b) {
        return sg_multiply(g, r, a, b);
      };
      auto inv = [&](const SgValue& a) { return sg_invert(g, r, a); };

      std::vector<SgValue> pool2 = element_pool(g, r, 2, 2, 100000);
      pool2.push_back(SgValue{});
      for (const SgValue& a : pool2) {
        CHECK_OR(mul(mul(a, inv(a)), a) == a, name << ": a a~ a != a");
        CHECK_OR(inv(inv(a)) == a, name << ": double inverse moved");
      }

      std::set<SgElement> iset;
      std::vector<SgValue> idems{SgValue{}};
      for (const SgValue& a : pool2)
        if (SgValue e = mul(a, inv(a)); e && iset.insert(*e).second)
          idems.push_back(e);
      for (const SgValue& e : idems)
        for (const SgValue& f : idems)
          CHECK_OR(mul(e, f) == mul(f, e), name << ": idempotents clash");

      std::vector<SgValue> pool4 = element_pool(g, r, 4, 4, 500);
      pool4.push_back(SgValue{});
      for (int i = 0; i < 300; ++i) {
        const SgValue& a = pool4[rng() % pool4.size()];
        const SgValue& b = pool4[rng() % pool4.size()];
        const SgValue& c = pool4[rng() % pool4.size()];
        CHECK_OR(mul(mul(a, b), c) == mul(a, mul(b, c)),
                 name << ": associativity broke");
      }
    }
  }
  return true;
}

struct Criterion {
  const char* name;
  double budget_s;
  bool (*run)(std::string&);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"acyclic socle is one full matrix block", 1.0, crit_finite_acyclic},
      {"free separation admits no complete blockings", 10.0,
       crit_free_separation},
      {"free inverse monoid socle classes", 30.0, crit_fim},
      {"blocked root idempotents satisfy one relation", 1.0,
       crit_kernel_relation},
      {"kernel basis independence and span", 120.0, crit_kernel_basis},
      {"rewriting confluence and word-oracle agreement", 300.0,
       crit_confluence},
      {"semigroup embeds injectively in the algebra", 60.0, crit_injectivity},
      {"isolated orbits have tree cardinality", 10.0, crit_orbits},
      {"inverse semigroup axioms", 120.0, crit_axioms},
  };

  int passed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (ok && secs > c.budget_s) {
      ok = false;
      detail = "over time budget";
    }
    std::cout << "criterion " << (i + 1) << " (" << c.name << "): "
              << (ok ? "PASS" : "FAIL") << " [" << std::fixed
              << std::setprecision(2) << secs << "s"
              << (ok ? "" : ("; " + detail)) << "]\n";
    if (ok) ++passed;
  }
  std::cout << "summary: " << passed << "/" << criteria.size() << " passed\n";
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
