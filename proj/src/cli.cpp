#include "septree/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "septree/io.hpp"
#include "septree/oracle.hpp"
#include "septree/socle.hpp"

namespace septree {

namespace {

std::string join_ints(const std::vector<int>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(xs[i]);
  }
  return s;
}

const char* yesno(bool b) { return b ? "true" : "false"; }

// Dual-format line writer: key=value lines in machine mode, friendlier
// prose in plain mode.  Both orderings are fixed, so reports are
// byte-deterministic.
struct Emit {
  std::ostream& out;
  bool json = false;

  void kv(const std::string& key, const std::string& value) {
    if (json)
      out << key << '=' << value << '\n';
    else
      out << key << ": " << value << '\n';
  }
  void kv(const std::string& key, long long value) {
    kv(key, std::to_string(value));
  }
  // Plain mode shows `plain` verbatim instead of "key: value".
  void kvp(const std::string& key, const std::string& value,
           const std::string& plain) {
    if (json)
      out << key << '=' << value << '\n';
    else
      out << plain << '\n';
  }
};

AlgebraCtx make_ctx(const GraphFile& gf, const std::string& mode) {
  if (mode == "cohn") return AlgebraCtx::cohn(gf.graph);
  if (mode == "leavitt") return AlgebraCtx::leavitt(gf.graph, gf.choice);
  return AlgebraCtx::cl(gf.graph, gf.relative, gf.choice);
}

void emit_element(Emit& em, const SeparatedGraph& g, const AlgebraElement& a) {
  if (em.json) em.kv("terms", static_cast<long long>(a.term_count()));
  em.kvp("element", print_algebra(g, a), print_algebra(g, a));
}

int cmd_validate(const GraphFile& gf, Emit& em) {
  const SeparatedGraph& g = gf.graph;
  int blocks = 0, sinks = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    blocks += g.block_count(v);
    if (g.is_sink(v)) ++sinks;
  }
  em.kv("vertices", g.vertex_count());
  em.kv("edges", g.edge_count());
  em.kv("blocks", blocks);
  em.kv("sinks", sinks);
  em.kv("status", "ok");
  return 0;
}

int cmd_basis(const GraphFile& gf, const std::string& mode, int bound,
              Emit& em) {
  AlgebraCtx ctx = make_ctx(gf, mode);
  std::vector<Monomial> ms = algebra_basis(ctx, bound);
  em.kv("mode", mode);
  em.kv("bound", bound);
  em.kv("count", static_cast<long long>(ms.size()));
  for (size_t i = 0; i < ms.size(); ++i) {
    std::string s = print_monomial(gf.graph, ms[i]);
    em.kvp("basis." + std::to_string(i), s, s);
  }
  return 0;
}

int cmd_q_basis(const GraphFile& gf, int bound, Emit& em) {
  std::vector<QBasisElement> qs = q_basis_enumerate(gf.graph, bound, gf.choice);
  em.kv("bound", bound);
  em.kv("count", static_cast<long long>(qs.size()));
  for (size_t i = 0; i < qs.size(); ++i) {
    std::string s = print_q_element(gf.graph, qs[i]);
    em.kvp("q." + std::to_string(i), s, s);
  }
  return 0;
}

int cmd_in_q(const GraphFile& gf, const std::string& expr, Emit& em) {
  AlgebraCtx ctx = AlgebraCtx::cohn(gf.graph);
  QMembership m = q_membership(ctx, parse_expression(ctx, expr));
  em.kvp("member", yesno(m.member), yesno(m.member));
  return 0;
}

int cmd_phi_bar(const GraphFile& gf, const std::string& expr, Emit& em) {
  AlgebraCtx ctx = AlgebraCtx::cohn(gf.graph);
  CornerMap cm(ctx);
  std::string added;
  for (const auto& [block, edge] : cm.extension().added_edge) {
    if (!added.empty()) added += ", ";
    added += cm.extension().graph.edge_name(edge);
  }
  em.kv("added", added);
  emit_element(em, cm.extension().graph, cm.map(parse_expression(ctx, expr)));
  return 0;
}

void emit_fim_report(const FimReport& fr, Emit& em) {
  SeparatedGraph fg = fim_graph(fr.n);
  em.kv("n", fr.n);
  em.kv("bound", fr.bound);
  em.kv("classes", static_cast<long long>(fr.classes.size()));
  em.kv("blocks", join_ints(fr.block_sizes()));
  for (size_t i = 0; i < fr.classes.size(); ++i) {
    const FimClass& c = fr.classes[i];
    std::string key = "class." + std::to_string(i);
    std::string seed = print_tree(fg, c.members.front());
    if (em.json) {
      em.kv(key + ".size", c.size);
      em.kv(key + ".members", static_cast<long long>(c.members.size()));
      em.kv(key + ".seed", seed);
    } else {
      em.out << "class " << i << ": size " << c.size << ", members "
             << c.members.size() << ", seed " << seed << '\n';
    }
  }
}

int cmd_socle(const GraphFile* gf, int fim_n, int bound, int cap, Emit& em) {
  if (fim_n > 0) {
    emit_fim_report(fim_socle(fim_n, bound), em);
    return 0;
  }
  const SeparatedGraph& g = gf->graph;
  SocleReport sr = socle_report(g, bound, cap);
  em.kv("bound", sr.bound);
  em.kv("classes", static_cast<long long>(sr.classes.size()));
  em.kv("blocks", join_ints(sr.block_sizes()));
  for (size_t i = 0; i < sr.classes.size(); ++i) {
    const SocleClass& c = sr.classes[i];
    const OrbitGraph& og = c.orbit;
    std::string key = "class." + std::to_string(i);
    std::string seed = print_tree(g, og.nodes.front());
    std::string units;
    for (size_t j = 0; j < og.transversal.size(); ++j) {
      if (j) units += ", ";
      units += print_path(g, og.transversal[j]);
    }
    if (em.json) {
      em.kv(key + ".size", static_cast<long long>(og.nodes.size()));
      em.kv(key + ".trivial", yesno(c.trivial_isotropy));
      em.kv(key + ".overflow", yesno(og.overflow));
      em.kv(key + ".seed", seed);
      em.kv(key + ".units", units);
    } else if (og.overflow) {
      em.out << "class " << i << ": undecided at cap (nodes >= "
             << og.nodes.size() << "), seed " << seed << '\n';
    } else {
      em.out << "class " << i << ": size " << og.nodes.size() << ", isotropy "
             << (c.trivial_isotropy ? "trivial" : "nontrivial") << ", seed "
             << seed << ", units [" << units << "]" << '\n';
    }
  }
  return 0;
}

int cmd_ecb(const GraphFile& gf, int bound, Emit& em) {
  const SeparatedGraph& g = gf.graph;
  EcbReport er = ecb_search(g, bound);
  em.kv("bound", er.bound);
  em.kv("found", static_cast<long long>(er.found.size()));
  for (size_t i = 0; i < er.found.size(); ++i) {
    std::string s = print_blocked(g, er.found[i].blocked);
    if (em.json) {
      em.kv("ecb." + std::to_string(i), s);
      em.kv("ecb." + std::to_string(i) + ".size", er.found[i].block_size);
    } else {
      em.out << "ecb " << i << ": " << s << " block size "
             << er.found[i].block_size << '\n';
    }
  }
  em.kv("infinite", static_cast<long long>(er.infinite.size()));
  for (size_t i = 0; i < er.infinite.size(); ++i) {
    std::string s = print_tree(g, er.infinite[i]);
    em.kvp("infinite." + std::to_string(i), s,
           "infinite " + std::to_string(i) + ": " + s);
  }
  em.kv("empty", static_cast<long long>(er.empty.size()));
  for (size_t i = 0; i < er.empty.size(); ++i) {
    std::string s = print_tree(g, er.empty[i]);
    em.kvp("empty." + std::to_string(i), s,
           "empty " + std::to_string(i) + ": " + s);
  }
  em.kv("blocks", join_ints(er.block_sizes()));
  return 0;
}

int cmd_orbit(const GraphFile& gf, const std::string& tree_lit, int cap,
              bool emit_dot, Emit& em) {
  const SeparatedGraph& g = gf.graph;
  OrbitGraph og = orbit(g, parse_tree(g, tree_lit), cap);
  if (emit_dot) {
    em.out << "digraph orbit {\n  rankdir=LR;\n";
    for (size_t i = 0; i < og.nodes.size(); ++i)
      em.out << "  n" << i << " [label=\"" << print_tree(g, og.nodes[i])
             << "\"];\n";
    for (const OrbitEdge& e : og.edges)
      em.out << "  n" << e.from << " -> n" << e.to << " [label=\""
             << g.edge_name(e.letter) << "\"];\n";
    em.out << "}\n";
    return 0;
  }
  em.kv("nodes", static_cast<long long>(og.nodes.size()));
  em.kv("edges", static_cast<long long>(og.edges.size()));
  em.kv("overflow", yesno(og.overflow));
  if (og.overflow)
    em.kvp("isotropy", "undecided", "isotropy: undecided at cap");
  else
    em.kv("isotropy", isotropy_trivial(og) ? "trivial" : "nontrivial");
  for (size_t i = 0; i < og.nodes.size(); ++i) {
    std::string key = "node." + std::to_string(i);
    std::string tree = print_tree(g, og.nodes[i]);
    std::string via = print_path(g, og.transversal[i]);
    if (em.json) {
      em.kv(key, tree);
      em.kv(key + ".via", via);
    } else {
      em.out << "node " << i << ": " << tree << " via " << via << '\n';
    }
  }
  for (size_t i = 0; i < og.edges.size(); ++i) {
    const OrbitEdge& e = og.edges[i];
    if (em.json) {
      std::string key = "edge." + std::to_string(i);
      em.kv(key + ".from", e.from);
      em.kv(key + ".letter", g.edge_name(e.letter));
      em.kv(key + ".to", e.to);
    } else {
      em.out << "edge " << e.from << " -" << g.edge_name(e.letter) << "-> "
             << e.to << '\n';
    }
  }
  return 0;
}

int cmd_fim(int n, int bound, int tree_bound, int pairs, std::uint64_t seed,
            Emit& em) {
  emit_fim_report(fim_socle(n, bound), em);

  SeparatedGraph fg = fim_graph(n);
  VertexId root = *fg.find_vertex("v");
  std::vector<std::pair<BlockedTree, int>> pool;
  for (const BlockedTree& b : enumerate_blocked(fg, tree_bound, true))
    if (b.tree.root() == root)
      pool.emplace_back(b, open_neighbor_count(fg, b));

  std::mt19937_64 rng(seed);
  int nonzero = 0, violations = 0;
  for (int k = 0; k < pairs && !pool.empty(); ++k) {
    const auto& [x, ox] = pool[rng() % pool.size()];
    const auto& [y, oy] = pool[rng() % pool.size()];
    std::optional<BlockedTree> z = blocked_product(fg, x, y);
    if (!z) continue;
    ++nonzero;
    if (open_neighbor_count(fg, *z) > ox + oy + 1) ++violations;
  }
  if (em.json) {
    em.kv("filtration.pairs", pairs);
    em.kv("filtration.nonzero", nonzero);
    em.kv("filtration.violations", violations);
  } else {
    em.out << "filtration: pairs " << pairs << ", nonzero " << nonzero
           << ", violations " << violations << '\n';
  }
  return violations == 0 ? 0 : 1;
}

int cmd_verify(const GraphFile& gf, int bound, std::uint64_t seed, int trials,
               Emit& em) {
  const SeparatedGraph& g = gf.graph;
  AlgebraCtx lv = AlgebraCtx::leavitt(g, gf.choice);
  const Regime& r = lv.regime;

  std::set<SgElement> pool_set;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (const ETree& t : enumerate_trees(g, v, bound, true))
      for (const Word& w : t.nodes())
        if (SgValue el = make_element(g, r, t, t.node_path(w)))
          pool_set.insert(*el);
  std::vector<SgValue> pool(pool_set.begin(), pool_set.end());
  size_t direct = pool.size();
  for (size_t i = 0; i < direct; ++i) {
    SgValue inv = sg_invert(g, r, pool[i]);
    if (inv && !pool_set.count(*inv)) {
      pool_set.insert(*inv);
      pool.push_back(inv);
    }
  }
  em.kv("pool", static_cast<long long>(pool.size()));

  std::mt19937_64 rng(seed);
  auto pick = [&]() -> const SgValue& { return pool[rng() % pool.size()]; };
  auto mul = [&](const SgValue& a, const SgValue& b) {
    return sg_multiply(g, r, a, b);
  };
  bool all_pass = true;
  auto check = [&](const std::string& name, bool ok) {
    all_pass = all_pass && ok;
    em.kvp("check." + name, ok ? "pass" : "fail",
           "check " + name + ": " + (ok ? "pass" : "fail"));
  };

  {
    bool ok = !pool.empty();
    for (int i = 0; ok && i < trials; ++i) {
      const SgValue a = pick(), b = pick(), c = pick();
      ok = ok && mul(mul(a, b), c) == mul(a, mul(b, c));
      ok = ok && mul(mul(a, sg_invert(g, r, a)), a) == a;
      const SgValue e = mul(a, sg_invert(g, r, a));
      const SgValue f = mul(b, sg_invert(g, r, b));
      ok = ok && mul(e, f) == mul(f, e);
    }
    check("axioms", ok);
  }
  {
    bool ok = !pool.empty();
    int n = std::min(trials, 50);
    for (int i = 0; ok && i < n; ++i) {
      LiteralRewriter::Terms input{
          {concat_words(word_of_element(g, pick()), word_of_element(g, pick())),
           1}};
      LiteralRewriter r1(lv, seed + 2 * i);
      LiteralRewriter r2(lv, seed + 2 * i + 1);
      LiteralRewriter::Terms normal = r1.rewrite(input);
      ok = ok && r2.rewrite(input) == normal;
      ok = ok && r1.evaluate(normal) == r1.evaluate(input);
    }
    check("confluence", ok);
  }
  {
    bool ok = true;
    LiteralRewriter rw(lv, seed);
    for (size_t i = 0; ok && i < pool.size() && i < size_t(trials); ++i) {
      AlgebraElement ax = iota(lv, pool[i]);
      ok = rw.evaluate(rw.rewrite(rw.term_of_element(ax))) == ax;
    }
    check("evaluation", ok);
  }
  {
    bool ok = true;
    for (VertexId v = 0; ok && v < g.vertex_count(); ++v)
      for (const ETree& t : enumerate_trees(g, v, bound + 1, false))
        ok = ok && is_c_compatible(g, t) == compatible_by_pairs(g, t);
    check("compatibility", ok);
  }
  check("injectivity", iota_injectivity_check(lv, std::min(bound, 2)));

  em.kv("result", all_pass ? "pass" : "fail");
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"tree calculus for separated graphs: inverse-semigroup and "
               "path-algebra normal forms, kernel bases, socle reports"};
  app.name("septree");
  app.fallthrough();
  app.require_subcommand(1);

  std::string graph_path;
  bool json = false;
  app.add_option("--graph", graph_path, "graph description file");
  app.add_flag("--json", json, "line-oriented key=value output");

  std::string mode = "leavitt", expr, expr2, tree_lit;
  int bound = 2, cap = 1024, fim_n = 0, n_letters = 1, pairs = 200;
  int tree_bound = 3, trials = 200;
  std::uint64_t seed = 1;
  bool emit_dot = false;

  CLI::App* c_validate =
      app.add_subcommand("validate", "check and summarize the graph file");

  CLI::App* c_norm =
      app.add_subcommand("normalize", "canonical form of an expression");
  c_norm->add_option("--mode", mode, "cohn|leavitt|cl")
      ->required()
      ->check(CLI::IsMember({"cohn", "leavitt", "cl"}));
  c_norm->add_option("expr", expr, "algebra expression")->required();

  CLI::App* c_mul = app.add_subcommand("mul", "multiply two expressions");
  c_mul->add_option("--mode", mode, "cohn|leavitt|cl (default leavitt)")
      ->check(CLI::IsMember({"cohn", "leavitt", "cl"}));
  c_mul->add_option("left", expr, "left factor")->required();
  c_mul->add_option("right", expr2, "right factor")->required();

  CLI::App* c_basis =
      app.add_subcommand("basis", "canonical monomial basis up to a bound");
  c_basis->add_option("--mode", mode, "cohn|leavitt|cl (default leavitt)")
      ->check(CLI::IsMember({"cohn", "leavitt", "cl"}));
  c_basis->add_option("--bound", bound, "edge budget")->required();

  CLI::App* c_qbasis = app.add_subcommand(
      "q-basis", "canonical basis of the block-completion kernel ideal");
  c_qbasis->add_option("--bound", bound, "edge budget")->required();

  CLI::App* c_inq = app.add_subcommand(
      "in-q", "membership of an expression in the kernel ideal");
  c_inq->add_option("expr", expr, "algebra expression")->required();

  CLI::App* c_phi = app.add_subcommand(
      "phi-bar", "corner embedding into the block-completed extension");
  c_phi->add_option("expr", expr, "algebra expression")->required();

  CLI::App* c_socle = app.add_subcommand(
      "socle", "matrix-block decomposition from isolated trees");
  c_socle->add_option("--bound", bound, "tree edge budget (default 2)");
  c_socle->add_option("--fim", fim_n,
                      "use the free-inverse-monoid word graph on N letters");
  c_socle->add_option("--cap", cap, "orbit node cap (default 1024)");

  CLI::App* c_ecb =
      app.add_subcommand("ecb", "completely blockable trees up to a bound");
  c_ecb->add_option("--bound", bound, "tree edge budget")->required();

  CLI::App* c_orbit = app.add_subcommand(
      "orbit", "orbit of an isolated tree under the single-letter maps");
  c_orbit->add_option("tree", tree_lit, "tree literal, e.g. \"{a, c}\"")
      ->required();
  c_orbit->add_option("--cap", cap, "node cap (default 1024)");
  c_orbit->add_flag("--emit-dot", emit_dot, "dump the orbit graph as DOT");

  CLI::App* c_fim = app.add_subcommand(
      "fim", "free-inverse-monoid socle blocks and exit filtration");
  c_fim->add_option("--n", n_letters, "alphabet size")->required();
  c_fim->add_option("--bound", bound, "class cardinality cap (default 2)");
  c_fim->add_option("--tree-bound", tree_bound,
                    "edge budget of the filtration pool (default 3)");
  c_fim->add_option("--pairs", pairs, "random product pairs (default 200)");
  c_fim->add_option("--seed", seed, "random seed (default 1)");

  CLI::App* c_verify = app.add_subcommand(
      "verify", "cross-check the engines against the independent oracles");
  c_verify->add_option("--bound", bound, "element edge budget (default 2)");
  c_verify->add_option("--seed", seed, "random seed (default 1)");
  c_verify->add_option("--trials", trials, "random trials (default 200)");

  std::optional<GraphFile> gf;
  auto need_graph = [&]() -> const GraphFile& {
    if (!gf) {
      if (graph_path.empty())
        throw DomainError("this subcommand needs a graph: pass --graph FILE");
      gf = load_graph(graph_path);
    }
    return *gf;
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);

    Emit em{out, json};
    if (*c_validate) return cmd_validate(need_graph(), em);
    if (*c_norm || *c_mul) {
      const GraphFile& graph_file = need_graph();
      AlgebraCtx ctx = make_ctx(graph_file, mode);
      AlgebraElement x = parse_expression(ctx, expr);
      if (*c_mul) x = algebra_multiply(ctx, x, parse_expression(ctx, expr2));
      if (em.json) em.kv("mode", mode);
      emit_element(em, graph_file.graph, x);
      return 0;
    }
    if (*c_basis) return cmd_basis(need_graph(), mode, bound, em);
    if (*c_qbasis) return cmd_q_basis(need_graph(), bound, em);
    if (*c_inq) return cmd_in_q(need_graph(), expr, em);
    if (*c_phi) return cmd_phi_bar(need_graph(), expr, em);
    if (*c_socle)
      return cmd_socle(fim_n > 0 ? nullptr : &need_graph(), fim_n, bound, cap,
                       em);
    if (*c_ecb) return cmd_ecb(need_graph(), bound, em);
    if (*c_orbit) return cmd_orbit(need_graph(), tree_lit, cap, emit_dot, em);
    if (*c_fim) return cmd_fim(n_letters, bound, tree_bound, pairs, seed, em);
    if (*c_verify) return cmd_verify(need_graph(), bound, seed, trials, em);
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const septree::ParseError& e) {
    err << "parse error (line " << e.line << "): " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace septree
