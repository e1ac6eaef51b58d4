#include "doctest.h"
#include "fixtures.hpp"

using namespace septree;
using fixtures::P;

TEST_CASE("sources, ranges and reducedness") {
  SeparatedGraph g = fixtures::line3();
  Path p = P(g, "u", {"a", "b"});
  CHECK(source(p) == *g.find_vertex("u"));
  CHECK(range(g, p) == *g.find_vertex("w"));
  CHECK(is_reduced_path(g, p));

  CHECK(!is_reduced_path(g, P(g, "u", {"a", "a~"})));
  // Letters must chain through matching vertices.
  CHECK(!is_reduced_path(g, P(g, "u", {"b"})));
  CHECK(is_reduced_path(g, P(g, "w", {"b~", "a~"})));
}

TEST_CASE("separation forbids backward-then-forward within one block") {
  SeparatedGraph g = fixtures::rose2();
  CHECK(!is_c_separated(g, P(g, "v", {"a~", "b"})));
  CHECK(!is_c_separated(g, P(g, "v", {"a~", "a"})));  // not even reduced
  CHECK(is_c_separated(g, P(g, "v", {"a", "b~"})));
  CHECK(is_c_separated(g, P(g, "v", {"b~", "a~"})));

  SeparatedGraph h = fixtures::cuntz2_free();
  CHECK(is_c_separated(h, P(h, "v", {"a~", "b"})));
}

TEST_CASE("composition concatenates and cancels") {
  SeparatedGraph g = fixtures::rose2();
  Path ab = P(g, "v", {"a", "b"});
  Path binv = P(g, "v", {"b~"});
  auto r = compose(g, ab, binv);
  REQUIRE(r);
  CHECK(*r == P(g, "v", {"a"}));

  auto full = compose(g, ab, invert_path(g, ab));
  REQUIRE(full);
  CHECK(full->trivial());

  SeparatedGraph h = fixtures::line3();
  CHECK(!compose(h, P(h, "u", {"a"}), P(h, "u", {"a"})));  // range/source clash
}

TEST_CASE("inversion reverses and flips") {
  SeparatedGraph g = fixtures::line3();
  Path p = P(g, "u", {"a", "b"});
  Path q = invert_path(g, p);
  CHECK(q == P(g, "w", {"b~", "a~"}));
  CHECK(invert_path(g, q) == p);
}

TEST_CASE("prefixes") {
  SeparatedGraph g = fixtures::rose2();
  Path p = P(g, "v", {"a", "b", "a"});
  CHECK(prefix_leq(P(g, "v", {"a"}), p));
  CHECK(prefix_leq(p, p));
  CHECK(!prefix_leq(P(g, "v", {"b"}), p));
  CHECK(prefix_path(p, 2) == P(g, "v", {"a", "b"}));
}

TEST_CASE("head/tail splitting strips backward letters and chosen edges") {
  SeparatedGraph g = fixtures::rose2();
  EdgeId a = *g.find_edge("a");
  SUBCASE("empty strip set") {
    auto [head, tail] = decompose(g, P(g, "v", {"a", "b", "a~"}), {});
    CHECK(head == P(g, "v", {"a", "b"}));
    CHECK(tail.size() == 1);
  }
  SUBCASE("with a strip edge") {
    auto [head, tail] = decompose(g, P(g, "v", {"b", "a", "a"}), {a});
    CHECK(head == P(g, "v", {"b"}));
    CHECK(tail.size() == 2);
  }
  SUBCASE("whole path strips") {
    auto [head, tail] = decompose(g, P(g, "v", {"a", "b~"}), {a});
    CHECK(head.trivial());
    CHECK(tail.size() == 2);
  }
  SUBCASE("reassembly") {
    Path p = P(g, "v", {"a", "b", "a~", "b~"});
    auto [head, tail] = decompose(g, p, {a});
    Word glued = head.letters;
    glued.insert(glued.end(), tail.begin(), tail.end());
    CHECK(Path{p.root, glued} == p);
  }
}
