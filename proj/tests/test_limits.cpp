#include <catch2/catch.hpp>

#include "adhesive/limits.hpp"
#include "support/generators.hpp"

using namespace adhesive;
using adhesive::testing::Rng;

namespace {

CSet single_sort(int n) {
  Schema s;
  s.sorts = {"X"};
  CSet x = CSet::empty(s);
  x.carrier = {n};
  return x;
}

CSetMorphism single_mor(int dom, int cod, std::vector<int> comp) {
  CSetMorphism f;
  f.dom = single_sort(dom);
  f.cod = single_sort(cod);
  f.component = {std::move(comp)};
  return f;
}

// 3-vertex path v0 -e0-> v1 -e1-> v2
CSet path_graph() {
  CSet g = CSet::empty(graph_schema());
  g.carrier = {3, 2};
  g.fn = {{0, 1}, {1, 2}};
  return g;
}

CSetMorphism graph_mor(CSet dom, CSet cod, std::vector<int> vs, std::vector<int> es) {
  CSetMorphism f;
  f.dom = std::move(dom);
  f.cod = std::move(cod);
  f.component = {std::move(vs), std::move(es)};
  return f;
}

}  // namespace

TEST_CASE("is_mono is componentwise injectivity") {
  CHECK(is_mono(CSetMorphism::identity(single_sort(3))));
  CHECK_FALSE(is_mono(single_mor(2, 1, {0, 0})));
  CSet e = CSet::empty(graph_schema());
  e.carrier = {2, 1};
  e.fn = {{0}, {1}};
  CSet p = path_graph();
  CSetMorphism f = graph_mor(e, p, {0, 1}, {0});
  CHECK(is_mono(f));
  CSetMorphism g = graph_mor(e, p, {1, 1}, {0});  // vertices collapse
  CHECK_FALSE(is_mono(g));
}

TEST_CASE("pullback along the identity returns the domain") {
  CSetMorphism f = single_mor(3, 2, {0, 1, 0});
  PullbackData pb = pullback(Cospan(f, CSetMorphism::identity(f.cod)));
  CHECK(pb.apex == f.dom);
  CHECK(pb.proj_left == CSetMorphism::identity(f.dom));
  CHECK(pb.proj_right == f);
}

TEST_CASE("two constant maps give the full 2x2 fiber product") {
  CSetMorphism u = single_mor(2, 1, {0, 0});
  CSetMorphism v = single_mor(2, 1, {0, 0});
  PullbackData pb = pullback(Cospan(u, v));
  REQUIRE(pb.apex.carrier[0] == 4);
  CHECK(pb.pairs[0] == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("kernel pair of a mono is its diagonal") {
  CSet e = CSet::empty(graph_schema());
  e.carrier = {2, 1};
  e.fn = {{0}, {1}};
  CSetMorphism n = graph_mor(e, path_graph(), {0, 1}, {0});
  REQUIRE(is_mono(n));
  KernelPairData kp = kernel_pair(n);
  CHECK(is_iso(kp.diagonal));
  CHECK(kp.apex.carrier == e.carrier);
}

TEST_CASE("kernel pair of the identity is the identity pair") {
  CSet x = single_sort(3);
  KernelPairData kp = kernel_pair(CSetMorphism::identity(x));
  CHECK(kp.apex == x);
  CHECK(kp.proj1 == CSetMorphism::identity(x));
  CHECK(kp.proj2 == CSetMorphism::identity(x));
}

TEST_CASE("kernel pair of a collapse enumerates all agreeing pairs") {
  CSetMorphism f = single_mor(2, 1, {0, 0});
  KernelPairData kp = kernel_pair(f);
  REQUIRE(kp.apex.carrier[0] == 4);
  CHECK(kp.diagonal.component[0] == std::vector<int>{0, 3});
  CHECK(compose(kp.proj1, kp.diagonal) == CSetMorphism::identity(f.dom));
  CHECK(compose(kp.proj2, kp.diagonal) == CSetMorphism::identity(f.dom));
}

TEST_CASE("pushout along the identity returns the other leg") {
  CSetMorphism f = single_mor(2, 3, {2, 0});
  PushoutData po = pushout(Span(CSetMorphism::identity(f.dom), f));
  CHECK(po.apex == f.cod);
  CHECK(po.inj_left == f);
  CHECK(po.inj_right == CSetMorphism::identity(f.cod));
}

TEST_CASE("pushout of an inclusion along a point is the one-extra-element form") {
  // C = {0} included in A = {0,1}; B = {0}; expect D = {0,1}
  CSetMorphism m = single_mor(1, 2, {0});
  CSetMorphism f = single_mor(1, 1, {0});
  PushoutData po = pushout(Span(m, f));
  REQUIRE(po.apex.carrier[0] == 2);
  CHECK(po.inj_left.component[0] == std::vector<int>{0, 1});
  CHECK(po.inj_right.component[0] == std::vector<int>{0});
  CHECK(is_mono(po.inj_right));
}

TEST_CASE("pushout quotients the disjoint union by the span relation") {
  // C = {0,1}, A = {0,1,2} (inclusion), B = {0} (collapse): classes {A0,A1,B0}, {A2}
  CSetMorphism m = single_mor(2, 3, {0, 1});
  CSetMorphism f = single_mor(2, 1, {0, 0});
  PushoutData po = pushout(Span(m, f));
  REQUIRE(po.apex.carrier[0] == 2);
  CHECK(po.inj_left.component[0] == std::vector<int>{0, 0, 1});
  CHECK(po.inj_right.component[0] == std::vector<int>{0});
}

TEST_CASE("pushout output assembles into a square both engines accept") {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    Span sp = testing::random_span_mono_left(graph_schema(), 3, 4, rng);
    PushoutData po = pushout(sp);
    Square sq{sp.right, sp.left, po.inj_left, po.inj_right};
    REQUIRE_FALSE(sq.commutes());
    CHECK(verify_square(sq, SquareKind::Pushout).holds);
    Budget b(5'000'000);
    SquareVerdict uv = verify_square(sq, SquareKind::Pushout, Engine::Universal, &b);
    REQUIRE_FALSE(uv.budget_exceeded);
    CHECK(uv.holds);
  }
}

TEST_CASE("pullback output assembles into a square both engines accept") {
  Rng rng(5);
  Schema gs = graph_schema();
  for (int trial = 0; trial < 25; ++trial) {
    CSet d = testing::random_cset(gs, 3, rng);
    CSetMorphism u = testing::random_morphism_onto(d, 2, rng);
    CSetMorphism v = testing::random_morphism_onto(d, 2, rng);
    PullbackData pb = pullback(Cospan(u, v));
    Square sq{pb.proj_right, pb.proj_left, u, v};
    REQUIRE_FALSE(sq.commutes());
    CHECK(verify_square(sq, SquareKind::Pullback).holds);
    Budget b(5'000'000);
    SquareVerdict uv = verify_square(sq, SquareKind::Pullback, Engine::Universal, &b);
    REQUIRE_FALSE(uv.budget_exceeded);
    CHECK(uv.holds);
  }
}

TEST_CASE("the comparison of a canonical pushout against itself is an isomorphism") {
  Rng rng(9);
  Span sp = testing::random_span_mono_left(graph_schema(), 2, 3, rng);
  PushoutData po = pushout(sp);
  Square sq{sp.right, sp.left, po.inj_left, po.inj_right};
  SquareVerdict v = verify_square(sq, SquareKind::Pushout);
  REQUIRE(v.comparison.has_value());
  CHECK(is_iso(*v.comparison));
}

TEST_CASE("a corner with a freely added element fails pushout verification") {
  CSetMorphism m = single_mor(1, 2, {0});
  CSetMorphism f = single_mor(1, 1, {0});
  PushoutData po = pushout(Span(m, f));
  CSet bloated = po.apex;
  bloated.carrier[0] += 1;  // junk element nothing maps to
  CSetMorphism bottom = po.inj_left;
  bottom.cod = bloated;
  CSetMorphism right = po.inj_right;
  right.cod = bloated;
  Square sq{f, m, bottom, right};
  SquareVerdict v = verify_square(sq, SquareKind::Pushout);
  CHECK_FALSE(v.holds);
  REQUIRE(v.comparison.has_value());
  CHECK_FALSE(is_iso(*v.comparison));
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->find("misses") != std::string::npos);
  Budget b(5'000'000);
  CHECK_FALSE(verify_square(sq, SquareKind::Pushout, Engine::Universal, &b).holds);
}

TEST_CASE("verify_square refuses squares that do not commute") {
  CSetMorphism m = single_mor(1, 2, {0});
  CSetMorphism f = single_mor(1, 2, {1});
  Square sq{f, m, CSetMorphism::identity(m.cod), CSetMorphism::identity(m.cod)};
  CHECK_THROWS_AS(verify_square(sq, SquareKind::Pushout), std::invalid_argument);
}

TEST_CASE("universal engine reports budget exhaustion distinctly") {
  Rng rng(13);
  Span sp = testing::random_span_mono_left(graph_schema(), 2, 4, rng);
  PushoutData po = pushout(sp);
  Square sq{sp.right, sp.left, po.inj_left, po.inj_right};
  Budget b(5);
  SquareVerdict v = verify_square(sq, SquareKind::Pushout, Engine::Universal, &b);
  CHECK(v.budget_exceeded);
  CHECK_FALSE(v.holds);
}

TEST_CASE("universal engine rejects cyclic schemas") {
  Schema s;
  s.sorts = {"S"};
  s.ops = {{"f", 0, 0}};
  CSet x = CSet::empty(s);
  x.carrier = {1};
  x.fn = {{0}};
  Square sq{CSetMorphism::identity(x), CSetMorphism::identity(x), CSetMorphism::identity(x),
            CSetMorphism::identity(x)};
  Budget b(1000);
  CHECK_THROWS_AS(verify_square(sq, SquareKind::Pushout, Engine::Universal, &b),
                  std::invalid_argument);
  CHECK(verify_square(sq, SquareKind::Pushout).holds);  // componentwise engine is total
}

TEST_CASE("pushouts and pullbacks are deterministic") {
  Rng rng(17);
  Span sp = testing::random_span_mono_left(graph_schema(), 2, 4, rng);
  PushoutData a = pushout(sp);
  PushoutData b = pushout(sp);
  CHECK(a.apex == b.apex);
  CHECK(a.inj_left == b.inj_left);
  CHECK(a.inj_right == b.inj_right);
}

TEST_CASE("pushout is stable under isomorphic relabeling, up to isomorphism") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    Span sp = testing::random_span_mono_left(graph_schema(), 2, 4, rng);
    CSetMorphism ia = testing::random_iso(sp.left.cod, rng);
    CSetMorphism ib = testing::random_iso(sp.right.cod, rng);
    Span relabeled(compose(ia, sp.left), compose(ib, sp.right));
    CHECK(testing::cset_isomorphic(pushout(sp).apex, pushout(relabeled).apex));
  }
}

TEST_CASE("union of a subobject with itself is that subobject") {
  CSet e = CSet::empty(graph_schema());
  e.carrier = {2, 1};
  e.fn = {{0}, {1}};
  CSetMorphism a = graph_mor(e, path_graph(), {0, 1}, {0});
  UnionData u = subobject_union(a, a);
  CHECK(u.object.carrier == a.dom.carrier);
  CHECK(testing::cset_isomorphic(u.object, a.dom));
  CHECK(is_mono(u.embedding));
}

TEST_CASE("disjoint subobjects union to their coproduct") {
  CSetMorphism a = single_mor(1, 2, {0});
  CSetMorphism b = single_mor(1, 2, {1});
  UnionData u = subobject_union(a, b);
  CHECK(u.object.carrier[0] == 2);
  CHECK(is_mono(u.embedding));
}

TEST_CASE("overlapping edge subgraphs of a path union to the full path") {
  CSet p = path_graph();
  CSet e = CSet::empty(graph_schema());
  e.carrier = {2, 1};
  e.fn = {{0}, {1}};
  CSetMorphism a = graph_mor(e, p, {0, 1}, {0});  // first edge
  CSetMorphism b = graph_mor(e, p, {1, 2}, {1});  // second edge, shares the middle vertex
  UnionData u = subobject_union(a, b);
  CHECK(u.object.carrier == p.carrier);
  CHECK(is_iso(u.embedding));
}

TEST_CASE("union rejects non-monos naming the side") {
  CSetMorphism a = single_mor(2, 2, {0, 0});
  try {
    subobject_union(a, CSetMorphism::identity(a.cod));
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("left subobject") != std::string::npos);
  }
}

TEST_CASE("union image is the elementwise union of images") {
  Rng rng(31);
  Schema gs = graph_schema();
  for (int trial = 0; trial < 30; ++trial) {
    CSet x = testing::random_cset(gs, 5, rng);
    auto subs = testing::all_subobjects(x);
    if (subs.size() < 2) continue;
    const CSetMorphism& a = subs[rng() % subs.size()];
    const CSetMorphism& b = subs[rng() % subs.size()];
    UnionData u = subobject_union(a, b);
    REQUIRE(is_mono(u.embedding));
    for (std::size_t s = 0; s < x.carrier.size(); ++s) {
      std::vector<bool> expect(static_cast<std::size_t>(x.carrier[s]), false);
      for (int v : a.component[s]) expect[static_cast<std::size_t>(v)] = true;
      for (int v : b.component[s]) expect[static_cast<std::size_t>(v)] = true;
      std::vector<bool> got(static_cast<std::size_t>(x.carrier[s]), false);
      for (int v : u.embedding.component[s]) got[static_cast<std::size_t>(v)] = true;
      CHECK(expect == got);
    }
  }
}

TEST_CASE("free and cofree test objects have the expected graph shapes") {
  Schema gs = graph_schema();
  CSet fe = free_on_one(gs, 1);
  CHECK(fe.carrier == std::vector<int>{2, 1});
  CSet fv = free_on_one(gs, 0);
  CHECK(fv.carrier == std::vector<int>{1, 0});
  CSet cv = cofree_on_two(gs, 0);
  CHECK(cv.carrier == std::vector<int>{2, 4});
  CSet ce = cofree_on_two(gs, 1);
  CHECK(ce.carrier == std::vector<int>{1, 2});
  Budget b(1'000'000);
  // adjunction cardinalities: |hom(X, cofree_s)| = 2^|X(s)|
  CSet p = path_graph();
  CHECK(testing::brute_force_homs(p, cv, false).size() == 8);
  CHECK(testing::brute_force_homs(p, ce, false).size() == 4);
  // |hom(free_s, X)| = |X(s)|
  CHECK(testing::brute_force_homs(fe, p, false).size() == 2);
  (void)b;
}

TEST_CASE("hom enumeration is lexicographic and matches brute force") {
  Rng rng(37);
  Schema gs = graph_schema();
  for (int trial = 0; trial < 15; ++trial) {
    CSet a = testing::random_cset(gs, 3, rng);
    CSet b = testing::random_cset(gs, 3, rng);
    auto oracle = testing::brute_force_homs(a, b, false);
    std::vector<CSetMorphism> got;
    Budget budget(10'000'000);
    enumerate_homs(a, b, false, budget, [&](const CSetMorphism& f) {
      got.push_back(f);
      return true;
    });
    REQUIRE(got.size() == oracle.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == oracle[i]);
  }
}
