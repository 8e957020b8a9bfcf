#include <catch2/catch.hpp>

#include "adhesive/fincat.hpp"
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

}  // namespace

TEST_CASE("terminal category validates clean") {
  FinCategory t = terminal_category();
  ValidationReport r = validate(t);
  CHECK(r.ok());
  CHECK(r.checks_by_law["identity-law"] == 2 * t.morphisms.size());
}

TEST_CASE("identity-law checks number two per morphism") {
  for (const FinCategory& c : {chain_category(3), boolean_lattice_2(), m3_lattice()}) {
    ValidationReport r = validate(c);
    REQUIRE(r.ok());
    CHECK(r.checks_by_law["identity-law"] == 2 * c.morphisms.size());
  }
}

TEST_CASE("missing composite is reported with its pair") {
  FinCategory c = chain_category(2);
  int u = -1;
  for (std::size_t m = 0; m < c.morphisms.size(); ++m)
    if (c.src(static_cast<int>(m)) == 0 && c.dst(static_cast<int>(m)) == 1) u = static_cast<int>(m);
  REQUIRE(u >= 0);
  c.comp[static_cast<std::size_t>(u)][static_cast<std::size_t>(c.identity[0])] = -1;
  ValidationReport r = validate(c);
  REQUIRE_FALSE(r.ok());
  bool found = false;
  for (const auto& v : r.violations)
    if (v.law == "comp-domain" && v.witness.find("comp undefined") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("out-of-range op image is a violation with the element as witness") {
  CSet g = CSet::empty(graph_schema());
  g.carrier = {2, 1};
  g.fn = {{0}, {5}};  // tgt maps edge 0 to a non-vertex
  ValidationReport r = validate(g);
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].law == "fn-in-target");
  CHECK(r.violations[0].witness.find("tgt") != std::string::npos);
  CHECK(r.violations[0].witness.find("E:0") != std::string::npos);
}

TEST_CASE("validate is pure") {
  CSet g = CSet::empty(graph_schema());
  g.carrier = {2, 3};
  g.fn = {{0, 1, 7}, {1, 1, 0}};
  ValidationReport a = validate(g);
  ValidationReport b = validate(g);
  REQUIRE(a.violations.size() == b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    CHECK(a.violations[i].law == b.violations[i].law);
    CHECK(a.violations[i].witness == b.violations[i].witness);
  }
  CHECK(a.checks_by_law == b.checks_by_law);
}

TEST_CASE("schema validation flags duplicates and unknown endpoints") {
  Schema s;
  s.sorts = {"A", "A"};
  CHECK_FALSE(validate(s).ok());
  Schema t;
  t.sorts = {"A"};
  t.ops = {{"f", 0, 3}};
  CHECK_FALSE(validate(t).ok());
}

TEST_CASE("morphism naturality violations carry the op and element") {
  CSet e = CSet::empty(graph_schema());
  e.carrier = {2, 1};
  e.fn = {{0}, {1}};
  CSetMorphism f = CSetMorphism::identity(e);
  f.component[0] = {1, 0};  // swap vertices but keep the edge: breaks naturality
  ValidationReport r = validate(f);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations[0].law == "naturality");
}

TEST_CASE("compose respects identities and matches hand composition") {
  CSetMorphism f = single_mor(2, 2, {1, 0});
  CHECK(compose(CSetMorphism::identity(f.cod), f) == f);
  CHECK(compose(f, CSetMorphism::identity(f.dom)) == f);

  CSetMorphism g = single_mor(2, 2, {0, 1});
  g.component[0] = {1, 0};
  CSetMorphism gf = compose(g, f);  // {0->1,1->0} then {1->0,0->1}
  CHECK(gf.component[0] == std::vector<int>{0, 1});
}

TEST_CASE("compose rejects endpoint mismatches naming the sort") {
  CSetMorphism f = single_mor(2, 2, {1, 0});
  CSetMorphism g = single_mor(3, 2, {0, 0, 1});
  try {
    compose(g, f);
    FAIL("expected a mismatch error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("X") != std::string::npos);
  }
}

TEST_CASE("compose is associative on random composable triples") {
  Rng rng(7);
  Schema gs = graph_schema();
  for (int trial = 0; trial < 40; ++trial) {
    CSet a = testing::random_cset(gs, 4, rng);
    CSet b = testing::random_cset(gs, 4, rng);
    CSet c = testing::random_cset(gs, 4, rng);
    CSet d = testing::random_cset(gs, 4, rng);
    auto f = testing::random_hom(a, b, rng);
    auto g = testing::random_hom(b, c, rng);
    auto h = testing::random_hom(c, d, rng);
    if (!f || !g || !h) continue;
    CHECK(compose(*h, compose(*g, *f)) == compose(compose(*h, *g), *f));
  }
}

TEST_CASE("is_iso spots bijections and nothing else") {
  CHECK(is_iso(CSetMorphism::identity(single_sort(3))));
  CHECK_FALSE(is_iso(single_mor(1, 2, {0})));
  CHECK_FALSE(is_iso(single_mor(2, 1, {0, 0})));
  Rng rng(11);
  CSet g = testing::random_cset(graph_schema(), 4, rng);
  CHECK(is_iso(testing::random_iso(g, rng)));
}

TEST_CASE("left-cancellation mono agrees with injectivity in a concrete function category") {
  FinCategory fs = finset_category(2);
  REQUIRE(validate(fs).ok());
  for (std::size_t m = 0; m < fs.morphisms.size(); ++m) {
    // names encode the function table: injective iff table has no repeats
    const auto& mor = fs.morphisms[m];
    std::vector<int> seen;
    bool injective = true;
    std::string tail = mor.name.substr(mor.name.find('_') + 1);
    tail = tail.substr(tail.find('_') + 1);
    for (std::size_t i = 0; i < tail.size(); i += 2) {
      int v = tail[i] - '0';
      for (int s : seen)
        if (s == v) injective = false;
      seen.push_back(v);
    }
    if (mor.name.find("f0_") == 0) injective = true;
    CHECK(fc_is_mono(fs, static_cast<int>(m)) == injective);
  }
}
