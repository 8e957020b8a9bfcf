#pragma once

// Core data model: free schemas, C-set instances and their morphisms, and
// explicit finite categories with a composition table. Everything is an
// immutable value type; element identifiers are dense integers 0..n-1 per
// sort, so all derived constructions can relabel canonically.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adhesive {

// ---------------------------------------------------------------------------
// validation reports

struct Violation {
  std::string law;      // short law tag, e.g. "comp-undefined"
  std::string witness;  // concrete witness description
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::map<std::string, std::size_t> checks_by_law;

  bool ok() const { return violations.empty(); }

  std::size_t total_checks() const {
    std::size_t n = 0;
    for (auto& [_, c] : checks_by_law) n += c;
    return n;
  }

  void check(const std::string& law) { ++checks_by_law[law]; }

  void fail(std::string law, std::string witness) {
    violations.push_back({std::move(law), std::move(witness)});
  }
};

// ---------------------------------------------------------------------------
// schemas and C-sets

struct SchemaOp {
  std::string name;
  int src = -1;  // sort index
  int dst = -1;
  bool operator==(const SchemaOp&) const = default;
};

// Free schema: named sorts and unary ops between them, no equations.
struct Schema {
  std::vector<std::string> sorts;
  std::vector<SchemaOp> ops;

  bool operator==(const Schema&) const = default;

  int sort_index(std::string_view name) const {
    for (std::size_t i = 0; i < sorts.size(); ++i)
      if (sorts[i] == name) return static_cast<int>(i);
    return -1;
  }

  int op_index(std::string_view name) const {
    for (std::size_t i = 0; i < ops.size(); ++i)
      if (ops[i].name == name) return static_cast<int>(i);
    return -1;
  }
};

// Directed multigraphs: the workhorse schema of the test corpus.
inline Schema graph_schema() {
  Schema s;
  s.sorts = {"V", "E"};
  s.ops = {{"src", 1, 0}, {"tgt", 1, 0}};
  return s;
}

// A functor from the free category on a schema to finite sets: one carrier
// size per sort, one total function per op.
struct CSet {
  Schema schema;
  std::vector<int> carrier;              // size per sort
  std::vector<std::vector<int>> fn;      // per op: images of 0..carrier[src]-1

  bool operator==(const CSet&) const = default;

  static CSet empty(const Schema& s) {
    CSet x;
    x.schema = s;
    x.carrier.assign(s.sorts.size(), 0);
    x.fn.assign(s.ops.size(), {});
    return x;
  }

  int size(int sort) const { return carrier[static_cast<std::size_t>(sort)]; }

  int apply(int op, int x) const {
    return fn[static_cast<std::size_t>(op)][static_cast<std::size_t>(x)];
  }

  std::size_t total_elements() const {
    std::size_t n = 0;
    for (int c : carrier) n += static_cast<std::size_t>(c);
    return n;
  }
};

struct CSetMorphism {
  CSet dom, cod;
  std::vector<std::vector<int>> component;  // per sort

  bool operator==(const CSetMorphism&) const = default;

  static CSetMorphism identity(const CSet& x) {
    CSetMorphism f;
    f.dom = x;
    f.cod = x;
    f.component.resize(x.carrier.size());
    for (std::size_t s = 0; s < x.carrier.size(); ++s) {
      f.component[s].resize(static_cast<std::size_t>(x.carrier[s]));
      for (int i = 0; i < x.carrier[s]; ++i) f.component[s][static_cast<std::size_t>(i)] = i;
    }
    return f;
  }

  int at(int sort, int x) const {
    return component[static_cast<std::size_t>(sort)][static_cast<std::size_t>(x)];
  }
};

// ---------------------------------------------------------------------------
// finite categories

struct FcMor {
  std::string name;
  int src = -1;  // object index
  int dst = -1;
  bool operator==(const FcMor&) const = default;
};

// Explicit finite category: objects, morphisms, identities, and a total
// composition table over composable pairs. comp[g][f] = g.f, -1 = undefined.
struct FinCategory {
  std::vector<std::string> objects;
  std::vector<FcMor> morphisms;
  std::vector<int> identity;               // per object: morphism index
  std::vector<std::vector<int>> comp;

  bool operator==(const FinCategory&) const = default;

  int object_index(std::string_view name) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == name) return static_cast<int>(i);
    return -1;
  }

  int morphism_index(std::string_view name) const {
    for (std::size_t i = 0; i < morphisms.size(); ++i)
      if (morphisms[i].name == name) return static_cast<int>(i);
    return -1;
  }

  int src(int m) const { return morphisms[static_cast<std::size_t>(m)].src; }
  int dst(int m) const { return morphisms[static_cast<std::size_t>(m)].dst; }

  // g.f, or -1 when the pair is not composable / the table has a gap.
  int compose(int g, int f) const {
    return comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
  }

  std::vector<int> hom(int a, int b) const {
    std::vector<int> out;
    for (std::size_t m = 0; m < morphisms.size(); ++m)
      if (morphisms[m].src == a && morphisms[m].dst == b) out.push_back(static_cast<int>(m));
    return out;
  }
};

// ---------------------------------------------------------------------------
// validation

inline ValidationReport validate(const Schema& s) {
  ValidationReport r;
  for (std::size_t i = 0; i < s.sorts.size(); ++i) {
    r.check("sort-name-unique");
    for (std::size_t j = i + 1; j < s.sorts.size(); ++j)
      if (s.sorts[i] == s.sorts[j])
        r.fail("sort-name-unique", "duplicate sort '" + s.sorts[i] + "'");
  }
  for (std::size_t i = 0; i < s.ops.size(); ++i) {
    const auto& op = s.ops[i];
    r.check("op-name-unique");
    for (std::size_t j = i + 1; j < s.ops.size(); ++j)
      if (op.name == s.ops[j].name) r.fail("op-name-unique", "duplicate op '" + op.name + "'");
    r.check("op-endpoints-declared");
    if (op.src < 0 || op.src >= static_cast<int>(s.sorts.size()) || op.dst < 0 ||
        op.dst >= static_cast<int>(s.sorts.size()))
      r.fail("op-endpoints-declared", "op '" + op.name + "' references an unknown sort");
  }
  return r;
}

inline ValidationReport validate(const CSet& x) {
  ValidationReport r = validate(x.schema);
  if (x.carrier.size() != x.schema.sorts.size())
    r.fail("carrier-per-sort", "expected " + std::to_string(x.schema.sorts.size()) +
                                   " carriers, got " + std::to_string(x.carrier.size()));
  if (x.fn.size() != x.schema.ops.size())
    r.fail("fn-per-op", "expected " + std::to_string(x.schema.ops.size()) + " op functions, got " +
                            std::to_string(x.fn.size()));
  if (!r.ok()) return r;

  for (std::size_t s = 0; s < x.carrier.size(); ++s) {
    r.check("carrier-nonnegative");
    if (x.carrier[s] < 0)
      r.fail("carrier-nonnegative", "sort '" + x.schema.sorts[s] + "' has negative size");
  }
  for (std::size_t o = 0; o < x.schema.ops.size(); ++o) {
    const auto& op = x.schema.ops[o];
    r.check("fn-total");
    if (static_cast<int>(x.fn[o].size()) != x.carrier[static_cast<std::size_t>(op.src)]) {
      r.fail("fn-total", "op '" + op.name + "' defined on " + std::to_string(x.fn[o].size()) +
                             " of " + std::to_string(x.carrier[static_cast<std::size_t>(op.src)]) +
                             " elements");
      continue;
    }
    for (std::size_t e = 0; e < x.fn[o].size(); ++e) {
      r.check("fn-in-target");
      int v = x.fn[o][e];
      if (v < 0 || v >= x.carrier[static_cast<std::size_t>(op.dst)])
        r.fail("fn-in-target", "op '" + op.name + "' maps " + x.schema.sorts[static_cast<std::size_t>(op.src)] +
                                   ":" + std::to_string(e) + " to out-of-range " + std::to_string(v));
    }
  }
  return r;
}

inline ValidationReport validate(const CSetMorphism& f) {
  ValidationReport r;
  ValidationReport rd = validate(f.dom);
  ValidationReport rc = validate(f.cod);
  for (auto& v : rd.violations) r.fail("dom/" + v.law, v.witness);
  for (auto& v : rc.violations) r.fail("cod/" + v.law, v.witness);
  r.check("same-schema");
  if (!(f.dom.schema == f.cod.schema)) {
    r.fail("same-schema", "dom and cod have different schemas");
    return r;
  }
  if (f.component.size() != f.dom.carrier.size()) {
    r.fail("component-per-sort", "expected " + std::to_string(f.dom.carrier.size()) +
                                     " components, got " + std::to_string(f.component.size()));
    return r;
  }
  if (!r.ok()) return r;

  const Schema& sch = f.dom.schema;
  for (std::size_t s = 0; s < f.component.size(); ++s) {
    r.check("component-total");
    if (static_cast<int>(f.component[s].size()) != f.dom.carrier[s]) {
      r.fail("component-total", "sort '" + sch.sorts[s] + "' component has wrong length");
      continue;
    }
    for (std::size_t e = 0; e < f.component[s].size(); ++e) {
      r.check("component-in-cod");
      int v = f.component[s][e];
      if (v < 0 || v >= f.cod.carrier[s])
        r.fail("component-in-cod", "sort '" + sch.sorts[s] + "': " + std::to_string(e) +
                                       " maps to out-of-range " + std::to_string(v));
    }
  }
  if (!r.ok()) return r;

  for (std::size_t o = 0; o < sch.ops.size(); ++o) {
    const auto& op = sch.ops[o];
    for (int x = 0; x < f.dom.carrier[static_cast<std::size_t>(op.src)]; ++x) {
      r.check("naturality");
      int lhs = f.at(op.dst, f.dom.apply(static_cast<int>(o), x));
      int rhs = f.cod.apply(static_cast<int>(o), f.at(op.src, x));
      if (lhs != rhs)
        r.fail("naturality", "op '" + op.name + "' at " + sch.sorts[static_cast<std::size_t>(op.src)] +
                                 ":" + std::to_string(x) + ": " + std::to_string(lhs) +
                                 " != " + std::to_string(rhs));
    }
  }
  return r;
}

inline ValidationReport validate(const FinCategory& c) {
  ValidationReport r;
  const int nobj = static_cast<int>(c.objects.size());
  const int nmor = static_cast<int>(c.morphisms.size());

  for (std::size_t i = 0; i < c.objects.size(); ++i) {
    r.check("object-name-unique");
    for (std::size_t j = i + 1; j < c.objects.size(); ++j)
      if (c.objects[i] == c.objects[j])
        r.fail("object-name-unique", "duplicate object '" + c.objects[i] + "'");
  }
  for (std::size_t i = 0; i < c.morphisms.size(); ++i) {
    r.check("morphism-name-unique");
    for (std::size_t j = i + 1; j < c.morphisms.size(); ++j)
      if (c.morphisms[i].name == c.morphisms[j].name)
        r.fail("morphism-name-unique", "duplicate morphism '" + c.morphisms[i].name + "'");
    r.check("morphism-endpoints");
    if (c.morphisms[i].src < 0 || c.morphisms[i].src >= nobj || c.morphisms[i].dst < 0 ||
        c.morphisms[i].dst >= nobj)
      r.fail("morphism-endpoints", "morphism '" + c.morphisms[i].name + "' references an unknown object");
  }
  if (static_cast<int>(c.identity.size()) != nobj)
    r.fail("identity-per-object", "expected " + std::to_string(nobj) + " identities, got " +
                                      std::to_string(c.identity.size()));
  if (static_cast<int>(c.comp.size()) != nmor)
    r.fail("comp-table-shape", "composition table has wrong row count");
  else
    for (auto& row : c.comp)
      if (static_cast<int>(row.size()) != nmor) {
        r.fail("comp-table-shape", "composition table has a ragged row");
        break;
      }
  if (!r.ok()) return r;

  auto mname = [&](int m) { return c.morphisms[static_cast<std::size_t>(m)].name; };

  for (int a = 0; a < nobj; ++a) {
    r.check("identity-endpoints");
    int id = c.identity[static_cast<std::size_t>(a)];
    if (id < 0 || id >= nmor)
      r.fail("identity-endpoints", "object '" + c.objects[static_cast<std::size_t>(a)] +
                                       "' has no identity morphism");
    else if (c.src(id) != a || c.dst(id) != a)
      r.fail("identity-endpoints", "identity of '" + c.objects[static_cast<std::size_t>(a)] +
                                       "' is not an endomorphism of it");
  }
  if (!r.ok()) return r;

  // comp defined exactly on composable pairs, with the right endpoints
  for (int g = 0; g < nmor; ++g)
    for (int f = 0; f < nmor; ++f) {
      int gf = c.compose(g, f);
      bool composable = c.dst(f) == c.src(g);
      r.check("comp-domain");
      if (composable && gf < 0)
        r.fail("comp-domain", "comp undefined at (" + mname(g) + "," + mname(f) + ")");
      if (!composable && gf >= 0)
        r.fail("comp-domain", "comp defined on non-composable (" + mname(g) + "," + mname(f) + ")");
      if (composable && gf >= 0) {
        r.check("comp-endpoints");
        if (gf >= nmor || c.src(gf) != c.src(f) || c.dst(gf) != c.dst(g))
          r.fail("comp-endpoints", "comp(" + mname(g) + "," + mname(f) + ") has wrong endpoints");
      }
    }
  if (!r.ok()) return r;

  // identity laws: two checks per morphism
  for (int f = 0; f < nmor; ++f) {
    r.check("identity-law");
    if (c.compose(f, c.identity[static_cast<std::size_t>(c.src(f))]) != f)
      r.fail("identity-law", mname(f) + " . id != " + mname(f));
    r.check("identity-law");
    if (c.compose(c.identity[static_cast<std::size_t>(c.dst(f))], f) != f)
      r.fail("identity-law", "id . " + mname(f) + " != " + mname(f));
  }

  // associativity over all composable triples
  for (int h = 0; h < nmor; ++h)
    for (int g = 0; g < nmor; ++g) {
      if (c.dst(g) != c.src(h)) continue;
      for (int f = 0; f < nmor; ++f) {
        if (c.dst(f) != c.src(g)) continue;
        r.check("associativity");
        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
          r.fail("associativity",
                 "(" + mname(h) + "," + mname(g) + "," + mname(f) + ") breaks associativity");
      }
    }
  return r;
}

// ---------------------------------------------------------------------------
// composition and isomorphism of C-set morphisms

inline CSetMorphism compose(const CSetMorphism& g, const CSetMorphism& f) {
  if (!(f.cod == g.dom)) {
    for (std::size_t s = 0; s < f.cod.carrier.size() && s < g.dom.carrier.size(); ++s)
      if (f.cod.carrier[s] != g.dom.carrier[s])
        throw std::invalid_argument("compose: cod(f) != dom(g) at sort '" +
                                    f.cod.schema.sorts[s] + "' (" +
                                    std::to_string(f.cod.carrier[s]) + " vs " +
                                    std::to_string(g.dom.carrier[s]) + ")");
    throw std::invalid_argument("compose: cod(f) != dom(g)");
  }
  CSetMorphism h;
  h.dom = f.dom;
  h.cod = g.cod;
  h.component.resize(f.component.size());
  for (std::size_t s = 0; s < f.component.size(); ++s) {
    h.component[s].resize(f.component[s].size());
    for (std::size_t x = 0; x < f.component[s].size(); ++x)
      h.component[s][x] = g.component[s][static_cast<std::size_t>(f.component[s][x])];
  }
  return h;
}

inline bool is_iso(const CSetMorphism& f) {
  for (std::size_t s = 0; s < f.component.size(); ++s) {
    if (f.dom.carrier[s] != f.cod.carrier[s]) return false;
    std::vector<bool> hit(static_cast<std::size_t>(f.cod.carrier[s]), false);
    for (int v : f.component[s]) {
      if (hit[static_cast<std::size_t>(v)]) return false;
      hit[static_cast<std::size_t>(v)] = true;
    }
  }
  return true;
}

}  // namespace adhesive
