#pragma once

// Pullbacks, pushouts, kernel pairs and subobject unions in C-set categories,
// plus square verification by two independent engines:
//
//   componentwise - builds the canonical (co)limit and tests the induced
//                   comparison morphism for isomorphism;
//   universal     - enumerates (co)cones and mediating morphisms against a
//                   family of test objects (free on one generator for limits,
//                   cofree on a two-element set for colimits). For acyclic
//                   schemas this family is complete, so the engine is exact.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_map>

#include "adhesive/core.hpp"

namespace adhesive {

// ---------------------------------------------------------------------------
// enumeration budget

struct Budget {
  std::uint64_t remaining = 0;
  bool exceeded = false;

  explicit Budget(std::uint64_t n) : remaining(n) {}

  bool tick(std::uint64_t n = 1) {
    if (exceeded) return false;
    if (remaining < n) {
      remaining = 0;
      exceeded = true;
      return false;
    }
    remaining -= n;
    return true;
  }
};

inline std::uint64_t default_budget() {
  if (const char* env = std::getenv("ADHESIVE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 50'000'000ull;
}

struct BudgetExceeded : std::runtime_error {
  BudgetExceeded() : std::runtime_error("enumeration budget exceeded") {}
};

// ---------------------------------------------------------------------------
// spans, cospans, squares

inline bool is_mono(const CSetMorphism& f) {
  for (std::size_t s = 0; s < f.component.size(); ++s) {
    std::vector<bool> hit(static_cast<std::size_t>(f.cod.carrier[s]), false);
    for (int v : f.component[s]) {
      if (hit[static_cast<std::size_t>(v)]) return false;
      hit[static_cast<std::size_t>(v)] = true;
    }
  }
  return true;
}

struct Span {
  CSetMorphism left, right;  // common domain (the apex)

  Span(CSetMorphism l, CSetMorphism r) : left(std::move(l)), right(std::move(r)) {
    if (!(left.dom == right.dom)) throw std::invalid_argument("span legs have different apex");
  }

  const CSet& apex() const { return left.dom; }
};

struct Cospan {
  CSetMorphism left, right;  // common codomain

  Cospan(CSetMorphism l, CSetMorphism r) : left(std::move(l)), right(std::move(r)) {
    if (!(left.cod == right.cod)) throw std::invalid_argument("cospan legs have different target");
  }

  const CSet& target() const { return left.cod; }
};

// Commutative square
//        top
//     C ------> B
//     |         |
//  left         right
//     v         v
//     A ------> D
//       bottom
struct Square {
  CSetMorphism top, left, bottom, right;

  const CSet& c() const { return top.dom; }
  const CSet& b() const { return top.cod; }
  const CSet& a() const { return left.cod; }
  const CSet& d() const { return bottom.cod; }

  // nullopt if the square commutes, otherwise a witness description
  std::optional<std::string> commutes() const {
    if (!(top.dom == left.dom) || !(bottom.dom == left.cod) || !(right.dom == top.cod) ||
        !(bottom.cod == right.cod))
      return "square sides do not share corners";
    for (std::size_t s = 0; s < top.component.size(); ++s)
      for (int x = 0; x < top.dom.carrier[s]; ++x) {
        int via_a = bottom.at(static_cast<int>(s), left.at(static_cast<int>(s), x));
        int via_b = right.at(static_cast<int>(s), top.at(static_cast<int>(s), x));
        if (via_a != via_b)
          return "sort '" + top.dom.schema.sorts[s] + "' element " + std::to_string(x) +
                 ": paths give " + std::to_string(via_a) + " and " + std::to_string(via_b);
      }
    return std::nullopt;
  }
};

enum class SquareKind { Pushout, Pullback };
enum class Engine { Componentwise, Universal };

inline const char* to_string(SquareKind k) {
  return k == SquareKind::Pushout ? "pushout" : "pullback";
}
inline const char* to_string(Engine e) {
  return e == Engine::Componentwise ? "componentwise" : "universal";
}

struct SquareVerdict {
  SquareKind kind_checked = SquareKind::Pushout;
  bool holds = false;
  bool budget_exceeded = false;
  std::optional<CSetMorphism> comparison;  // canonical object -> corner (pushout)
                                           // or corner -> canonical object (pullback)
  std::optional<std::string> witness;
};

// ---------------------------------------------------------------------------
// morphism enumeration
//
// Backtracking over slots (sort-major, element order), smallest candidate
// first, so morphisms come out in lexicographic order of the flattened
// component vector. Returns false when the budget ran out mid-enumeration.

inline bool enumerate_homs(const CSet& dom, const CSet& cod, bool mono_only, Budget& budget,
                           const std::function<bool(const CSetMorphism&)>& yield) {
  if (!(dom.schema == cod.schema))
    throw std::invalid_argument("enumerate_homs: schema mismatch");
  const Schema& sch = dom.schema;
  const std::size_t nsorts = sch.sorts.size();

  // slot = (sort, element), flattened sort-major
  std::vector<std::size_t> slot_base(nsorts + 1, 0);
  for (std::size_t s = 0; s < nsorts; ++s)
    slot_base[s + 1] = slot_base[s] + static_cast<std::size_t>(dom.carrier[s]);
  const std::size_t nslots = slot_base[nsorts];

  std::vector<std::vector<int>> comp(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s)
    comp[s].assign(static_cast<std::size_t>(dom.carrier[s]), -1);
  std::vector<std::vector<bool>> used(nsorts);
  if (mono_only)
    for (std::size_t s = 0; s < nsorts; ++s)
      used[s].assign(static_cast<std::size_t>(cod.carrier[s]), false);

  // constraints touching a slot: op o with dom-side slot (src,x) and
  // image slot (dst, dom.fn[o][x])
  struct Edge {
    int op, src_sort, src_elem, dst_sort, dst_elem;
  };
  std::vector<std::vector<Edge>> edges_at(nslots);
  for (std::size_t o = 0; o < sch.ops.size(); ++o) {
    const auto& op = sch.ops[o];
    for (int x = 0; x < dom.carrier[static_cast<std::size_t>(op.src)]; ++x) {
      Edge e{static_cast<int>(o), op.src, x, op.dst, dom.apply(static_cast<int>(o), x)};
      edges_at[slot_base[static_cast<std::size_t>(op.src)] + static_cast<std::size_t>(x)].push_back(e);
      edges_at[slot_base[static_cast<std::size_t>(op.dst)] + static_cast<std::size_t>(e.dst_elem)].push_back(e);
    }
  }

  auto consistent = [&](std::size_t slot) {
    for (const Edge& e : edges_at[slot]) {
      int sv = comp[static_cast<std::size_t>(e.src_sort)][static_cast<std::size_t>(e.src_elem)];
      int dv = comp[static_cast<std::size_t>(e.dst_sort)][static_cast<std::size_t>(e.dst_elem)];
      if (sv < 0 || dv < 0) continue;
      if (cod.apply(e.op, sv) != dv) return false;
    }
    return true;
  };

  bool stopped = false;
  std::function<bool(std::size_t)> rec = [&](std::size_t slot) -> bool {
    if (!budget.tick()) return false;
    if (slot == nslots) {
      CSetMorphism f;
      f.dom = dom;
      f.cod = cod;
      f.component = comp;
      if (!yield(f)) stopped = true;
      return !stopped;
    }
    std::size_t s = 0;
    while (slot >= slot_base[s + 1]) ++s;
    int x = static_cast<int>(slot - slot_base[s]);
    for (int v = 0; v < cod.carrier[s]; ++v) {
      if (mono_only && used[s][static_cast<std::size_t>(v)]) continue;
      comp[s][static_cast<std::size_t>(x)] = v;
      if (consistent(slot)) {
        if (mono_only) used[s][static_cast<std::size_t>(v)] = true;
        bool go_on = rec(slot + 1);
        if (mono_only) used[s][static_cast<std::size_t>(v)] = false;
        if (!go_on) {
          comp[s][static_cast<std::size_t>(x)] = -1;
          return false;
        }
      }
      comp[s][static_cast<std::size_t>(x)] = -1;
    }
    return true;
  };
  rec(0);
  return !budget.exceeded;
}

inline std::vector<CSetMorphism> all_homs(const CSet& dom, const CSet& cod, Budget& budget) {
  std::vector<CSetMorphism> out;
  enumerate_homs(dom, cod, false, budget, [&](const CSetMorphism& f) {
    out.push_back(f);
    return true;
  });
  if (budget.exceeded) throw BudgetExceeded{};
  return out;
}

// ---------------------------------------------------------------------------
// free and cofree test objects
//
// Paths in the schema's op-graph index the carriers: the free C-set on one
// generator of sort s has paths s->t at sort t; the cofree C-set on {0,1}
// has characteristic functions of paths t->s at sort t. Both are finite
// exactly when the op-graph is acyclic.

namespace detail {

struct SchemaPaths {
  // per sort: list of op-sequences; [0] at the base sort is the empty path
  std::vector<std::vector<std::vector<int>>> paths;
  std::vector<std::map<std::vector<int>, int>> index;
};

inline bool schema_acyclic(const Schema& sch) {
  const std::size_t n = sch.sorts.size();
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::function<bool(int)> dfs = [&](int s) {
    state[static_cast<std::size_t>(s)] = 1;
    for (const auto& op : sch.ops)
      if (op.src == s) {
        if (state[static_cast<std::size_t>(op.dst)] == 1) return false;
        if (state[static_cast<std::size_t>(op.dst)] == 0 && !dfs(op.dst)) return false;
      }
    state[static_cast<std::size_t>(s)] = 2;
    return true;
  };
  for (std::size_t s = 0; s < n; ++s)
    if (state[s] == 0 && !dfs(static_cast<int>(s))) return false;
  return true;
}

// all op-paths starting at `from` (forward = true) or ending at `from`
// (forward = false), grouped by the other endpoint, in shortlex order
inline SchemaPaths schema_paths(const Schema& sch, int from, bool forward) {
  if (!schema_acyclic(sch))
    throw std::invalid_argument(
        "universal engine requires an acyclic schema (free/cofree objects are infinite)");
  SchemaPaths out;
  out.paths.resize(sch.sorts.size());
  out.index.resize(sch.sorts.size());
  // BFS by path length; op-index order within a frontier gives shortlex
  std::vector<std::pair<int, std::vector<int>>> frontier = {{from, {}}};
  while (!frontier.empty()) {
    std::vector<std::pair<int, std::vector<int>>> next;
    for (auto& [sort, path] : frontier) {
      auto& bucket = out.paths[static_cast<std::size_t>(sort)];
      out.index[static_cast<std::size_t>(sort)][path] = static_cast<int>(bucket.size());
      bucket.push_back(path);
      for (std::size_t o = 0; o < sch.ops.size(); ++o) {
        const auto& op = sch.ops[o];
        int hinge = forward ? op.src : op.dst;
        if (hinge != sort) continue;
        std::vector<int> ext = path;
        if (forward)
          ext.push_back(static_cast<int>(o));  // path then op
        else
          ext.insert(ext.begin(), static_cast<int>(o));  // op then path
        next.emplace_back(forward ? op.dst : op.src, std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace detail

// free C-set on one generator of the given sort; elements of sort t are the
// op-paths sort->t, the generator is the empty path
inline CSet free_on_one(const Schema& sch, int sort) {
  auto p = detail::schema_paths(sch, sort, true);
  CSet x = CSet::empty(sch);
  for (std::size_t s = 0; s < sch.sorts.size(); ++s)
    x.carrier[s] = static_cast<int>(p.paths[s].size());
  for (std::size_t o = 0; o < sch.ops.size(); ++o) {
    const auto& op = sch.ops[o];
    x.fn[o].resize(static_cast<std::size_t>(x.carrier[static_cast<std::size_t>(op.src)]));
    for (std::size_t e = 0; e < p.paths[static_cast<std::size_t>(op.src)].size(); ++e) {
      std::vector<int> ext = p.paths[static_cast<std::size_t>(op.src)][e];
      ext.push_back(static_cast<int>(o));
      x.fn[o][e] = p.index[static_cast<std::size_t>(op.dst)].at(ext);
    }
  }
  return x;
}

// cofree C-set on the two-element set at the given sort; elements of sort t
// are bitmasks over the op-paths t->sort
inline CSet cofree_on_two(const Schema& sch, int sort) {
  auto p = detail::schema_paths(sch, sort, false);
  for (std::size_t s = 0; s < sch.sorts.size(); ++s)
    if (p.paths[s].size() > 20)
      throw std::invalid_argument("cofree test object too large for sort '" + sch.sorts[s] + "'");
  CSet x = CSet::empty(sch);
  for (std::size_t s = 0; s < sch.sorts.size(); ++s)
    x.carrier[s] = 1 << p.paths[s].size();
  for (std::size_t o = 0; o < sch.ops.size(); ++o) {
    const auto& op = sch.ops[o];
    const auto& dst_paths = p.paths[static_cast<std::size_t>(op.dst)];
    x.fn[o].resize(static_cast<std::size_t>(x.carrier[static_cast<std::size_t>(op.src)]));
    for (int mask = 0; mask < x.carrier[static_cast<std::size_t>(op.src)]; ++mask) {
      int img = 0;
      for (std::size_t q = 0; q < dst_paths.size(); ++q) {
        // the dst-side path q pulled back along op is (op, q...) on the src side
        std::vector<int> pre = dst_paths[q];
        pre.insert(pre.begin(), static_cast<int>(o));
        int pi = p.index[static_cast<std::size_t>(op.src)].at(pre);
        if (mask & (1 << pi)) img |= 1 << q;
      }
      x.fn[o][static_cast<std::size_t>(mask)] = img;
    }
  }
  return x;
}

// ---------------------------------------------------------------------------
// pullback

struct PullbackData {
  CSet apex;
  CSetMorphism proj_left;   // apex -> A
  CSetMorphism proj_right;  // apex -> B
  std::vector<std::vector<std::pair<int, int>>> pairs;  // per sort: element -> (a, b)

  Span span() const { return Span(proj_left, proj_right); }

  int pair_index(int sort, int a, int b) const {
    const auto& v = pairs[static_cast<std::size_t>(sort)];
    auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(a, b));
    if (it == v.end() || *it != std::make_pair(a, b)) return -1;
    return static_cast<int>(it - v.begin());
  }
};

// componentwise fiber product with lexicographic relabeling
inline PullbackData pullback(const Cospan& cs) {
  const CSet& A = cs.left.dom;
  const CSet& B = cs.right.dom;
  const Schema& sch = A.schema;

  PullbackData out;
  out.apex = CSet::empty(sch);
  out.pairs.resize(sch.sorts.size());
  for (std::size_t s = 0; s < sch.sorts.size(); ++s) {
    for (int a = 0; a < A.carrier[s]; ++a)
      for (int b = 0; b < B.carrier[s]; ++b)
        if (cs.left.at(static_cast<int>(s), a) == cs.right.at(static_cast<int>(s), b))
          out.pairs[s].emplace_back(a, b);
    out.apex.carrier[s] = static_cast<int>(out.pairs[s].size());
  }
  for (std::size_t o = 0; o < sch.ops.size(); ++o) {
    const auto& op = sch.ops[o];
    out.apex.fn[o].resize(static_cast<std::size_t>(out.apex.carrier[static_cast<std::size_t>(op.src)]));
    for (std::size_t e = 0; e < out.pairs[static_cast<std::size_t>(op.src)].size(); ++e) {
      auto [a, b] = out.pairs[static_cast<std::size_t>(op.src)][e];
      int ia = A.apply(static_cast<int>(o), a);
      int ib = B.apply(static_cast<int>(o), b);
      int idx = out.pair_index(op.dst, ia, ib);
      if (idx < 0) throw std::logic_error("pullback: image pair missing from apex");
      out.apex.fn[o][e] = idx;
    }
  }
  out.proj_left.dom = out.apex;
  out.proj_left.cod = A;
  out.proj_right.dom = out.apex;
  out.proj_right.cod = B;
  out.proj_left.component.resize(sch.sorts.size());
  out.proj_right.component.resize(sch.sorts.size());
  for (std::size_t s = 0; s < sch.sorts.size(); ++s)
    for (auto [a, b] : out.pairs[s]) {
      out.proj_left.component[s].push_back(a);
      out.proj_right.component[s].push_back(b);
    }
  return out;
}

// ---------------------------------------------------------------------------
// pushout

namespace detail {

// plain union-find over 0..n-1, no rank: parent of a class is its least member
struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  }

  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;  // least member leads
  }
};

}  // namespace detail

struct PushoutData {
  CSet apex;
  CSetMorphism inj_left;   // A -> apex
  CSetMorphism inj_right;  // B -> apex

  Cospan cospan() const { return Cospan(inj_left, inj_right); }
};

// quotient of the disjoint union A + B by left(c) ~ right(c); classes are
// relabeled by least member, A-elements first then surviving B-elements
inline PushoutData pushout(const Span& sp) {
  const CSet& A = sp.left.cod;
  const CSet& B = sp.right.cod;
  const CSet& C = sp.apex();
  const Schema& sch = A.schema;
  const std::size_t nsorts = sch.sorts.size();

  PushoutData out;
  out.apex = CSet::empty(sch);
  std::vector<std::vector<int>> label_a(nsorts), label_b(nsorts);

  // per-sort quotient of A + B (A at 0..|A|-1, B at |A|..)
  std::vector<std::vector<int>> class_of(nsorts);  // disjoint-union index -> class id
  for (std::size_t s = 0; s < nsorts; ++s) {
    int na = A.carrier[s], nb = B.carrier[s];
    detail::UnionFind uf(na + nb);
    for (int c = 0; c < C.carrier[s]; ++c)
      uf.unite(sp.left.at(static_cast<int>(s), c), na + sp.right.at(static_cast<int>(s), c));
    class_of[s].assign(static_cast<std::size_t>(na + nb), -1);
    int next = 0;
    for (int i = 0; i < na + nb; ++i)
      if (uf.find(i) == i) class_of[s][static_cast<std::size_t>(i)] = next++;
    for (int i = 0; i < na + nb; ++i)
      class_of[s][static_cast<std::size_t>(i)] = class_of[s][static_cast<std::size_t>(uf.find(i))];
    out.apex.carrier[s] = next;
    label_a[s].resize(static_cast<std::size_t>(na));
    label_b[s].resize(static_cast<std::size_t>(nb));
    for (int a = 0; a < na; ++a) label_a[s][static_cast<std::size_t>(a)] = class_of[s][static_cast<std::size_t>(a)];
    for (int b = 0; b < nb; ++b) label_b[s][static_cast<std::size_t>(b)] = class_of[s][static_cast<std::size_t>(na + b)];
  }

  for (std::size_t o = 0; o < sch.ops.size(); ++o) {
    const auto& op = sch.ops[o];
    out.apex.fn[o].assign(static_cast<std::size_t>(out.apex.carrier[static_cast<std::size_t>(op.src)]), -1);
    auto set_image = [&](int cls, int img) {
      int& slot = out.apex.fn[o][static_cast<std::size_t>(cls)];
      if (slot >= 0 && slot != img)
        throw std::logic_error("pushout: op not constant on a quotient class");
      slot = img;
    };
    for (int a = 0; a < A.carrier[static_cast<std::size_t>(op.src)]; ++a)
      set_image(label_a[static_cast<std::size_t>(op.src)][static_cast<std::size_t>(a)],
                label_a[static_cast<std::size_t>(op.dst)][static_cast<std::size_t>(A.apply(static_cast<int>(o), a))]);
    for (int b = 0; b < B.carrier[static_cast<std::size_t>(op.src)]; ++b)
      set_image(label_b[static_cast<std::size_t>(op.src)][static_cast<std::size_t>(b)],
                label_b[static_cast<std::size_t>(op.dst)][static_cast<std::size_t>(B.apply(static_cast<int>(o), b))]);
    for (int v : out.apex.fn[o])
      if (v < 0) throw std::logic_error("pushout: op undefined on a quotient class");
  }

  out.inj_left = {A, out.apex, std::move(label_a)};
  out.inj_right = {B, out.apex, std::move(label_b)};
  return out;
}

// ---------------------------------------------------------------------------
// square verification

namespace detail {

inline SquareVerdict verify_componentwise(const Square& sq, SquareKind kind) {
  SquareVerdict v;
  v.kind_checked = kind;
  if (kind == SquareKind::Pushout) {
    PushoutData po = pushout(Span(sq.left, sq.top));
    // induced comparison P -> D: A-part via bottom, B-part via right
    CSetMorphism u;
    u.dom = po.apex;
    u.cod = sq.d();
    u.component.resize(po.apex.carrier.size());
    for (std::size_t s = 0; s < po.apex.carrier.size(); ++s) {
      u.component[s].assign(static_cast<std::size_t>(po.apex.carrier[s]), -1);
      for (int a = 0; a < sq.a().carrier[s]; ++a)
        u.component[s][static_cast<std::size_t>(po.inj_left.at(static_cast<int>(s), a))] =
            sq.bottom.at(static_cast<int>(s), a);
      for (int b = 0; b < sq.b().carrier[s]; ++b)
        u.component[s][static_cast<std::size_t>(po.inj_right.at(static_cast<int>(s), b))] =
            sq.right.at(static_cast<int>(s), b);
    }
    v.holds = is_iso(u);
    if (!v.holds) {
      for (std::size_t s = 0; s < u.component.size() && !v.witness; ++s) {
        std::vector<int> hits(static_cast<std::size_t>(sq.d().carrier[s]), 0);
        for (int img : u.component[s]) ++hits[static_cast<std::size_t>(img)];
        for (std::size_t dd = 0; dd < hits.size(); ++dd) {
          if (hits[dd] == 0)
            v.witness = "comparison misses sort '" + u.dom.schema.sorts[s] + "' element " +
                        std::to_string(dd) + " of D";
          else if (hits[dd] > 1)
            v.witness = "comparison identifies " + std::to_string(hits[dd]) +
                        " pushout classes over sort '" + u.dom.schema.sorts[s] + "' element " +
                        std::to_string(dd);
          if (v.witness) break;
        }
      }
    }
    v.comparison = std::move(u);
  } else {
    PullbackData pb = pullback(Cospan(sq.bottom, sq.right));
    CSetMorphism u;  // comparison C -> apex
    u.dom = sq.c();
    u.cod = pb.apex;
    u.component.resize(pb.apex.carrier.size());
    for (std::size_t s = 0; s < pb.apex.carrier.size(); ++s) {
      u.component[s].resize(static_cast<std::size_t>(sq.c().carrier[s]));
      for (int c = 0; c < sq.c().carrier[s]; ++c) {
        int idx = pb.pair_index(static_cast<int>(s), sq.left.at(static_cast<int>(s), c),
                                sq.top.at(static_cast<int>(s), c));
        if (idx < 0) throw std::logic_error("verify_square: cone pair missing from fiber product");
        u.component[s][static_cast<std::size_t>(c)] = idx;
      }
    }
    v.holds = is_iso(u);
    if (!v.holds) {
      for (std::size_t s = 0; s < u.component.size() && !v.witness; ++s) {
        if (sq.c().carrier[s] != pb.apex.carrier[s]) {
          v.witness = "fiber product has " + std::to_string(pb.apex.carrier[s]) +
                      " elements at sort '" + u.dom.schema.sorts[s] + "', C has " +
                      std::to_string(sq.c().carrier[s]);
        }
      }
      if (!v.witness) v.witness = "comparison into the fiber product is not injective";
    }
    v.comparison = std::move(u);
  }
  return v;
}

// key for "composite pair" lookups: two flattened component vectors
struct PairKey {
  std::vector<int> a, b;
  bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&](int v) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b9 + (h << 6) + (h >> 2);
    };
    for (int v : k.a) mix(v);
    mix(-1);
    for (int v : k.b) mix(v);
    return h;
  }
};

inline PairKey flat_pair(const CSetMorphism& f, const CSetMorphism& g) {
  PairKey k;
  for (const auto& c : f.component) k.a.insert(k.a.end(), c.begin(), c.end());
  for (const auto& c : g.component) k.b.insert(k.b.end(), c.begin(), c.end());
  return k;
}

inline SquareVerdict verify_universal(const Square& sq, SquareKind kind, Budget& budget) {
  SquareVerdict v;
  v.kind_checked = kind;
  v.holds = true;
  const Schema& sch = sq.c().schema;

  for (std::size_t s = 0; s < sch.sorts.size() && v.holds; ++s) {
    if (kind == SquareKind::Pullback) {
      CSet probe = free_on_one(sch, static_cast<int>(s));
      // index mediating cone maps probe -> C by their composites with left/top
      std::unordered_map<PairKey, int, PairKeyHash> mediating;
      if (!enumerate_homs(probe, sq.c(), false, budget, [&](const CSetMorphism& jc) {
            ++mediating[flat_pair(compose(sq.left, jc), compose(sq.top, jc))];
            return true;
          }))
        break;
      std::vector<CSetMorphism> into_a, into_b;
      if (!enumerate_homs(probe, sq.a(), false, budget, [&](const CSetMorphism& f) {
            into_a.push_back(f);
            return true;
          }))
        break;
      if (!enumerate_homs(probe, sq.b(), false, budget, [&](const CSetMorphism& f) {
            into_b.push_back(f);
            return true;
          }))
        break;
      for (const auto& ja : into_a) {
        CSetMorphism ja_d = compose(sq.bottom, ja);
        for (const auto& jb : into_b) {
          if (!budget.tick()) break;
          if (!(ja_d == compose(sq.right, jb))) continue;
          auto it = mediating.find(flat_pair(ja, jb));
          int n = it == mediating.end() ? 0 : it->second;
          if (n != 1) {
            v.holds = false;
            v.witness = std::string("cone at sort '") + sch.sorts[s] + "' has " +
                        std::to_string(n) + " mediating morphisms";
            break;
          }
        }
        if (!v.holds || budget.exceeded) break;
      }
    } else {
      CSet probe = cofree_on_two(sch, static_cast<int>(s));
      std::unordered_map<PairKey, int, PairKeyHash> mediating;
      if (!enumerate_homs(sq.d(), probe, false, budget, [&](const CSetMorphism& h) {
            ++mediating[flat_pair(compose(h, sq.bottom), compose(h, sq.right))];
            return true;
          }))
        break;
      std::vector<CSetMorphism> from_a, from_b;
      if (!enumerate_homs(sq.a(), probe, false, budget, [&](const CSetMorphism& f) {
            from_a.push_back(f);
            return true;
          }))
        break;
      if (!enumerate_homs(sq.b(), probe, false, budget, [&](const CSetMorphism& f) {
            from_b.push_back(f);
            return true;
          }))
        break;
      for (const auto& ja : from_a) {
        CSetMorphism ja_c = compose(ja, sq.left);
        for (const auto& jb : from_b) {
          if (!budget.tick()) break;
          if (!(ja_c == compose(jb, sq.top))) continue;
          auto it = mediating.find(flat_pair(ja, jb));
          int n = it == mediating.end() ? 0 : it->second;
          if (n != 1) {
            v.holds = false;
            v.witness = std::string("cocone at sort '") + sch.sorts[s] + "' has " +
                        std::to_string(n) + " mediating morphisms";
            break;
          }
        }
        if (!v.holds || budget.exceeded) break;
      }
    }
    if (budget.exceeded) break;
  }
  if (budget.exceeded) {
    v.budget_exceeded = true;
    v.holds = false;
    v.witness = "budget exceeded";
  }
  return v;
}

}  // namespace detail

inline SquareVerdict verify_square(const Square& sq, SquareKind kind,
                                   Engine engine = Engine::Componentwise,
                                   Budget* budget = nullptr) {
  if (auto w = sq.commutes())
    throw std::invalid_argument("verify_square: square does not commute: " + *w);
  if (engine == Engine::Componentwise) return detail::verify_componentwise(sq, kind);
  Budget local(default_budget());
  return detail::verify_universal(sq, kind, budget ? *budget : local);
}

// ---------------------------------------------------------------------------
// kernel pairs

struct KernelPairData {
  CSet apex;
  CSetMorphism proj1, proj2;  // apex -> dom(f)
  CSetMorphism diagonal;      // dom(f) -> apex
};

inline KernelPairData kernel_pair(const CSetMorphism& f) {
  PullbackData pb = pullback(Cospan(f, f));
  KernelPairData out{pb.apex, pb.proj_left, pb.proj_right, {}};
  out.diagonal.dom = f.dom;
  out.diagonal.cod = pb.apex;
  out.diagonal.component.resize(f.dom.carrier.size());
  for (std::size_t s = 0; s < f.dom.carrier.size(); ++s) {
    out.diagonal.component[s].resize(static_cast<std::size_t>(f.dom.carrier[s]));
    for (int x = 0; x < f.dom.carrier[s]; ++x) {
      int idx = pb.pair_index(static_cast<int>(s), x, x);
      if (idx < 0) throw std::logic_error("kernel_pair: diagonal pair missing");
      out.diagonal.component[s][static_cast<std::size_t>(x)] = idx;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// subobject union

struct UnionData {
  CSet object;
  CSetMorphism embedding;  // object -> X, mono
  CSetMorphism from_left;  // A -> object
  CSetMorphism from_right; // B -> object
};

// union of two subobjects a: A >-> X, b: B >-> X as the pushout over their
// intersection (the pullback of a and b)
inline UnionData subobject_union(const CSetMorphism& a, const CSetMorphism& b) {
  auto name_noninjective = [](const CSetMorphism& f, const char* which) -> std::string {
    for (std::size_t s = 0; s < f.component.size(); ++s) {
      std::vector<bool> hit(static_cast<std::size_t>(f.cod.carrier[s]), false);
      for (int v : f.component[s]) {
        if (hit[static_cast<std::size_t>(v)])
          return std::string(which) + " is not injective at sort '" + f.dom.schema.sorts[s] + "'";
        hit[static_cast<std::size_t>(v)] = true;
      }
    }
    return {};
  };
  if (!is_mono(a)) throw std::invalid_argument("subobject_union: " + name_noninjective(a, "left subobject"));
  if (!is_mono(b)) throw std::invalid_argument("subobject_union: " + name_noninjective(b, "right subobject"));
  if (!(a.cod == b.cod)) throw std::invalid_argument("subobject_union: subobjects of different objects");

  PullbackData meet = pullback(Cospan(a, b));
  PushoutData join = pushout(Span(meet.proj_left, meet.proj_right));

  CSetMorphism u;  // induced map to X
  u.dom = join.apex;
  u.cod = a.cod;
  u.component.resize(join.apex.carrier.size());
  for (std::size_t s = 0; s < join.apex.carrier.size(); ++s) {
    u.component[s].assign(static_cast<std::size_t>(join.apex.carrier[s]), -1);
    for (int x = 0; x < a.dom.carrier[s]; ++x)
      u.component[s][static_cast<std::size_t>(join.inj_left.at(static_cast<int>(s), x))] =
          a.at(static_cast<int>(s), x);
    for (int y = 0; y < b.dom.carrier[s]; ++y)
      u.component[s][static_cast<std::size_t>(join.inj_right.at(static_cast<int>(s), y))] =
          b.at(static_cast<int>(s), y);
  }

  // effectiveness, verified: the induced map is mono and hits exactly the
  // elementwise union of the two images
  if (!is_mono(u)) throw std::logic_error("subobject_union: induced morphism is not mono");
  for (std::size_t s = 0; s < u.component.size(); ++s) {
    std::vector<bool> in_union(static_cast<std::size_t>(a.cod.carrier[s]), false);
    for (int v : a.component[s]) in_union[static_cast<std::size_t>(v)] = true;
    for (int v : b.component[s]) in_union[static_cast<std::size_t>(v)] = true;
    std::vector<bool> hit(static_cast<std::size_t>(a.cod.carrier[s]), false);
    for (int v : u.component[s]) hit[static_cast<std::size_t>(v)] = true;
    if (hit != in_union) throw std::logic_error("subobject_union: image differs from elementwise union");
  }

  return UnionData{join.apex, std::move(u), join.inj_left, join.inj_right};
}

}  // namespace adhesive
