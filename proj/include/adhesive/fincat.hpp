#pragma once

// Limit/colimit machinery inside an explicit finite category: monomorphism
// detection by left cancellation, pushout/pullback search and verification by
// direct universal-property enumeration over the hom-sets, Van Kampen cubes,
// and builders for the standard small examples (chains, lattices, finite
// sets). Poset categories (all hom-sets of size <= 1) get meet/join lookup
// shortcuts; the generic search is kept and cross-checked in tests.

#include "adhesive/limits.hpp"

namespace adhesive {

// ---------------------------------------------------------------------------
// elementary predicates

inline bool fc_is_mono(const FinCategory& c, int m) {
  // left cancellation: m.f = m.g implies f = g
  const int n = static_cast<int>(c.morphisms.size());
  for (int f = 0; f < n; ++f) {
    if (c.dst(f) != c.src(m)) continue;
    for (int g = f + 1; g < n; ++g) {
      if (c.dst(g) != c.src(m) || c.src(f) != c.src(g)) continue;
      if (c.compose(m, f) == c.compose(m, g)) return false;
    }
  }
  return true;
}

inline std::optional<int> fc_inverse(const FinCategory& c, int m) {
  for (int g : c.hom(c.dst(m), c.src(m)))
    if (c.compose(g, m) == c.identity[static_cast<std::size_t>(c.src(m))] &&
        c.compose(m, g) == c.identity[static_cast<std::size_t>(c.dst(m))])
      return g;
  return std::nullopt;
}

inline bool fc_is_iso(const FinCategory& c, int m) { return fc_inverse(c, m).has_value(); }

// ---------------------------------------------------------------------------
// poset detection and order tables

struct PosetView {
  bool is_poset = false;
  std::vector<std::vector<int>> arrow;  // arrow[a][b] = unique morphism a->b, or -1
  std::vector<std::vector<int>> meet, join;  // object indices, -1 when absent

  bool leq(int a, int b) const {
    return arrow[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] >= 0;
  }
};

inline PosetView poset_view(const FinCategory& c) {
  PosetView v;
  const int n = static_cast<int>(c.objects.size());
  v.arrow.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  v.is_poset = true;
  for (std::size_t m = 0; m < c.morphisms.size(); ++m) {
    int& slot = v.arrow[static_cast<std::size_t>(c.morphisms[m].src)][static_cast<std::size_t>(c.morphisms[m].dst)];
    if (slot >= 0) {
      v.is_poset = false;
      return v;
    }
    slot = static_cast<int>(m);
  }
  // antisymmetry: a<=b<=a with a!=b would make them isomorphic, not equal
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (v.leq(a, b) && v.leq(b, a)) {
        v.is_poset = false;
        return v;
      }
  auto bound_table = [&](bool upper) {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int best = -1;
        for (int x = 0; x < n; ++x) {
          bool bounds = upper ? (v.leq(a, x) && v.leq(b, x)) : (v.leq(x, a) && v.leq(x, b));
          if (!bounds) continue;
          if (best < 0)
            best = x;
          else if (upper ? v.leq(x, best) : v.leq(best, x))
            best = x;
        }
        // best is only a candidate: confirm it really is least/greatest
        if (best >= 0) {
          for (int x = 0; x < n; ++x) {
            bool bounds = upper ? (v.leq(a, x) && v.leq(b, x)) : (v.leq(x, a) && v.leq(x, b));
            if (bounds && !(upper ? v.leq(best, x) : v.leq(x, best))) {
              best = -1;
              break;
            }
          }
        }
        t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = best;
      }
    return t;
  };
  v.join = bound_table(true);
  v.meet = bound_table(false);
  return v;
}

// ---------------------------------------------------------------------------
// squares and universal-property checks

struct FcSquare {
  int top = -1, left = -1, bottom = -1, right = -1;  // morphism indices

  bool operator==(const FcSquare&) const = default;
};

inline std::optional<std::string> fc_square_commutes(const FinCategory& c, const FcSquare& s) {
  auto nm = [&](int m) { return c.morphisms[static_cast<std::size_t>(m)].name; };
  if (c.src(s.top) != c.src(s.left)) return "top and left start at different objects";
  if (c.src(s.bottom) != c.dst(s.left)) return "bottom does not start where left ends";
  if (c.src(s.right) != c.dst(s.top)) return "right does not start where top ends";
  if (c.dst(s.bottom) != c.dst(s.right)) return "bottom and right end at different objects";
  if (c.compose(s.bottom, s.left) != c.compose(s.right, s.top))
    return nm(s.bottom) + "." + nm(s.left) + " != " + nm(s.right) + "." + nm(s.top);
  return std::nullopt;
}

struct FcVerdict {
  bool holds = false;
  bool budget_exceeded = false;
  std::string witness;
};

// universal-property check, quantifying over every object of the category
inline FcVerdict fc_verify_square(const FinCategory& c, const FcSquare& s, SquareKind kind,
                                  Budget& budget) {
  if (auto w = fc_square_commutes(c, s))
    throw std::invalid_argument("fc_verify_square: square does not commute: " + *w);
  FcVerdict v;
  v.holds = true;
  const int nobj = static_cast<int>(c.objects.size());
  const int a_obj = c.dst(s.left), b_obj = c.dst(s.top);
  const int c_obj = c.src(s.left), d_obj = c.dst(s.bottom);

  for (int t = 0; t < nobj && v.holds; ++t) {
    if (kind == SquareKind::Pushout) {
      for (int ja : c.hom(a_obj, t)) {
        for (int jb : c.hom(b_obj, t)) {
          if (!budget.tick()) {
            v.budget_exceeded = true;
            v.holds = false;
            v.witness = "budget exceeded";
            return v;
          }
          if (c.compose(ja, s.left) != c.compose(jb, s.top)) continue;
          int count = 0;
          for (int h : c.hom(d_obj, t))
            if (c.compose(h, s.bottom) == ja && c.compose(h, s.right) == jb) ++count;
          if (count != 1) {
            v.holds = false;
            v.witness = "cocone at object '" + c.objects[static_cast<std::size_t>(t)] + "' has " +
                        std::to_string(count) + " mediating morphisms";
            break;
          }
        }
        if (!v.holds) break;
      }
    } else {
      for (int pa : c.hom(t, a_obj)) {
        for (int pb : c.hom(t, b_obj)) {
          if (!budget.tick()) {
            v.budget_exceeded = true;
            v.holds = false;
            v.witness = "budget exceeded";
            return v;
          }
          if (c.compose(s.bottom, pa) != c.compose(s.right, pb)) continue;
          int count = 0;
          for (int h : c.hom(t, c_obj))
            if (c.compose(s.left, h) == pa && c.compose(s.top, h) == pb) ++count;
          if (count != 1) {
            v.holds = false;
            v.witness = "cone at object '" + c.objects[static_cast<std::size_t>(t)] + "' has " +
                        std::to_string(count) + " mediating morphisms";
            break;
          }
        }
        if (!v.holds) break;
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// pushout / pullback search

struct FcCospanData {
  int apex = -1;           // object index
  int left = -1, right = -1;  // morphisms A->apex, B->apex
};

struct FcSpanData {
  int apex = -1;
  int left = -1, right = -1;  // morphisms apex->A, apex->B
};

// search for a pushout of the span (m: C->A, f: C->B); deterministic: first
// universal cocone in (object, morphism) order. Poset shortcut via joins.
inline std::optional<FcCospanData> fc_pushout(const FinCategory& c, int m, int f, Budget& budget,
                                              const PosetView* pv = nullptr) {
  if (c.src(m) != c.src(f)) throw std::invalid_argument("fc_pushout: legs share no apex");
  const int a_obj = c.dst(m), b_obj = c.dst(f);
  if (pv && pv->is_poset) {
    int j = pv->join[static_cast<std::size_t>(a_obj)][static_cast<std::size_t>(b_obj)];
    if (j < 0) return std::nullopt;
    return FcCospanData{j, pv->arrow[static_cast<std::size_t>(a_obj)][static_cast<std::size_t>(j)],
                        pv->arrow[static_cast<std::size_t>(b_obj)][static_cast<std::size_t>(j)]};
  }
  const int nobj = static_cast<int>(c.objects.size());
  for (int d = 0; d < nobj; ++d)
    for (int g : c.hom(a_obj, d))
      for (int n : c.hom(b_obj, d)) {
        if (!budget.tick()) throw BudgetExceeded{};
        if (c.compose(g, m) != c.compose(n, f)) continue;
        FcSquare sq{f, m, g, n};
        FcVerdict v = fc_verify_square(c, sq, SquareKind::Pushout, budget);
        if (v.budget_exceeded) throw BudgetExceeded{};
        if (v.holds) return FcCospanData{d, g, n};
      }
  return std::nullopt;
}

// search for a pullback of the cospan (u: A->D, v: B->D)
inline std::optional<FcSpanData> fc_pullback(const FinCategory& c, int u, int v, Budget& budget,
                                             const PosetView* pv = nullptr) {
  if (c.dst(u) != c.dst(v)) throw std::invalid_argument("fc_pullback: legs share no target");
  const int a_obj = c.src(u), b_obj = c.src(v);
  if (pv && pv->is_poset) {
    int w = pv->meet[static_cast<std::size_t>(a_obj)][static_cast<std::size_t>(b_obj)];
    if (w < 0) return std::nullopt;
    return FcSpanData{w, pv->arrow[static_cast<std::size_t>(w)][static_cast<std::size_t>(a_obj)],
                      pv->arrow[static_cast<std::size_t>(w)][static_cast<std::size_t>(b_obj)]};
  }
  const int nobj = static_cast<int>(c.objects.size());
  for (int p = 0; p < nobj; ++p)
    for (int pa : c.hom(p, a_obj))
      for (int pb : c.hom(p, b_obj)) {
        if (!budget.tick()) throw BudgetExceeded{};
        if (c.compose(u, pa) != c.compose(v, pb)) continue;
        FcSquare sq{pb, pa, u, v};
        FcVerdict verdict = fc_verify_square(c, sq, SquareKind::Pullback, budget);
        if (verdict.budget_exceeded) throw BudgetExceeded{};
        if (verdict.holds) return FcSpanData{p, pa, pb};
      }
  return std::nullopt;
}

// unique morphism x with post.x = a and (optionally) post2.x = b; nullopt if
// the count differs from one
inline std::optional<int> fc_unique_such(const FinCategory& c, int from_obj, int to_obj,
                                         const std::function<bool(int)>& pred) {
  int found = -1, count = 0;
  for (int h : c.hom(from_obj, to_obj))
    if (pred(h)) {
      found = h;
      ++count;
    }
  if (count != 1) return std::nullopt;
  return found;
}

// ---------------------------------------------------------------------------
// cubes

// Two stacked squares joined by four vertical morphisms (primed -> unprimed).
struct FcCube {
  FcSquare top, bottom;
  int vc = -1, va = -1, vb = -1, vd = -1;

  FcSquare back_face() const { return {top.top, vc, bottom.top, vb}; }
  FcSquare left_face() const { return {top.left, vc, bottom.left, va}; }
  FcSquare front_face() const { return {top.bottom, va, bottom.bottom, vd}; }
  FcSquare right_face() const { return {top.right, vb, bottom.right, vd}; }
};

inline std::optional<std::string> fc_cube_commutes(const FinCategory& c, const FcCube& cube) {
  struct Named {
    const char* name;
    FcSquare sq;
  };
  const Named faces[] = {{"top", cube.top},           {"bottom", cube.bottom},
                         {"back", cube.back_face()},  {"left", cube.left_face()},
                         {"front", cube.front_face()}, {"right", cube.right_face()}};
  for (const auto& f : faces)
    if (auto w = fc_square_commutes(c, f.sq)) return std::string(f.name) + " face: " + *w;
  return std::nullopt;
}

struct VKVerdict {
  bool preconditions_met = false;
  bool top_is_pushout = false;
  bool front_right_pullbacks = false;
  bool vk_holds = false;
  bool budget_exceeded = false;
  std::optional<std::string> failing_face;
};

inline VKVerdict fc_vk_cube_check(const FinCategory& c, const FcCube& cube, Budget& budget) {
  if (auto w = fc_cube_commutes(c, cube))
    throw std::invalid_argument("vk_cube_check: cube does not commute: " + *w);
  VKVerdict v;
  auto check = [&](const FcSquare& sq, SquareKind k) {
    FcVerdict r = fc_verify_square(c, sq, k, budget);
    if (r.budget_exceeded) v.budget_exceeded = true;
    return r.holds;
  };
  bool bottom_po = check(cube.bottom, SquareKind::Pushout);
  bool bottom_mono = fc_is_mono(c, cube.bottom.left) || fc_is_mono(c, cube.bottom.top);
  bool back_pb = check(cube.back_face(), SquareKind::Pullback);
  bool left_pb = check(cube.left_face(), SquareKind::Pullback);
  v.preconditions_met = bottom_po && bottom_mono && back_pb && left_pb;

  v.top_is_pushout = check(cube.top, SquareKind::Pushout);
  bool front_pb = check(cube.front_face(), SquareKind::Pullback);
  bool right_pb = check(cube.right_face(), SquareKind::Pullback);
  v.front_right_pullbacks = front_pb && right_pb;
  v.vk_holds = v.top_is_pushout == v.front_right_pullbacks;
  if (!v.vk_holds) {
    if (v.top_is_pushout)
      v.failing_face = !front_pb ? "front face is not a pullback" : "right face is not a pullback";
    else
      v.failing_face = "top face is not a pushout";
  }
  return v;
}

// ---------------------------------------------------------------------------
// square isomorphism (for deduplicating generated squares)

inline bool fc_squares_isomorphic(const FinCategory& c, const FcSquare& s1, const FcSquare& s2) {
  auto corner_isos = [&](int x, int y) {
    std::vector<std::pair<int, int>> out;
    for (int m : c.hom(x, y))
      if (auto inv = fc_inverse(c, m)) out.emplace_back(m, *inv);
    return out;
  };
  const int c1 = c.src(s1.left), a1 = c.dst(s1.left), b1 = c.dst(s1.top), d1 = c.dst(s1.bottom);
  const int c2 = c.src(s2.left), a2 = c.dst(s2.left), b2 = c.dst(s2.top), d2 = c.dst(s2.bottom);
  for (auto [pc, _pc] : corner_isos(c1, c2))
    for (auto [pa, _pa] : corner_isos(a1, a2)) {
      if (c.compose(s2.left, pc) != c.compose(pa, s1.left)) continue;
      for (auto [pb, _pb] : corner_isos(b1, b2)) {
        if (c.compose(s2.top, pc) != c.compose(pb, s1.top)) continue;
        for (auto [pd, _pd] : corner_isos(d1, d2)) {
          if (c.compose(s2.bottom, pa) == c.compose(pd, s1.bottom) &&
              c.compose(s2.right, pb) == c.compose(pd, s1.right))
            return true;
        }
      }
    }
  return false;
}

// ---------------------------------------------------------------------------
// builders

// category of a finite partial order; morphism names are "src<=dst"
inline FinCategory poset_category(const std::vector<std::string>& names,
                                  const std::function<bool(int, int)>& leq) {
  const int n = static_cast<int>(names.size());
  FinCategory c;
  c.objects = names;
  std::vector<std::vector<int>> arrow(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (leq(a, b)) {
        arrow[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            static_cast<int>(c.morphisms.size());
        c.morphisms.push_back({names[static_cast<std::size_t>(a)] + "<=" + names[static_cast<std::size_t>(b)], a, b});
      }
  c.identity.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    int id = arrow[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
    if (id < 0) throw std::invalid_argument("poset_category: order is not reflexive");
    c.identity[static_cast<std::size_t>(a)] = id;
  }
  const int nm = static_cast<int>(c.morphisms.size());
  c.comp.assign(static_cast<std::size_t>(nm), std::vector<int>(static_cast<std::size_t>(nm), -1));
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (c.dst(f) == c.src(g)) {
        int gf = arrow[static_cast<std::size_t>(c.src(f))][static_cast<std::size_t>(c.dst(g))];
        if (gf < 0) throw std::invalid_argument("poset_category: order is not transitive");
        c.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = gf;
      }
  return c;
}

inline FinCategory terminal_category() {
  return poset_category({"*"}, [](int, int) { return true; });
}

inline FinCategory chain_category(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return poset_category(names, [](int a, int b) { return a <= b; });
}

// subsets of {1,2} ordered by inclusion
inline FinCategory boolean_lattice_2() {
  std::vector<std::string> names = {"0", "x", "y", "1"};  // bitmask order: {}, {1}, {2}, {1,2}
  return poset_category(names, [](int a, int b) { return (a & b) == a; });
}

inline FinCategory divisor_lattice(int n) {
  std::vector<int> divs;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  std::vector<std::string> names;
  for (int d : divs) names.push_back("d" + std::to_string(d));
  return poset_category(names, [divs](int a, int b) {
    return divs[static_cast<std::size_t>(b)] % divs[static_cast<std::size_t>(a)] == 0;
  });
}

// the five-element non-distributive lattices
inline FinCategory m3_lattice() {
  // 0 < a,b,c < 1, atoms pairwise incomparable
  auto leq = [](int x, int y) { return x == y || x == 0 || y == 4; };
  return poset_category({"bot", "a", "b", "c", "top"}, leq);
}

inline FinCategory n5_lattice() {
  // 0 < a < c < 1 and 0 < b < 1, b incomparable to a and c
  auto leq = [](int x, int y) {
    if (x == y || x == 0 || y == 4) return true;
    if (x == 1 && y == 3) return true;  // a <= c
    return false;
  };
  return poset_category({"bot", "a", "b", "c", "top"}, leq);
}

// full subcategory of finite sets on objects 0..max_size; morphism "f{n}_{k}"
// is the k-th function (base-n digits) into an n-element set
inline FinCategory finset_category(int max_size) {
  FinCategory c;
  for (int n = 0; n <= max_size; ++n) c.objects.push_back("s" + std::to_string(n));
  struct Fun {
    int dom, cod;
    std::vector<int> table;
  };
  std::vector<Fun> funs;
  auto add_all = [&](int dom, int cod) {
    // all functions dom -> cod, lexicographic by table
    if (dom == 0) {
      funs.push_back({dom, cod, {}});
      return;
    }
    if (cod == 0) return;
    std::vector<int> t(static_cast<std::size_t>(dom), 0);
    while (true) {
      funs.push_back({dom, cod, t});
      int i = dom - 1;
      while (i >= 0 && t[static_cast<std::size_t>(i)] == cod - 1) t[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
      ++t[static_cast<std::size_t>(i)];
    }
  };
  for (int dom = 0; dom <= max_size; ++dom)
    for (int cod = 0; cod <= max_size; ++cod) add_all(dom, cod);
  std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> lookup;
  for (std::size_t i = 0; i < funs.size(); ++i) {
    std::string nm = "f" + std::to_string(funs[i].dom) + "_" + std::to_string(funs[i].cod);
    for (int v : funs[i].table) nm += "_" + std::to_string(v);
    c.morphisms.push_back({nm, funs[i].dom, funs[i].cod});
    lookup[{{funs[i].dom, funs[i].cod}, funs[i].table}] = static_cast<int>(i);
  }
  c.identity.resize(c.objects.size());
  for (int n = 0; n <= max_size; ++n) {
    std::vector<int> idt(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idt[static_cast<std::size_t>(i)] = i;
    c.identity[static_cast<std::size_t>(n)] = lookup.at({{n, n}, idt});
  }
  const int nm = static_cast<int>(funs.size());
  c.comp.assign(static_cast<std::size_t>(nm), std::vector<int>(static_cast<std::size_t>(nm), -1));
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f) {
      if (funs[static_cast<std::size_t>(f)].cod != funs[static_cast<std::size_t>(g)].dom) continue;
      std::vector<int> t(funs[static_cast<std::size_t>(f)].table.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = funs[static_cast<std::size_t>(g)].table[static_cast<std::size_t>(funs[static_cast<std::size_t>(f)].table[i])];
      c.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] =
          lookup.at({{funs[static_cast<std::size_t>(f)].dom, funs[static_cast<std::size_t>(g)].cod}, t});
    }
  return c;
}

}  // namespace adhesive
