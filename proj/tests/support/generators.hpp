#pragma once

// Seeded random generators and independent oracles for the test suites.
// Everything here is test-only and deliberately avoids the library's
// canonical constructions where it serves as an oracle for them.

#include <random>

#include "adhesive/dpo.hpp"

namespace adhesive::testing {

using Rng = std::mt19937_64;

inline int rand_below(Rng& rng, int n) { return n <= 1 ? 0 : static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

// ---------------------------------------------------------------------------
// random objects and morphisms

// random C-set with carriers <= max_size; op targets never empty when the
// source carrier is inhabited
inline CSet random_cset(const Schema& schema, int max_size, Rng& rng) {
  CSet x = CSet::empty(schema);
  while (true) {
    bool ok = true;
    for (std::size_t s = 0; s < schema.sorts.size(); ++s)
      x.carrier[s] = rand_below(rng, max_size + 1);
    for (const auto& op : schema.ops)
      if (x.carrier[static_cast<std::size_t>(op.src)] > 0 && x.carrier[static_cast<std::size_t>(op.dst)] == 0)
        ok = false;
    if (ok) break;
  }
  for (std::size_t o = 0; o < schema.ops.size(); ++o) {
    const auto& op = schema.ops[o];
    x.fn[o].resize(static_cast<std::size_t>(x.carrier[static_cast<std::size_t>(op.src)]));
    for (auto& v : x.fn[o]) v = rand_below(rng, x.carrier[static_cast<std::size_t>(op.dst)]);
  }
  return x;
}

inline CSetMorphism random_iso(const CSet& x, Rng& rng) {
  CSetMorphism f;
  f.dom = x;
  f.cod = x;  // carriers identical; op tables are permuted below
  f.component.resize(x.carrier.size());
  for (std::size_t s = 0; s < x.carrier.size(); ++s) {
    f.component[s].resize(static_cast<std::size_t>(x.carrier[s]));
    for (int i = 0; i < x.carrier[s]; ++i) f.component[s][static_cast<std::size_t>(i)] = i;
    for (int i = x.carrier[s] - 1; i > 0; --i)
      std::swap(f.component[s][static_cast<std::size_t>(i)],
                f.component[s][static_cast<std::size_t>(rand_below(rng, i + 1))]);
  }
  CSet y = CSet::empty(x.schema);
  y.carrier = x.carrier;
  for (std::size_t o = 0; o < x.schema.ops.size(); ++o) {
    const auto& op = x.schema.ops[o];
    y.fn[o].resize(x.fn[o].size());
    for (int e = 0; e < x.carrier[static_cast<std::size_t>(op.src)]; ++e)
      y.fn[o][static_cast<std::size_t>(f.component[static_cast<std::size_t>(op.src)][static_cast<std::size_t>(e)])] =
          f.component[static_cast<std::size_t>(op.dst)][static_cast<std::size_t>(x.apply(static_cast<int>(o), e))];
  }
  f.cod = std::move(y);
  return f;
}

// extend x by up to `extra` fresh elements per sort and relabel; returns the
// extension together with the mono embedding x -> extension
inline CSetMorphism random_extension(const CSet& x, int extra, Rng& rng) {
  CSet big = CSet::empty(x.schema);
  for (std::size_t s = 0; s < x.carrier.size(); ++s)
    big.carrier[s] = x.carrier[s] + rand_below(rng, extra + 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& op : x.schema.ops)
      if (big.carrier[static_cast<std::size_t>(op.src)] > 0 &&
          big.carrier[static_cast<std::size_t>(op.dst)] == 0) {
        big.carrier[static_cast<std::size_t>(op.dst)] = 1;
        changed = true;
      }
  }
  for (std::size_t o = 0; o < x.schema.ops.size(); ++o) {
    const auto& op = x.schema.ops[o];
    big.fn[o].resize(static_cast<std::size_t>(big.carrier[static_cast<std::size_t>(op.src)]));
    for (int e = 0; e < big.carrier[static_cast<std::size_t>(op.src)]; ++e)
      big.fn[o][static_cast<std::size_t>(e)] =
          e < x.carrier[static_cast<std::size_t>(op.src)]
              ? x.apply(static_cast<int>(o), e)
              : rand_below(rng, big.carrier[static_cast<std::size_t>(op.dst)]);
  }
  CSetMorphism incl;
  incl.dom = x;
  incl.cod = big;
  incl.component.resize(x.carrier.size());
  for (std::size_t s = 0; s < x.carrier.size(); ++s) {
    incl.component[s].resize(static_cast<std::size_t>(x.carrier[s]));
    for (int i = 0; i < x.carrier[s]; ++i) incl.component[s][static_cast<std::size_t>(i)] = i;
  }
  return compose(random_iso(big, rng), incl);
}

// randomized backtracking search for one morphism dom -> cod
inline std::optional<CSetMorphism> random_hom(const CSet& dom, const CSet& cod, Rng& rng,
                                              bool mono_only = false) {
  const Schema& sch = dom.schema;
  const std::size_t nsorts = sch.sorts.size();
  std::vector<std::pair<int, int>> slots;  // (sort, element)
  for (std::size_t s = 0; s < nsorts; ++s)
    for (int i = 0; i < dom.carrier[s]; ++i) slots.emplace_back(static_cast<int>(s), i);
  std::vector<std::vector<int>> comp(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) comp[s].assign(static_cast<std::size_t>(dom.carrier[s]), -1);
  std::vector<std::vector<bool>> used(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) used[s].assign(static_cast<std::size_t>(cod.carrier[s]), false);

  auto consistent = [&](int s, int x) {
    for (std::size_t o = 0; o < sch.ops.size(); ++o) {
      const auto& op = sch.ops[o];
      if (op.src == s) {
        int img = dom.apply(static_cast<int>(o), x);
        int iv = comp[static_cast<std::size_t>(op.dst)][static_cast<std::size_t>(img)];
        if (iv >= 0 && cod.apply(static_cast<int>(o), comp[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)]) != iv)
          return false;
      }
      if (op.dst == s)
        for (int e = 0; e < dom.carrier[static_cast<std::size_t>(op.src)]; ++e)
          if (dom.apply(static_cast<int>(o), e) == x) {
            int sv = comp[static_cast<std::size_t>(op.src)][static_cast<std::size_t>(e)];
            if (sv >= 0 &&
                cod.apply(static_cast<int>(o), sv) != comp[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)])
              return false;
          }
    }
    return true;
  };

  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == slots.size()) return true;
    auto [s, x] = slots[i];
    std::vector<int> cands;
    for (int v = 0; v < cod.carrier[static_cast<std::size_t>(s)]; ++v) cands.push_back(v);
    for (int j = static_cast<int>(cands.size()) - 1; j > 0; --j)
      std::swap(cands[static_cast<std::size_t>(j)], cands[static_cast<std::size_t>(rand_below(rng, j + 1))]);
    for (int v : cands) {
      if (mono_only && used[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)]) continue;
      comp[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] = v;
      if (consistent(s, x)) {
        if (mono_only) used[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)] = true;
        if (rec(i + 1)) return true;
        if (mono_only) used[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)] = false;
      }
      comp[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  CSetMorphism f;
  f.dom = dom;
  f.cod = cod;
  f.component = std::move(comp);
  return f;
}

// span with a mono left leg: m is an inclusion-then-shuffle into a random
// extension of C, f is a random morphism into a freshly sampled target
inline Span random_span_mono_left(const Schema& schema, int apex_size, int side_size, Rng& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    CSet c = random_cset(schema, apex_size, rng);
    CSetMorphism m = random_extension(c, side_size - apex_size > 0 ? side_size - apex_size : 1, rng);
    CSet b = random_cset(schema, side_size, rng);
    auto f = random_hom(c, b, rng);
    if (f) return Span(m, *f);
  }
  throw std::runtime_error("random_span_mono_left: exhausted attempts");
}

// a random morphism into d_target whose components are surjective, paired
// with its freshly built domain
inline CSetMorphism random_morphism_onto(const CSet& target, int extra, Rng& rng) {
  const Schema& sch = target.schema;
  const std::size_t nsorts = sch.sorts.size();
  CSet t = CSet::empty(sch);
  std::vector<std::vector<int>> comp(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) {
    t.carrier[s] = target.carrier[s] == 0 ? 0 : target.carrier[s] + rand_below(rng, extra + 1);
    comp[s].resize(static_cast<std::size_t>(t.carrier[s]));
    for (int i = 0; i < t.carrier[s]; ++i)
      comp[s][static_cast<std::size_t>(i)] =
          i < target.carrier[s] ? i : rand_below(rng, target.carrier[s]);
  }
  for (std::size_t o = 0; o < sch.ops.size(); ++o) {
    const auto& op = sch.ops[o];
    t.fn[o].resize(static_cast<std::size_t>(t.carrier[static_cast<std::size_t>(op.src)]));
    for (int e = 0; e < t.carrier[static_cast<std::size_t>(op.src)]; ++e) {
      int want = target.apply(static_cast<int>(o), comp[static_cast<std::size_t>(op.src)][static_cast<std::size_t>(e)]);
      std::vector<int> pre;
      for (int v = 0; v < t.carrier[static_cast<std::size_t>(op.dst)]; ++v)
        if (comp[static_cast<std::size_t>(op.dst)][static_cast<std::size_t>(v)] == want) pre.push_back(v);
      t.fn[o][static_cast<std::size_t>(e)] = pre[static_cast<std::size_t>(rand_below(rng, static_cast<int>(pre.size())))];
    }
  }
  CSetMorphism d;
  d.dom = t;
  d.cod = target;
  d.component = std::move(comp);
  CSetMorphism shuffle = random_iso(t, rng);
  // precompose with the inverse shuffle so the domain labels are scrambled
  CSetMorphism inv;
  inv.dom = shuffle.cod;
  inv.cod = t;
  inv.component.resize(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) {
    inv.component[s].resize(static_cast<std::size_t>(t.carrier[s]));
    for (int i = 0; i < t.carrier[s]; ++i)
      inv.component[s][static_cast<std::size_t>(shuffle.at(static_cast<int>(s), i))] = i;
  }
  return compose(d, inv);
}

// ---------------------------------------------------------------------------
// oracles

// exhaustive morphism enumeration by direct product-of-assignments filtering;
// deliberately independent of the backtracking matcher
inline std::vector<CSetMorphism> brute_force_homs(const CSet& dom, const CSet& cod, bool mono_only) {
  const Schema& sch = dom.schema;
  const std::size_t nsorts = sch.sorts.size();
  std::vector<std::pair<int, int>> slots;
  for (std::size_t s = 0; s < nsorts; ++s)
    for (int i = 0; i < dom.carrier[s]; ++i) slots.emplace_back(static_cast<int>(s), i);

  std::vector<CSetMorphism> out;
  std::vector<std::vector<int>> comp(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) comp[s].assign(static_cast<std::size_t>(dom.carrier[s]), 0);

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == slots.size()) {
      CSetMorphism f;
      f.dom = dom;
      f.cod = cod;
      f.component = comp;
      auto rep = validate(f);
      bool natural = true;
      for (const auto& v : rep.violations)
        if (v.law == "naturality") natural = false;
      if (natural && (!mono_only || is_mono(f))) out.push_back(std::move(f));
      return;
    }
    auto [s, x] = slots[i];
    for (int v = 0; v < cod.carrier[static_cast<std::size_t>(s)]; ++v) {
      comp[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)] = v;
      rec(i + 1);
    }
  };
  bool inhabited = true;
  for (std::size_t s = 0; s < nsorts; ++s)
    if (dom.carrier[s] > 0 && cod.carrier[s] == 0) inhabited = false;
  if (inhabited) rec(0);
  else if (slots.empty()) rec(0);
  return out;
}

inline bool cset_isomorphic(const CSet& x, const CSet& y) {
  if (x.carrier != y.carrier) return false;
  Budget budget(10'000'000);
  bool found = false;
  enumerate_homs(x, y, true, budget, [&](const CSetMorphism& f) {
    if (is_iso(f)) {
      found = true;
      return false;
    }
    return true;
  });
  return found;
}

// elementwise square-is-pushout oracle for mono cospans: given the square
// l: K->L, k: K->D, m: L->G, d: D->G (all of m, d mono), the square is a
// pushout iff images are jointly surjective and meet exactly in the K-part
inline bool mono_square_is_pushout_oracle(const CSetMorphism& l, const CSetMorphism& k,
                                          const CSetMorphism& m, const CSetMorphism& d) {
  const CSet& g = m.cod;
  for (std::size_t s = 0; s < g.carrier.size(); ++s) {
    std::vector<int> tag(static_cast<std::size_t>(g.carrier[s]), 0);  // 1=L, 2=D, 3=both
    for (int y = 0; y < m.dom.carrier[s]; ++y) tag[static_cast<std::size_t>(m.at(static_cast<int>(s), y))] |= 1;
    for (int z = 0; z < d.dom.carrier[s]; ++z) tag[static_cast<std::size_t>(d.at(static_cast<int>(s), z))] |= 2;
    for (int w = 0; w < static_cast<int>(tag.size()); ++w)
      if (tag[static_cast<std::size_t>(w)] == 0) return false;  // not jointly surjective
    std::vector<bool> in_k(static_cast<std::size_t>(g.carrier[s]), false);
    for (int x = 0; x < l.dom.carrier[s]; ++x)
      in_k[static_cast<std::size_t>(m.at(static_cast<int>(s), l.at(static_cast<int>(s), x)))] = true;
    for (int w = 0; w < static_cast<int>(tag.size()); ++w)
      if ((tag[static_cast<std::size_t>(w)] == 3) != in_k[static_cast<std::size_t>(w)]) return false;
  }
  // the K-square itself must commute into G
  return compose(m, l) == compose(d, k);
}

// all sub-C-sets of g (subsets of the carriers closed under every op), as
// mono inclusions
inline std::vector<CSetMorphism> all_subobjects(const CSet& g) {
  const Schema& sch = g.schema;
  const std::size_t nsorts = sch.sorts.size();
  std::vector<CSetMorphism> out;
  std::vector<std::vector<bool>> keep(nsorts);
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (s == nsorts) {
      for (std::size_t o = 0; o < sch.ops.size(); ++o) {
        const auto& op = sch.ops[o];
        for (int x = 0; x < g.carrier[static_cast<std::size_t>(op.src)]; ++x)
          if (keep[static_cast<std::size_t>(op.src)][static_cast<std::size_t>(x)] &&
              !keep[static_cast<std::size_t>(op.dst)][static_cast<std::size_t>(g.apply(static_cast<int>(o), x))])
            return;  // not closed
      }
      CSet sub = CSet::empty(sch);
      CSetMorphism incl;
      incl.cod = g;
      incl.component.resize(nsorts);
      std::vector<std::vector<int>> new_id(nsorts);
      for (std::size_t t = 0; t < nsorts; ++t) {
        new_id[t].assign(static_cast<std::size_t>(g.carrier[t]), -1);
        for (int x = 0; x < g.carrier[t]; ++x)
          if (keep[t][static_cast<std::size_t>(x)]) {
            new_id[t][static_cast<std::size_t>(x)] = sub.carrier[t]++;
            incl.component[t].push_back(x);
          }
      }
      for (std::size_t o = 0; o < sch.ops.size(); ++o) {
        const auto& op = sch.ops[o];
        for (int x = 0; x < g.carrier[static_cast<std::size_t>(op.src)]; ++x)
          if (keep[static_cast<std::size_t>(op.src)][static_cast<std::size_t>(x)])
            sub.fn[o].push_back(
                new_id[static_cast<std::size_t>(op.dst)][static_cast<std::size_t>(g.apply(static_cast<int>(o), x))]);
      }
      incl.dom = std::move(sub);
      out.push_back(std::move(incl));
      return;
    }
    keep[s].assign(static_cast<std::size_t>(g.carrier[s]), false);
    std::function<void(int)> bits = [&](int i) {
      if (i == g.carrier[s]) {
        rec(s + 1);
        return;
      }
      keep[s][static_cast<std::size_t>(i)] = false;
      bits(i + 1);
      keep[s][static_cast<std::size_t>(i)] = true;
      bits(i + 1);
      keep[s][static_cast<std::size_t>(i)] = false;
    };
    bits(0);
  };
  rec(0);
  return out;
}

}  // namespace adhesive::testing
