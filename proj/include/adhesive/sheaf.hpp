#pragma once

// Desk-scale execution of the topos-embedding construction on an explicit
// finite category: covering pairs (g, n) generated by pushouts along monos,
// the five-vertex sheaf condition, representables, exhaustive presheaf
// enumeration, and the full embedding report (sheaves send pushouts along
// monos to limits; the kernel-pair square of sets is a pullback).

#include <memory>

#include "adhesive/adhesion.hpp"

namespace adhesive {

// ---------------------------------------------------------------------------
// presheaves on a finite category

// contravariant functor to finite sets: action[u] maps F(dst u) -> F(src u)
struct Presheaf {
  std::shared_ptr<const FinCategory> base;
  std::vector<int> carrier;                  // per object
  std::vector<std::vector<int>> action;      // per morphism

  int size(int obj) const { return carrier[static_cast<std::size_t>(obj)]; }

  int act(int mor, int x) const {
    return action[static_cast<std::size_t>(mor)][static_cast<std::size_t>(x)];
  }

  bool same_data(const Presheaf& other) const {
    return carrier == other.carrier && action == other.action;
  }
};

inline ValidationReport validate(const Presheaf& f) {
  ValidationReport r;
  if (!f.base) {
    r.fail("base-present", "presheaf has no base category");
    return r;
  }
  const FinCategory& c = *f.base;
  ValidationReport rb = validate(c);
  for (auto& v : rb.violations) r.fail("base/" + v.law, v.witness);
  if (f.carrier.size() != c.objects.size()) {
    r.fail("carrier-per-object", "expected " + std::to_string(c.objects.size()) + " carriers");
    return r;
  }
  if (f.action.size() != c.morphisms.size()) {
    r.fail("action-per-morphism", "expected " + std::to_string(c.morphisms.size()) + " actions");
    return r;
  }
  if (!r.ok()) return r;

  for (std::size_t m = 0; m < c.morphisms.size(); ++m) {
    const auto& mor = c.morphisms[m];
    r.check("action-shape");
    if (static_cast<int>(f.action[m].size()) != f.carrier[static_cast<std::size_t>(mor.dst)]) {
      r.fail("action-shape", "action of '" + mor.name + "' has wrong length");
      continue;
    }
    for (int v : f.action[m]) {
      r.check("action-in-carrier");
      if (v < 0 || v >= f.carrier[static_cast<std::size_t>(mor.src)])
        r.fail("action-in-carrier", "action of '" + mor.name + "' escapes the carrier");
    }
  }
  if (!r.ok()) return r;

  for (std::size_t a = 0; a < c.objects.size(); ++a) {
    r.check("identity-action");
    int id = c.identity[a];
    for (int x = 0; x < f.carrier[a]; ++x)
      if (f.act(id, x) != x) {
        r.fail("identity-action", "F(id " + c.objects[a] + ") moves " + std::to_string(x));
        break;
      }
  }
  for (std::size_t v = 0; v < c.morphisms.size(); ++v)
    for (std::size_t u = 0; u < c.morphisms.size(); ++u) {
      int w = c.compose(static_cast<int>(v), static_cast<int>(u));
      if (w < 0) continue;
      r.check("functoriality");
      for (int z = 0; z < f.carrier[static_cast<std::size_t>(c.dst(static_cast<int>(v)))]; ++z)
        if (f.act(w, z) != f.act(static_cast<int>(u), f.act(static_cast<int>(v), z))) {
          r.fail("functoriality", "F(" + c.morphisms[v].name + "." + c.morphisms[u].name +
                                      ") != F(" + c.morphisms[u].name + ")F(" + c.morphisms[v].name +
                                      ") at element " + std::to_string(z));
          break;
        }
    }
  return r;
}

// hom(-, A) with precomposition restrictions; carrier indices follow
// ascending morphism order
inline Presheaf representable(std::shared_ptr<const FinCategory> base, int obj) {
  const FinCategory& c = *base;
  if (obj < 0 || obj >= static_cast<int>(c.objects.size()))
    throw std::invalid_argument("representable: unknown object");
  Presheaf f;
  f.base = base;
  std::vector<std::vector<int>> homs(c.objects.size());
  std::vector<std::map<int, int>> index(c.objects.size());
  for (std::size_t b = 0; b < c.objects.size(); ++b) {
    homs[b] = c.hom(static_cast<int>(b), obj);
    for (std::size_t i = 0; i < homs[b].size(); ++i) index[b][homs[b][i]] = static_cast<int>(i);
    f.carrier.push_back(static_cast<int>(homs[b].size()));
  }
  f.action.resize(c.morphisms.size());
  for (std::size_t u = 0; u < c.morphisms.size(); ++u) {
    const auto& mor = c.morphisms[u];
    for (int h : homs[static_cast<std::size_t>(mor.dst)])
      f.action[u].push_back(index[static_cast<std::size_t>(mor.src)].at(c.compose(h, static_cast<int>(u))));
  }
  return f;
}

// ---------------------------------------------------------------------------
// covers

// A generating covering pair (g, n) with the kernel-pair data the sheaf
// condition and the jointly-monic check consume.
struct Cover {
  FcSquare square;  // top f: C->B, left m: C->A, bottom g: A->D, right n: B->D
  int a2_obj = -1, g1 = -1, g2 = -1, delta = -1;  // kernel pair of g with diagonal
  int c2_obj = -1, f1 = -1, f2 = -1, gamma = -1;  // kernel pair of f with diagonal
  int m2 = -1;                                    // induced C2 -> A2

  int c_obj(const FinCategory& c) const { return c.src(square.left); }
  int a_obj(const FinCategory& c) const { return c.dst(square.left); }
  int b_obj(const FinCategory& c) const { return c.dst(square.top); }
  int d_obj(const FinCategory& c) const { return c.dst(square.bottom); }
};

struct CoverList {
  std::vector<Cover> covers;
  bool truncated = false;
  std::optional<std::string> warning;  // recommended-precondition warning
};

struct CoverDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// one cover per isomorphism class of pushout-along-mono square; kernel-pair
// data is found by universal search and verified
inline CoverList generate_covers(const FinCategory& c, Budget& budget,
                                 std::optional<AuditReport::Verdict> audit = std::nullopt) {
  CoverList out;
  if (audit && *audit != AuditReport::Verdict::AdhesiveWithinBounds)
    out.warning = std::string("base category audit verdict is '") + to_string(*audit) +
                  "'; the embedding construction assumes an adhesive base";
  PosetView pv = poset_view(c);
  const PosetView* pvp = pv.is_poset ? &pv : nullptr;
  const int nmor = static_cast<int>(c.morphisms.size());
  auto nm = [&](int m) { return c.morphisms[static_cast<std::size_t>(m)].name; };

  std::vector<FcSquare> squares;
  try {
    for (int m = 0; m < nmor; ++m) {
      if (!fc_is_mono(c, m)) continue;
      for (int f = 0; f < nmor; ++f) {
        if (c.src(f) != c.src(m)) continue;
        auto po = fc_pushout(c, m, f, budget, pvp);
        if (!po) throw CoverDataError("no pushout for the span (" + nm(m) + "," + nm(f) + ")");
        FcSquare sq{f, m, po->left, po->right};
        bool dup = false;
        for (const auto& e : squares)
          if (fc_squares_isomorphic(c, e, sq)) {
            dup = true;
            break;
          }
        if (!dup) squares.push_back(sq);
      }
    }

    for (const FcSquare& sq : squares) {
      Cover cov;
      cov.square = sq;
      if (!fc_is_mono(c, sq.right))
        throw CoverDataError("pushout leg '" + nm(sq.right) + "' is not mono for the span (" +
                             nm(sq.left) + "," + nm(sq.top) + ")");
      auto kp_of = [&](int h, int& obj, int& p1, int& p2, int& diag, const char* what) {
        auto pb = fc_pullback(c, h, h, budget, pvp);
        if (!pb)
          throw CoverDataError(std::string("no kernel pair of ") + what + " '" + nm(h) +
                               "' for the span (" + nm(sq.left) + "," + nm(sq.top) + ")");
        obj = pb->apex;
        p1 = pb->left;
        p2 = pb->right;
        int dom = c.src(h);
        auto d = fc_unique_such(c, dom, obj, [&](int x) {
          return c.compose(p1, x) == c.identity[static_cast<std::size_t>(dom)] &&
                 c.compose(p2, x) == c.identity[static_cast<std::size_t>(dom)];
        });
        if (!d) throw CoverDataError(std::string("no diagonal into the kernel pair of '") + nm(h) + "'");
        diag = *d;
      };
      kp_of(sq.bottom, cov.a2_obj, cov.g1, cov.g2, cov.delta, "g");
      kp_of(sq.top, cov.c2_obj, cov.f1, cov.f2, cov.gamma, "f");
      auto m2 = fc_unique_such(c, cov.c2_obj, cov.a2_obj, [&](int x) {
        return c.compose(cov.g1, x) == c.compose(sq.left, cov.f1) &&
               c.compose(cov.g2, x) == c.compose(sq.left, cov.f2);
      });
      if (!m2)
        throw CoverDataError("no induced morphism between the kernel pairs for the span (" +
                             nm(sq.left) + "," + nm(sq.top) + ")");
      cov.m2 = *m2;
      out.covers.push_back(cov);
    }
  } catch (const BudgetExceeded&) {
    out.truncated = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// sheaf condition

enum class CoverFailureReason { NoAmalgamation, NonUniqueAmalgamation, KernelPairClauseFailure };

inline const char* to_string(CoverFailureReason r) {
  switch (r) {
    case CoverFailureReason::NoAmalgamation: return "no-amalgamation";
    case CoverFailureReason::NonUniqueAmalgamation: return "non-unique-amalgamation";
    default: return "kernel-pair-clause-failure";
  }
}

struct CoverFailure {
  std::size_t cover_index = 0;
  int x = -1, y = -1;  // matching family witness in F(A) x F(B); -1 when the
                       // witness is a pair of sections of F(D) instead
  CoverFailureReason reason = CoverFailureReason::NoAmalgamation;
};

struct SheafVerdict {
  bool is_sheaf = false;
  std::vector<CoverFailure> failures;
};

namespace detail {

// the five-vertex limit: pairs (x, y) in F(A) x F(B) with Fm.x = Ff.y and
// Fg1.x = Fg2.x; with_kernel_clause = false drops the second condition
inline std::vector<std::pair<int, int>> cover_limit(const Presheaf& f, const Cover& cov,
                                                    bool with_kernel_clause) {
  std::vector<std::pair<int, int>> out;
  const FinCategory& c = *f.base;
  for (int x = 0; x < f.size(cov.a_obj(c)); ++x) {
    if (with_kernel_clause && f.act(cov.g1, x) != f.act(cov.g2, x)) continue;
    for (int y = 0; y < f.size(cov.b_obj(c)); ++y)
      if (f.act(cov.square.left, x) == f.act(cov.square.top, y)) out.emplace_back(x, y);
  }
  return out;
}

// classify how (Fg, Fn): F(D) -> limit fails to be a bijection
inline void check_amalgamation(const Presheaf& f, const Cover& cov, std::size_t cover_index,
                               bool with_kernel_clause, std::vector<CoverFailure>& failures) {
  const FinCategory& c = *f.base;
  auto limit = cover_limit(f, cov, with_kernel_clause);
  std::map<std::pair<int, int>, int> hits;
  for (auto& p : limit) hits[p] = 0;
  for (int z = 0; z < f.size(cov.d_obj(c)); ++z) {
    std::pair<int, int> img{f.act(cov.square.bottom, z), f.act(cov.square.right, z)};
    auto it = hits.find(img);
    // functoriality puts every section's restriction pair inside the limit
    if (it == hits.end()) throw std::logic_error("cover check: section restricts outside the limit");
    ++it->second;
  }
  for (auto& [p, n] : hits) {
    if (n == 0) {
      bool clause_fails = f.act(cov.g1, p.first) != f.act(cov.g2, p.first);
      failures.push_back({cover_index, p.first, p.second,
                          clause_fails ? CoverFailureReason::KernelPairClauseFailure
                                       : CoverFailureReason::NoAmalgamation});
    } else if (n > 1) {
      failures.push_back({cover_index, p.first, p.second, CoverFailureReason::NonUniqueAmalgamation});
    }
  }
}

}  // namespace detail

// a presheaf is a sheaf for the generated covers when, for every cover,
// (Fg, Fn) is a bijection from F(D) onto the five-vertex limit
inline SheafVerdict sheaf_check(const Presheaf& f, const CoverList& covers) {
  SheafVerdict v;
  for (std::size_t i = 0; i < covers.covers.size(); ++i)
    detail::check_amalgamation(f, covers.covers[i], i, true, v.failures);
  v.is_sheaf = v.failures.empty();
  return v;
}

// does F send the cover's pushout square to a limit in Set? (the plain
// pair-amalgamation condition, no kernel-pair clause)
inline SheafVerdict pushout_to_limit_check(const Presheaf& f, const CoverList& covers) {
  SheafVerdict v;
  for (std::size_t i = 0; i < covers.covers.size(); ++i)
    detail::check_amalgamation(f, covers.covers[i], i, false, v.failures);
  v.is_sheaf = v.failures.empty();
  return v;
}

// the set-square (F gamma, F m, F delta, F m2) must be a pullback: F(A2) maps
// bijectively onto {(u, w) | Fm.u = Fgamma.w}
inline bool jointly_monic_square_is_pullback(const Presheaf& f, const Cover& cov) {
  const FinCategory& c = *f.base;
  std::map<std::pair<int, int>, int> hits;
  for (int u = 0; u < f.size(cov.a_obj(c)); ++u)
    for (int w = 0; w < f.size(cov.c2_obj); ++w)
      if (f.act(cov.square.left, u) == f.act(cov.gamma, w)) hits[{u, w}] = 0;
  for (int v = 0; v < f.size(cov.a2_obj); ++v) {
    auto key = std::make_pair(f.act(cov.delta, v), f.act(cov.m2, v));
    auto it = hits.find(key);
    if (it == hits.end()) return false;  // naturality would forbid this, but be safe
    ++it->second;
  }
  for (auto& [_, n] : hits)
    if (n != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// exhaustive presheaf enumeration

enum class StreamStatus { Done, Truncated };

// all functorial presheaves with carriers of size <= k, in canonical order
// (carrier sizes lexicographic, then action tables lexicographic); yields
// until the callback returns false or the budget runs out
inline StreamStatus enumerate_presheaves(std::shared_ptr<const FinCategory> base, int k,
                                         Budget& budget,
                                         const std::function<bool(const Presheaf&)>& yield) {
  const FinCategory& c = *base;
  const std::size_t nobj = c.objects.size();
  const std::size_t nmor = c.morphisms.size();

  std::vector<int> nonid;  // non-identity morphisms, ascending
  for (std::size_t m = 0; m < nmor; ++m)
    if (c.identity[static_cast<std::size_t>(c.src(static_cast<int>(m)))] != static_cast<int>(m))
      nonid.push_back(static_cast<int>(m));

  // composition constraints grouped by the last assigned participant
  struct Constraint {
    int v, u, w;  // w = v.u, F(w) = F(u) o F(v)
  };
  std::vector<Constraint> constraints;
  for (std::size_t v = 0; v < nmor; ++v)
    for (std::size_t u = 0; u < nmor; ++u) {
      int w = c.compose(static_cast<int>(v), static_cast<int>(u));
      if (w >= 0) constraints.push_back({static_cast<int>(v), static_cast<int>(u), w});
    }

  std::vector<int> sizes(nobj, 0);
  bool stopped = false;
  bool out_of_budget = false;

  std::function<void()> run_sizes = [&]() {
    Presheaf f;
    f.base = base;
    f.carrier = sizes;
    f.action.assign(nmor, {});
    std::vector<bool> assigned(nmor, false);
    for (std::size_t m = 0; m < nmor; ++m)
      if (c.identity[static_cast<std::size_t>(c.src(static_cast<int>(m)))] == static_cast<int>(m)) {
        f.action[m].resize(static_cast<std::size_t>(sizes[static_cast<std::size_t>(c.src(static_cast<int>(m)))]));
        for (int x = 0; x < sizes[static_cast<std::size_t>(c.src(static_cast<int>(m)))]; ++x)
          f.action[m][static_cast<std::size_t>(x)] = x;
        assigned[m] = true;
      }

    auto satisfiable = [&]() {
      for (const auto& cst : constraints) {
        if (!assigned[static_cast<std::size_t>(cst.v)] || !assigned[static_cast<std::size_t>(cst.u)] ||
            !assigned[static_cast<std::size_t>(cst.w)])
          continue;
        for (int z = 0; z < sizes[static_cast<std::size_t>(c.dst(cst.v))]; ++z)
          if (f.act(cst.w, z) != f.act(cst.u, f.act(cst.v, z))) return false;
      }
      return true;
    };

    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
      if (stopped || out_of_budget) return false;
      if (i == nonid.size()) {
        if (!yield(f)) stopped = true;
        return !stopped;
      }
      int mor = nonid[i];
      int dom_size = sizes[static_cast<std::size_t>(c.dst(mor))];   // action maps F(dst)..
      int cod_size = sizes[static_cast<std::size_t>(c.src(mor))];   // ..into F(src)
      if (dom_size > 0 && cod_size == 0) return true;  // no function exists
      std::vector<int> table(static_cast<std::size_t>(dom_size), 0);
      while (true) {
        if (!budget.tick()) {
          out_of_budget = true;
          return false;
        }
        f.action[static_cast<std::size_t>(mor)] = table;
        assigned[static_cast<std::size_t>(mor)] = true;
        if (satisfiable() && !rec(i + 1)) {
          assigned[static_cast<std::size_t>(mor)] = false;
          return false;
        }
        assigned[static_cast<std::size_t>(mor)] = false;
        f.action[static_cast<std::size_t>(mor)].clear();
        // next table, lexicographic
        int j = dom_size - 1;
        while (j >= 0 && table[static_cast<std::size_t>(j)] == cod_size - 1)
          table[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
        ++table[static_cast<std::size_t>(j)];
      }
      return true;
    };
    rec(0);
  };

  // iterate carrier-size tuples lexicographically, most significant first
  std::function<void(std::size_t)> size_rec = [&](std::size_t obj) {
    if (stopped || out_of_budget) return;
    if (obj == nobj) {
      run_sizes();
      return;
    }
    for (int s = 0; s <= k && !stopped && !out_of_budget; ++s) {
      sizes[obj] = s;
      size_rec(obj + 1);
    }
    sizes[obj] = 0;
  };
  size_rec(0);
  return out_of_budget ? StreamStatus::Truncated : StreamStatus::Done;
}

// ---------------------------------------------------------------------------
// the embedding report

struct EmbeddingReport {
  std::size_t cover_count = 0;
  std::size_t presheaves_enumerated = 0;
  std::size_t sheaves_found = 0;
  std::size_t non_sheaves = 0;
  bool representables_all_sheaves = false;
  std::vector<int> representable_failures;           // object indices
  std::size_t pushout_to_limit_checks = 0;
  std::vector<std::pair<std::size_t, CoverFailure>> pushout_to_limit_failures;  // (sheaf ordinal, failure)
  std::size_t jointly_monic_checks = 0;
  std::vector<std::pair<std::size_t, std::size_t>> jointly_monic_failures;  // (sheaf ordinal, cover)
  bool truncated = false;

  bool embedding_holds() const {
    return representables_all_sheaves && pushout_to_limit_failures.empty() &&
           jointly_monic_failures.empty() && !truncated;
  }
};

// enumerate presheaves with carriers <= k; every sheaf must send every
// generating pushout square to a limit of sets and satisfy the jointly-monic
// pullback square; representables must be sheaves
inline EmbeddingReport embedding_check(std::shared_ptr<const FinCategory> base, int k,
                                       Budget& budget,
                                       const CoverList* precomputed_covers = nullptr) {
  const FinCategory& c = *base;
  EmbeddingReport rep;
  CoverList covers;
  if (precomputed_covers)
    covers = *precomputed_covers;
  else
    covers = generate_covers(c, budget);
  rep.cover_count = covers.covers.size();
  rep.truncated = covers.truncated;

  rep.representables_all_sheaves = true;
  for (std::size_t a = 0; a < c.objects.size(); ++a) {
    Presheaf y = representable(base, static_cast<int>(a));
    if (!sheaf_check(y, covers).is_sheaf) {
      rep.representables_all_sheaves = false;
      rep.representable_failures.push_back(static_cast<int>(a));
    }
  }

  StreamStatus st = enumerate_presheaves(base, k, budget, [&](const Presheaf& f) {
    ++rep.presheaves_enumerated;
    SheafVerdict sv = sheaf_check(f, covers);
    if (!sv.is_sheaf) {
      ++rep.non_sheaves;
      return true;
    }
    std::size_t ordinal = rep.sheaves_found++;
    SheafVerdict pl = pushout_to_limit_check(f, covers);
    rep.pushout_to_limit_checks += covers.covers.size();
    for (auto& fail : pl.failures) rep.pushout_to_limit_failures.emplace_back(ordinal, fail);
    for (std::size_t i = 0; i < covers.covers.size(); ++i) {
      ++rep.jointly_monic_checks;
      if (!jointly_monic_square_is_pullback(f, covers.covers[i]))
        rep.jointly_monic_failures.emplace_back(ordinal, i);
    }
    return true;
  });
  if (st == StreamStatus::Truncated) rep.truncated = true;
  return rep;
}

}  // namespace adhesive
