#pragma once

// Van Kampen cubes and the exactness checks that define adhesivity, for both
// C-set diagrams and explicit finite categories, plus an exhaustive audit
// that hunts for Van Kampen violations in a finite category.

#include "adhesive/fincat.hpp"

namespace adhesive {

// ---------------------------------------------------------------------------
// C-set cubes

// Two stacked squares joined by verticals running primed -> unprimed.
struct Cube {
  Square top, bottom;
  CSetMorphism vc, va, vb, vd;

  Square back_face() const { return {top.top, vc, bottom.top, vb}; }
  Square left_face() const { return {top.left, vc, bottom.left, va}; }
  Square front_face() const { return {top.bottom, va, bottom.bottom, vd}; }
  Square right_face() const { return {top.right, vb, bottom.right, vd}; }

  std::optional<std::string> commutes() const {
    struct Named {
      const char* name;
      Square sq;
    };
    const Named faces[] = {{"top", top},
                           {"bottom", bottom},
                           {"back", back_face()},
                           {"left", left_face()},
                           {"front", front_face()},
                           {"right", right_face()}};
    for (const auto& f : faces)
      if (auto w = f.sq.commutes()) return std::string(f.name) + " face: " + *w;
    return std::nullopt;
  }
};

// the single-requirement form: given a pushout-along-mono bottom and pullback
// back/left faces, the top is a pushout iff front and right are pullbacks
inline VKVerdict vk_cube_check(const Cube& cube, Engine engine = Engine::Componentwise,
                               Budget* budget = nullptr) {
  if (auto w = cube.commutes())
    throw std::invalid_argument("vk_cube_check: cube does not commute: " + *w);
  Budget local(default_budget());
  Budget& bd = budget ? *budget : local;

  VKVerdict v;
  auto check = [&](const Square& sq, SquareKind k) {
    SquareVerdict r = verify_square(sq, k, engine, &bd);
    if (r.budget_exceeded) v.budget_exceeded = true;
    return r.holds;
  };
  bool bottom_po = check(cube.bottom, SquareKind::Pushout);
  bool bottom_mono = is_mono(cube.bottom.left) || is_mono(cube.bottom.top);
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

// pull an entire square back along d: D' -> D; the resulting cube has
// pullback back/left/front/right faces by construction
inline Cube pullback_cube(const Square& bottom, const CSetMorphism& d) {
  if (!(d.cod == bottom.d())) throw std::invalid_argument("pullback_cube: d must land in the corner D");
  PullbackData front = pullback(Cospan(bottom.bottom, d));  // A' with A'->A, A'->D'
  PullbackData right = pullback(Cospan(bottom.right, d));   // B'
  PullbackData diag = pullback(Cospan(compose(bottom.bottom, bottom.left), d));  // C'

  // mediating C' -> A' and C' -> B' via the fiber-product pairing
  auto pair_into = [](const PullbackData& pb, const CSetMorphism& to_corner,
                      const CSetMorphism& to_dprime) {
    CSetMorphism m;
    m.dom = to_corner.dom;
    m.cod = pb.apex;
    m.component.resize(pb.apex.carrier.size());
    for (std::size_t s = 0; s < pb.apex.carrier.size(); ++s) {
      m.component[s].resize(static_cast<std::size_t>(to_corner.dom.carrier[s]));
      for (int x = 0; x < to_corner.dom.carrier[s]; ++x) {
        int idx = pb.pair_index(static_cast<int>(s), to_corner.at(static_cast<int>(s), x),
                                to_dprime.at(static_cast<int>(s), x));
        if (idx < 0) throw std::logic_error("pullback_cube: pairing misses the fiber product");
        m.component[s][static_cast<std::size_t>(x)] = idx;
      }
    }
    return m;
  };

  Cube cube;
  cube.bottom = bottom;
  cube.vd = d;
  cube.va = front.proj_left;
  cube.vb = right.proj_left;
  cube.vc = diag.proj_left;
  CSetMorphism tl = pair_into(front, compose(bottom.left, diag.proj_left), diag.proj_right);
  CSetMorphism tt = pair_into(right, compose(bottom.top, diag.proj_left), diag.proj_right);
  cube.top = Square{tt, tl, front.proj_right, right.proj_right};
  if (auto w = cube.commutes()) throw std::logic_error("pullback_cube: assembled cube broken: " + *w);
  return cube;
}

// ---------------------------------------------------------------------------
// the two basic exactness checks

// pushout of a mono along any map: the opposite leg is mono and the pushout
// square is also a pullback
struct PropBasicReport {
  PushoutData po;
  Square square;
  bool right_leg_mono = false;
  bool square_is_pullback = false;

  bool holds() const { return right_leg_mono && square_is_pullback; }
};

inline PropBasicReport prop_basic_check(const CSetMorphism& m, const CSetMorphism& f,
                                        Engine engine = Engine::Componentwise,
                                        Budget* budget = nullptr) {
  if (!is_mono(m)) throw std::invalid_argument("prop_basic_check: m is not mono");
  if (!(m.dom == f.dom)) throw std::invalid_argument("prop_basic_check: m and f share no domain");
  PropBasicReport r;
  r.po = pushout(Span(m, f));
  r.square = Square{f, m, r.po.inj_left, r.po.inj_right};
  r.right_leg_mono = is_mono(r.po.inj_right);
  r.square_is_pullback = verify_square(r.square, SquareKind::Pullback, engine, budget).holds;
  return r;
}

// the kernel-pair square of a pushout along a mono: with C2, A2 the kernel
// pairs of f and g and gamma, delta their diagonals, the square
//
//        gamma
//     C ------> C2
//     |         |
//   m |         | m2
//     v         v
//     A ------> A2
//        delta
//
// is both a pushout and a pullback
struct LemmaBasicReport {
  bool well_formed = false;
  bool m2_mono = false;
  bool square_is_pushout = false;
  bool square_is_pullback = false;
  KernelPairData c2, a2;
  CSetMorphism m2;
  Square square;
  PushoutData po;  // the generating pushout (g, n)

  bool holds() const { return well_formed && m2_mono && square_is_pushout && square_is_pullback; }
};

inline LemmaBasicReport lemma_basic_check(const CSetMorphism& m, const CSetMorphism& f,
                                          Engine engine = Engine::Componentwise,
                                          Budget* budget = nullptr) {
  if (!is_mono(m)) throw std::invalid_argument("lemma_basic_check: m is not mono");
  if (!(m.dom == f.dom)) throw std::invalid_argument("lemma_basic_check: m and f share no domain");
  LemmaBasicReport r;
  r.po = pushout(Span(m, f));
  const CSetMorphism& g = r.po.inj_left;
  r.c2 = kernel_pair(f);
  r.a2 = kernel_pair(g);

  // m2: C2 -> A2, (c, c') |-> (m c, m c')
  PullbackData a2_pb = pullback(Cospan(g, g));
  r.m2.dom = r.c2.apex;
  r.m2.cod = r.a2.apex;
  r.m2.component.resize(r.c2.apex.carrier.size());
  PullbackData c2_pb = pullback(Cospan(f, f));
  for (std::size_t s = 0; s < r.c2.apex.carrier.size(); ++s) {
    r.m2.component[s].resize(static_cast<std::size_t>(r.c2.apex.carrier[s]));
    for (int e = 0; e < r.c2.apex.carrier[s]; ++e) {
      auto [c1, c2e] = c2_pb.pairs[s][static_cast<std::size_t>(e)];
      int idx = a2_pb.pair_index(static_cast<int>(s), m.at(static_cast<int>(s), c1),
                                 m.at(static_cast<int>(s), c2e));
      if (idx < 0) throw std::logic_error("lemma_basic_check: m2 image missing from A2");
      r.m2.component[s][static_cast<std::size_t>(e)] = idx;
    }
  }

  r.square = Square{r.c2.diagonal, m, r.a2.diagonal, r.m2};
  r.well_formed = validate(r.m2).ok() && !r.square.commutes() &&
                  compose(r.c2.proj1, r.c2.diagonal) == CSetMorphism::identity(f.dom) &&
                  compose(r.a2.proj1, r.a2.diagonal) == CSetMorphism::identity(g.dom);
  r.m2_mono = is_mono(r.m2);
  r.square_is_pushout = verify_square(r.square, SquareKind::Pushout, engine, budget).holds;
  r.square_is_pullback = verify_square(r.square, SquareKind::Pullback, engine, budget).holds;
  return r;
}

// ---------------------------------------------------------------------------
// adhesivity audit of a finite category

struct AuditReport {
  enum class Verdict { AdhesiveWithinBounds, ViolationFound, Inconclusive };

  Verdict verdict = Verdict::Inconclusive;
  bool is_poset = false;
  bool budget_exceeded = false;
  std::size_t spans_with_mono_leg = 0;
  std::size_t pushout_squares = 0;  // after iso-deduplication
  std::size_t cubes_checked = 0;
  std::vector<std::string> missing_pushouts;   // span descriptions
  std::vector<std::string> missing_pullbacks;  // cospan descriptions
  std::vector<FcCube> violations;
};

inline const char* to_string(AuditReport::Verdict v) {
  switch (v) {
    case AuditReport::Verdict::AdhesiveWithinBounds: return "adhesive-within-bounds";
    case AuditReport::Verdict::ViolationFound: return "violation-found";
    default: return "inconclusive";
  }
}

// Enumerates every span with a mono leg and searches for its pushout, then
// exercises stability: for each pushout-along-mono bottom square and each
// morphism d into its corner, the cube obtained by pulling the square back
// along d must pass the Van Kampen biconditional (its back/left/front/right
// faces are pullbacks by construction, so this asks the pulled-back top to
// be a pushout). Missing pushouts/pullbacks are reported, not violations.
inline AuditReport adhesivity_audit(const FinCategory& c, Budget& budget) {
  AuditReport rep;
  PosetView pv = poset_view(c);
  rep.is_poset = pv.is_poset;
  const PosetView* pvp = pv.is_poset ? &pv : nullptr;
  const int nmor = static_cast<int>(c.morphisms.size());
  auto nm = [&](int m) { return c.morphisms[static_cast<std::size_t>(m)].name; };

  std::vector<bool> mono(static_cast<std::size_t>(nmor));
  for (int m = 0; m < nmor; ++m) mono[static_cast<std::size_t>(m)] = fc_is_mono(c, m);

  try {
    // pullback existence over all cospans
    for (int u = 0; u < nmor; ++u)
      for (int v = 0; v < nmor; ++v) {
        if (c.dst(u) != c.dst(v)) continue;
        if (!budget.tick()) throw BudgetExceeded{};
        if (!fc_pullback(c, u, v, budget, pvp))
          rep.missing_pullbacks.push_back("(" + nm(u) + "," + nm(v) + ")");
      }

    // pushout squares over spans with a mono leg, deduplicated up to iso
    std::vector<FcSquare> bottoms;
    for (int m = 0; m < nmor; ++m) {
      if (!mono[static_cast<std::size_t>(m)]) continue;
      for (int f = 0; f < nmor; ++f) {
        if (c.src(f) != c.src(m)) continue;
        ++rep.spans_with_mono_leg;
        auto po = fc_pushout(c, m, f, budget, pvp);
        if (!po) {
          rep.missing_pushouts.push_back("(" + nm(m) + "," + nm(f) + ")");
          continue;
        }
        FcSquare sq{f, m, po->left, po->right};
        bool dup = false;
        for (const auto& existing : bottoms)
          if (fc_squares_isomorphic(c, existing, sq)) {
            dup = true;
            break;
          }
        if (!dup) bottoms.push_back(sq);
      }
    }
    rep.pushout_squares = bottoms.size();

    // stability cubes: pull each bottom square back along every d: D' -> D
    const int nobj = static_cast<int>(c.objects.size());
    for (const FcSquare& bot : bottoms) {
      const int d_obj = c.dst(bot.bottom);
      const int diag = c.compose(bot.bottom, bot.left);  // C -> D
      for (int dp = 0; dp < nobj; ++dp)
        for (int d : c.hom(dp, d_obj)) {
          if (!budget.tick()) throw BudgetExceeded{};
          auto front = fc_pullback(c, bot.bottom, d, budget, pvp);  // A' with a, tb
          auto right = fc_pullback(c, bot.right, d, budget, pvp);   // B' with b, tr
          auto apex = fc_pullback(c, diag, d, budget, pvp);         // C' with c', tc
          if (!front || !right || !apex) continue;  // absences already recorded above
          auto tl = fc_unique_such(c, apex->apex, front->apex, [&](int x) {
            return c.compose(front->left, x) == c.compose(bot.left, apex->left) &&
                   c.compose(front->right, x) == apex->right;
          });
          auto tt = fc_unique_such(c, apex->apex, right->apex, [&](int x) {
            return c.compose(right->left, x) == c.compose(bot.top, apex->left) &&
                   c.compose(right->right, x) == apex->right;
          });
          if (!tl || !tt) throw std::logic_error("audit: pulled-back cube has no induced top span");
          FcCube cube;
          cube.bottom = bot;
          cube.top = FcSquare{*tt, *tl, front->right, right->right};
          cube.vc = apex->left;
          cube.va = front->left;
          cube.vb = right->left;
          cube.vd = d;
          ++rep.cubes_checked;
          VKVerdict v = fc_vk_cube_check(c, cube, budget);
          if (v.budget_exceeded) throw BudgetExceeded{};
          if (v.preconditions_met && !v.vk_holds) rep.violations.push_back(cube);
        }
    }
  } catch (const BudgetExceeded&) {
    rep.budget_exceeded = true;
  }

  if (!rep.violations.empty())
    rep.verdict = AuditReport::Verdict::ViolationFound;
  else if (rep.budget_exceeded || !rep.missing_pushouts.empty() || !rep.missing_pullbacks.empty())
    rep.verdict = AuditReport::Verdict::Inconclusive;
  else
    rep.verdict = AuditReport::Verdict::AdhesiveWithinBounds;
  return rep;
}

}  // namespace adhesive
