#pragma once

// Double-pushout rewriting on C-sets: mono match enumeration, pushout
// complements guarded by the dangling condition, and rule application.

#include <variant>

#include "adhesive/adhesion.hpp"

namespace adhesive {

// ---------------------------------------------------------------------------
// rules and matches

struct Rule {
  CSetMorphism l;  // K -> L, mono
  CSetMorphism r;  // K -> R, mono
  std::string name;

  const CSet& k() const { return l.dom; }
  const CSet& lhs() const { return l.cod; }
  const CSet& rhs() const { return r.cod; }
};

inline Rule make_rule(CSetMorphism l, CSetMorphism r, std::string name) {
  if (!(l.dom == r.dom)) throw std::invalid_argument("rule legs share no interface");
  if (!is_mono(l)) throw std::invalid_argument("rule leg l is not mono");
  if (!is_mono(r)) throw std::invalid_argument("rule leg r is not mono");
  return Rule{std::move(l), std::move(r), std::move(name)};
}

struct MatchResult {
  CSetMorphism match;  // mono, pattern -> host
  std::size_t index = 0;  // ordinal under canonical enumeration
};

struct MatchList {
  std::vector<MatchResult> matches;
  bool truncated = false;
};

// all monos pattern -> host in lexicographic order of component assignments;
// limit = 0 means unlimited
inline MatchList enumerate_monos(const CSet& pattern, const CSet& host, std::size_t limit = 0) {
  if (!(pattern.schema == host.schema))
    throw std::invalid_argument("enumerate_monos: schema mismatch");
  MatchList out;
  Budget budget(std::numeric_limits<std::uint64_t>::max());
  enumerate_homs(pattern, host, true, budget, [&](const CSetMorphism& f) {
    if (limit > 0 && out.matches.size() == limit) {
      out.truncated = true;
      return false;
    }
    out.matches.push_back({f, out.matches.size()});
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// pushout complement

struct RejectReason {
  std::string op;       // the op whose image dangles
  std::string sort;     // sort of the retained element
  int retained = -1;    // retained element (host id)
  int deleted = -1;     // its image, scheduled for deletion

  std::string describe() const {
    return "dangling: op '" + op + "' sends retained " + sort + ":" + std::to_string(retained) +
           " into deleted element " + std::to_string(deleted);
  }
};

struct ComplementData {
  CSet complement;         // D
  CSetMorphism embed_k;    // K -> D
  CSetMorphism include_d;  // D -> G, mono
};

// D = G minus m(L \ l(K)), provided no retained element's structure map
// lands in a deleted one; the completed square is re-verified as a pushout
inline std::variant<ComplementData, RejectReason> pushout_complement(const CSetMorphism& l,
                                                                     const CSetMorphism& m) {
  if (!is_mono(l)) throw std::invalid_argument("pushout_complement: l is not mono");
  if (!is_mono(m)) throw std::invalid_argument("pushout_complement: m is not mono");
  if (!(l.cod == m.dom)) throw std::invalid_argument("pushout_complement: cod(l) != dom(m)");
  const CSet& L = l.cod;
  const CSet& G = m.cod;
  const Schema& sch = G.schema;
  const std::size_t nsorts = sch.sorts.size();

  std::vector<std::vector<bool>> deleted(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) {
    deleted[s].assign(static_cast<std::size_t>(G.carrier[s]), false);
    std::vector<bool> in_k(static_cast<std::size_t>(L.carrier[s]), false);
    for (int x = 0; x < l.dom.carrier[s]; ++x) in_k[static_cast<std::size_t>(l.at(static_cast<int>(s), x))] = true;
    for (int y = 0; y < L.carrier[s]; ++y)
      if (!in_k[static_cast<std::size_t>(y)])
        deleted[s][static_cast<std::size_t>(m.at(static_cast<int>(s), y))] = true;
  }

  for (std::size_t o = 0; o < sch.ops.size(); ++o) {
    const auto& op = sch.ops[o];
    for (int x = 0; x < G.carrier[static_cast<std::size_t>(op.src)]; ++x) {
      if (deleted[static_cast<std::size_t>(op.src)][static_cast<std::size_t>(x)]) continue;
      int img = G.apply(static_cast<int>(o), x);
      if (deleted[static_cast<std::size_t>(op.dst)][static_cast<std::size_t>(img)])
        return RejectReason{op.name, sch.sorts[static_cast<std::size_t>(op.src)], x, img};
    }
  }

  // order-preserving dense relabeling of the retained part
  ComplementData out;
  out.complement = CSet::empty(sch);
  std::vector<std::vector<int>> new_id(nsorts);
  out.include_d.component.resize(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) {
    new_id[s].assign(static_cast<std::size_t>(G.carrier[s]), -1);
    for (int x = 0; x < G.carrier[s]; ++x)
      if (!deleted[s][static_cast<std::size_t>(x)]) {
        new_id[s][static_cast<std::size_t>(x)] = out.complement.carrier[s]++;
        out.include_d.component[s].push_back(x);
      }
  }
  for (std::size_t o = 0; o < sch.ops.size(); ++o) {
    const auto& op = sch.ops[o];
    for (int x = 0; x < G.carrier[static_cast<std::size_t>(op.src)]; ++x)
      if (!deleted[static_cast<std::size_t>(op.src)][static_cast<std::size_t>(x)])
        out.complement.fn[o].push_back(
            new_id[static_cast<std::size_t>(op.dst)][static_cast<std::size_t>(G.apply(static_cast<int>(o), x))]);
  }
  out.include_d.dom = out.complement;
  out.include_d.cod = G;

  out.embed_k.dom = l.dom;
  out.embed_k.cod = out.complement;
  out.embed_k.component.resize(nsorts);
  for (std::size_t s = 0; s < nsorts; ++s) {
    out.embed_k.component[s].resize(static_cast<std::size_t>(l.dom.carrier[s]));
    for (int x = 0; x < l.dom.carrier[s]; ++x)
      out.embed_k.component[s][static_cast<std::size_t>(x)] =
          new_id[s][static_cast<std::size_t>(m.at(static_cast<int>(s), l.at(static_cast<int>(s), x)))];
  }

  Square sq{l, out.embed_k, out.include_d, m};
  if (!verify_square(sq, SquareKind::Pushout).holds)
    throw std::logic_error("pushout_complement: completed square failed pushout verification");
  return out;
}

// ---------------------------------------------------------------------------
// rule application

struct DpoResult {
  CSet result;             // H
  ComplementData complement;
  PushoutData glue;        // pushout of (K -> D, K -> R)
  Square left_square;      // K, L, D, G
  Square right_square;     // K, R, D, H
};

inline std::variant<DpoResult, RejectReason> dpo_apply(const Rule& rule, const CSet& host,
                                                       const MatchResult& at) {
  const CSetMorphism& m = at.match;
  if (!(m.dom == rule.lhs())) throw std::invalid_argument("dpo_apply: match domain is not the rule's L");
  if (!(m.cod == host)) throw std::invalid_argument("dpo_apply: match codomain is not the host");
  if (!is_mono(m)) throw std::invalid_argument("dpo_apply: match is not mono");

  auto poc = pushout_complement(rule.l, m);
  if (std::holds_alternative<RejectReason>(poc)) return std::get<RejectReason>(poc);
  ComplementData comp = std::get<ComplementData>(std::move(poc));

  PushoutData glue = pushout(Span(comp.embed_k, rule.r));
  DpoResult out{glue.apex, std::move(comp), glue, {}, {}};
  out.left_square = Square{rule.l, out.complement.embed_k, out.complement.include_d, m};
  out.right_square = Square{rule.r, out.complement.embed_k, glue.inj_left, glue.inj_right};
  if (!verify_square(out.right_square, SquareKind::Pushout).holds)
    throw std::logic_error("dpo_apply: gluing square failed pushout verification");
  return out;
}

}  // namespace adhesive
