#pragma once

// Structured-text document format: line oriented, named sections, one
// carrier/function per line, '#' comments, mandatory format-version header.
// Serialization is canonical - fixed section order, declared-order names,
// dense ids - so semantically equal documents are byte-identical.

#include <charconv>
#include <sstream>
#include <variant>

#include "adhesive/dpo.hpp"
#include "adhesive/sheaf.hpp"

namespace adhesive {

inline constexpr const char* kFormatHeader = "adhesive/1";

struct ParseError : std::runtime_error {
  int line;

  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

enum class DocKind { Schema, CSet, Morphism, FinCat, Rule, Presheaf, Square, Cube };

inline const char* to_string(DocKind k) {
  switch (k) {
    case DocKind::Schema: return "schema";
    case DocKind::CSet: return "cset";
    case DocKind::Morphism: return "morphism";
    case DocKind::FinCat: return "fincat";
    case DocKind::Rule: return "rule";
    case DocKind::Presheaf: return "presheaf";
    case DocKind::Square: return "square";
    default: return "cube";
  }
}

struct FcSquareDoc {
  FinCategory category;
  FcSquare square;
};

struct FcCubeDoc {
  FinCategory category;
  FcCube cube;
};

struct Document {
  DocKind kind = DocKind::Schema;
  std::variant<Schema, CSet, CSetMorphism, FinCategory, Rule, Presheaf, Square, FcSquareDoc, Cube,
               FcCubeDoc>
      payload;
};

namespace io_detail {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

inline std::vector<Line> lex(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      if (j > i) line.tokens.emplace_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

inline int parse_int(const Line& ln, const std::string& tok) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(ln.number, "expected an integer, got '" + tok + "'");
  return v;
}

struct Cursor {
  const std::vector<Line>* lines;
  std::size_t at = 0;

  bool done() const { return at >= lines->size(); }
  const Line& peek() const { return (*lines)[at]; }
  const Line& take() { return (*lines)[at++]; }
  int here() const { return done() ? (lines->empty() ? 1 : lines->back().number + 1) : peek().number; }
};

// lines of a begin/end block (blocks never nest)
inline std::vector<Line> take_block(Cursor& cur, const std::string& name) {
  if (cur.done() || cur.peek().tokens[0] != "begin" || cur.peek().tokens.size() != 2 ||
      cur.peek().tokens[1] != name)
    throw ParseError(cur.here(), "expected 'begin " + name + "'");
  cur.take();
  std::vector<Line> body;
  while (!cur.done() && cur.peek().tokens[0] != "end") {
    if (cur.peek().tokens[0] == "begin")
      throw ParseError(cur.here(), "nested 'begin' inside block '" + name + "'");
    body.push_back(cur.take());
  }
  if (cur.done()) throw ParseError(cur.here(), "missing 'end' for block '" + name + "'");
  cur.take();
  return body;
}

// ---- cset bodies

inline CSet parse_cset_body(const std::vector<Line>& lines, bool data_expected) {
  Schema schema;
  bool saw_sorts = false;
  std::vector<std::pair<Line, std::string>> carrier_lines;
  std::vector<Line> fn_lines;
  for (const Line& ln : lines) {
    const auto& t = ln.tokens;
    if (t[0] == "sorts") {
      if (saw_sorts) throw ParseError(ln.number, "duplicate 'sorts' line");
      saw_sorts = true;
      schema.sorts.assign(t.begin() + 1, t.end());
    } else if (t[0] == "op") {
      if (t.size() != 4) throw ParseError(ln.number, "'op' wants: op NAME SRC DST");
      int src = schema.sort_index(t[2]);
      int dst = schema.sort_index(t[3]);
      if (src < 0) throw ParseError(ln.number, "unknown sort '" + t[2] + "'");
      if (dst < 0) throw ParseError(ln.number, "unknown sort '" + t[3] + "'");
      schema.ops.push_back({t[1], src, dst});
    } else if (t[0] == "carrier" || t[0] == "fn") {
      if (!data_expected) throw ParseError(ln.number, "'" + t[0] + "' not allowed in a schema");
      if (t[0] == "carrier") {
        if (t.size() != 3) throw ParseError(ln.number, "'carrier' wants: carrier SORT SIZE");
        carrier_lines.emplace_back(ln, t[1]);
      } else {
        fn_lines.push_back(ln);
      }
    } else {
      throw ParseError(ln.number, "unexpected '" + t[0] + "' in a C-set body");
    }
  }
  if (!saw_sorts) throw ParseError(lines.empty() ? 1 : lines.front().number, "missing 'sorts' line");

  CSet x = CSet::empty(schema);
  if (!data_expected) return x;
  std::vector<bool> have(schema.sorts.size(), false);
  for (auto& [ln, name] : carrier_lines) {
    int s = schema.sort_index(name);
    if (s < 0) throw ParseError(ln.number, "unknown sort '" + name + "'");
    if (have[static_cast<std::size_t>(s)]) throw ParseError(ln.number, "duplicate carrier for '" + name + "'");
    have[static_cast<std::size_t>(s)] = true;
    x.carrier[static_cast<std::size_t>(s)] = parse_int(ln, ln.tokens[2]);
  }
  for (std::size_t s = 0; s < schema.sorts.size(); ++s)
    if (!have[s])
      throw ParseError(lines.back().number, "missing carrier for sort '" + schema.sorts[s] + "'");
  std::vector<bool> have_fn(schema.ops.size(), false);
  for (const Line& ln : fn_lines) {
    int o = schema.op_index(ln.tokens[1]);
    if (o < 0) throw ParseError(ln.number, "unknown op '" + ln.tokens[1] + "'");
    if (have_fn[static_cast<std::size_t>(o)])
      throw ParseError(ln.number, "duplicate fn for '" + ln.tokens[1] + "'");
    have_fn[static_cast<std::size_t>(o)] = true;
    for (std::size_t i = 2; i < ln.tokens.size(); ++i)
      x.fn[static_cast<std::size_t>(o)].push_back(parse_int(ln, ln.tokens[i]));
  }
  for (std::size_t o = 0; o < schema.ops.size(); ++o)
    if (!have_fn[o])
      throw ParseError(lines.back().number, "missing fn for op '" + schema.ops[o].name + "'");
  return x;
}

inline void write_cset_body(std::ostringstream& out, const CSet& x, bool data) {
  out << "sorts";
  for (const auto& s : x.schema.sorts) out << ' ' << s;
  out << '\n';
  for (const auto& op : x.schema.ops)
    out << "op " << op.name << ' ' << x.schema.sorts[static_cast<std::size_t>(op.src)] << ' '
        << x.schema.sorts[static_cast<std::size_t>(op.dst)] << '\n';
  if (!data) return;
  for (std::size_t s = 0; s < x.schema.sorts.size(); ++s)
    out << "carrier " << x.schema.sorts[s] << ' ' << x.carrier[s] << '\n';
  for (std::size_t o = 0; o < x.schema.ops.size(); ++o) {
    out << "fn " << x.schema.ops[o].name;
    for (int v : x.fn[o]) out << ' ' << v;
    out << '\n';
  }
}

// ---- component blocks

inline std::vector<std::vector<int>> parse_components(const std::vector<Line>& lines,
                                                      const Schema& schema) {
  std::vector<std::vector<int>> comp(schema.sorts.size());
  std::vector<bool> have(schema.sorts.size(), false);
  for (const Line& ln : lines) {
    if (ln.tokens[0] != "component")
      throw ParseError(ln.number, "expected 'component' lines, got '" + ln.tokens[0] + "'");
    if (ln.tokens.size() < 2) throw ParseError(ln.number, "'component' wants a sort name");
    int s = schema.sort_index(ln.tokens[1]);
    if (s < 0) throw ParseError(ln.number, "unknown sort '" + ln.tokens[1] + "'");
    if (have[static_cast<std::size_t>(s)])
      throw ParseError(ln.number, "duplicate component for '" + ln.tokens[1] + "'");
    have[static_cast<std::size_t>(s)] = true;
    for (std::size_t i = 2; i < ln.tokens.size(); ++i)
      comp[static_cast<std::size_t>(s)].push_back(parse_int(ln, ln.tokens[i]));
  }
  return comp;
}

inline void write_components(std::ostringstream& out, const CSetMorphism& f) {
  for (std::size_t s = 0; s < f.dom.schema.sorts.size(); ++s) {
    out << "component " << f.dom.schema.sorts[s];
    for (int v : f.component[s]) out << ' ' << v;
    out << '\n';
  }
}

// ---- fincat bodies

inline FinCategory parse_fincat_body(const std::vector<Line>& lines) {
  FinCategory c;
  std::vector<Line> mor_lines, id_lines, comp_lines;
  for (const Line& ln : lines) {
    const auto& t = ln.tokens;
    if (t[0] == "object") {
      if (t.size() != 2) throw ParseError(ln.number, "'object' wants: object NAME");
      c.objects.push_back(t[1]);
    } else if (t[0] == "mor") {
      mor_lines.push_back(ln);
    } else if (t[0] == "identity") {
      id_lines.push_back(ln);
    } else if (t[0] == "comp") {
      comp_lines.push_back(ln);
    } else {
      throw ParseError(ln.number, "unexpected '" + t[0] + "' in a category body");
    }
  }
  for (const Line& ln : mor_lines) {
    if (ln.tokens.size() != 4) throw ParseError(ln.number, "'mor' wants: mor NAME SRC DST");
    int src = c.object_index(ln.tokens[2]);
    int dst = c.object_index(ln.tokens[3]);
    if (src < 0) throw ParseError(ln.number, "unknown object '" + ln.tokens[2] + "'");
    if (dst < 0) throw ParseError(ln.number, "unknown object '" + ln.tokens[3] + "'");
    c.morphisms.push_back({ln.tokens[1], src, dst});
  }
  c.identity.assign(c.objects.size(), -1);
  for (const Line& ln : id_lines) {
    if (ln.tokens.size() != 3) throw ParseError(ln.number, "'identity' wants: identity OBJECT MOR");
    int a = c.object_index(ln.tokens[1]);
    int m = c.morphism_index(ln.tokens[2]);
    if (a < 0) throw ParseError(ln.number, "unknown object '" + ln.tokens[1] + "'");
    if (m < 0) throw ParseError(ln.number, "unknown morphism '" + ln.tokens[2] + "'");
    if (c.identity[static_cast<std::size_t>(a)] >= 0)
      throw ParseError(ln.number, "duplicate identity for '" + ln.tokens[1] + "'");
    c.identity[static_cast<std::size_t>(a)] = m;
  }
  c.comp.assign(c.morphisms.size(), std::vector<int>(c.morphisms.size(), -1));
  for (const Line& ln : comp_lines) {
    if (ln.tokens.size() != 4) throw ParseError(ln.number, "'comp' wants: comp G F GF");
    int g = c.morphism_index(ln.tokens[1]);
    int f = c.morphism_index(ln.tokens[2]);
    int gf = c.morphism_index(ln.tokens[3]);
    if (g < 0) throw ParseError(ln.number, "unknown morphism '" + ln.tokens[1] + "'");
    if (f < 0) throw ParseError(ln.number, "unknown morphism '" + ln.tokens[2] + "'");
    if (gf < 0) throw ParseError(ln.number, "unknown morphism '" + ln.tokens[3] + "'");
    if (c.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] >= 0)
      throw ParseError(ln.number, "duplicate comp for (" + ln.tokens[1] + "," + ln.tokens[2] + ")");
    c.comp[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = gf;
  }
  return c;
}

inline void write_fincat_body(std::ostringstream& out, const FinCategory& c) {
  for (const auto& o : c.objects) out << "object " << o << '\n';
  for (const auto& m : c.morphisms)
    out << "mor " << m.name << ' ' << c.objects[static_cast<std::size_t>(m.src)] << ' '
        << c.objects[static_cast<std::size_t>(m.dst)] << '\n';
  for (std::size_t a = 0; a < c.objects.size(); ++a)
    out << "identity " << c.objects[a] << ' '
        << c.morphisms[static_cast<std::size_t>(c.identity[a])].name << '\n';
  for (std::size_t g = 0; g < c.morphisms.size(); ++g)
    for (std::size_t f = 0; f < c.morphisms.size(); ++f)
      if (c.comp[g][f] >= 0)
        out << "comp " << c.morphisms[g].name << ' ' << c.morphisms[f].name << ' '
            << c.morphisms[static_cast<std::size_t>(c.comp[g][f])].name << '\n';
}

inline int named_morphism(const FinCategory& c, const Line& ln, const std::string& name) {
  int m = c.morphism_index(name);
  if (m < 0) throw ParseError(ln.number, "unknown morphism '" + name + "'");
  return m;
}

inline CSetMorphism assemble_morphism(CSet dom, CSet cod, std::vector<std::vector<int>> comp) {
  CSetMorphism f;
  f.dom = std::move(dom);
  f.cod = std::move(cod);
  f.component = std::move(comp);
  return f;
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// parsing

inline Document parse_document(std::string_view text) {
  using namespace io_detail;
  auto lines = lex(text);
  Cursor cur{&lines, 0};
  if (cur.done()) throw ParseError(1, "empty document");
  {
    const Line& ln = cur.take();
    if (ln.tokens.size() != 2 || ln.tokens[0] != "format" || ln.tokens[1] != kFormatHeader)
      throw ParseError(ln.number, std::string("expected 'format ") + kFormatHeader + "' header");
  }
  if (cur.done()) throw ParseError(cur.here(), "missing 'kind' line");
  const Line& kind_line = cur.take();
  if (kind_line.tokens.size() != 2 || kind_line.tokens[0] != "kind")
    throw ParseError(kind_line.number, "expected 'kind NAME'");
  const std::string& kind = kind_line.tokens[1];

  auto rest = [&]() {
    std::vector<Line> body;
    while (!cur.done()) body.push_back(cur.take());
    return body;
  };
  auto expect_done = [&]() {
    if (!cur.done()) throw ParseError(cur.here(), "unexpected trailing content");
  };

  Document doc;
  if (kind == "schema") {
    doc.kind = DocKind::Schema;
    doc.payload = parse_cset_body(rest(), false).schema;
  } else if (kind == "cset") {
    doc.kind = DocKind::CSet;
    doc.payload = parse_cset_body(rest(), true);
  } else if (kind == "morphism") {
    doc.kind = DocKind::Morphism;
    CSet dom = parse_cset_body(take_block(cur, "dom"), true);
    CSet cod = parse_cset_body(take_block(cur, "cod"), true);
    auto comp = parse_components(rest(), dom.schema);
    doc.payload = assemble_morphism(std::move(dom), std::move(cod), std::move(comp));
  } else if (kind == "fincat") {
    doc.kind = DocKind::FinCat;
    doc.payload = parse_fincat_body(rest());
  } else if (kind == "rule") {
    doc.kind = DocKind::Rule;
    if (cur.done() || cur.peek().tokens[0] != "name" || cur.peek().tokens.size() != 2)
      throw ParseError(cur.here(), "expected 'name RULENAME'");
    std::string name = cur.take().tokens[1];
    CSet k = parse_cset_body(take_block(cur, "k"), true);
    CSet l = parse_cset_body(take_block(cur, "l"), true);
    CSet r = parse_cset_body(take_block(cur, "r"), true);
    auto lcomp = parse_components(take_block(cur, "lmap"), k.schema);
    auto rcomp = parse_components(take_block(cur, "rmap"), k.schema);
    expect_done();
    Rule rule;
    rule.name = std::move(name);
    rule.l = assemble_morphism(k, std::move(l), std::move(lcomp));
    rule.r = assemble_morphism(std::move(k), std::move(r), std::move(rcomp));
    doc.payload = std::move(rule);
  } else if (kind == "presheaf") {
    doc.kind = DocKind::Presheaf;
    auto base = std::make_shared<FinCategory>(parse_fincat_body(take_block(cur, "base")));
    Presheaf f;
    f.base = base;
    f.carrier.assign(base->objects.size(), 0);
    f.action.assign(base->morphisms.size(), {});
    std::vector<bool> have(base->objects.size(), false);
    while (!cur.done()) {
      const Line& ln = cur.take();
      if (ln.tokens[0] == "carrier") {
        if (ln.tokens.size() != 3) throw ParseError(ln.number, "'carrier' wants: carrier OBJECT SIZE");
        int a = base->object_index(ln.tokens[1]);
        if (a < 0) throw ParseError(ln.number, "unknown object '" + ln.tokens[1] + "'");
        if (have[static_cast<std::size_t>(a)])
          throw ParseError(ln.number, "duplicate carrier for '" + ln.tokens[1] + "'");
        have[static_cast<std::size_t>(a)] = true;
        f.carrier[static_cast<std::size_t>(a)] = parse_int(ln, ln.tokens[2]);
      } else if (ln.tokens[0] == "action") {
        if (ln.tokens.size() < 2) throw ParseError(ln.number, "'action' wants a morphism name");
        int m = named_morphism(*base, ln, ln.tokens[1]);
        if (base->identity[static_cast<std::size_t>(base->src(m))] == m)
          throw ParseError(ln.number, "identity actions are implicit");
        for (std::size_t i = 2; i < ln.tokens.size(); ++i)
          f.action[static_cast<std::size_t>(m)].push_back(parse_int(ln, ln.tokens[i]));
      } else {
        throw ParseError(ln.number, "unexpected '" + ln.tokens[0] + "' in a presheaf");
      }
    }
    for (std::size_t a = 0; a < base->objects.size(); ++a) {
      int id = base->identity[a];
      if (id < 0) continue;
      f.action[static_cast<std::size_t>(id)].resize(static_cast<std::size_t>(f.carrier[a]));
      for (int x = 0; x < f.carrier[a]; ++x)
        f.action[static_cast<std::size_t>(id)][static_cast<std::size_t>(x)] = x;
    }
    doc.payload = std::move(f);
  } else if (kind == "square" || kind == "cube") {
    if (cur.done() || cur.peek().tokens[0] != "base" || cur.peek().tokens.size() != 2)
      throw ParseError(cur.here(), "expected 'base cset' or 'base fincat'");
    const Line& base_line = cur.take();
    const std::string& base = base_line.tokens[1];
    if (base != "cset" && base != "fincat")
      throw ParseError(base_line.number, "unknown base '" + base + "'");
    if (kind == "square") {
      doc.kind = DocKind::Square;
      if (base == "cset") {
        CSet c = parse_cset_body(take_block(cur, "c"), true);
        CSet a = parse_cset_body(take_block(cur, "a"), true);
        CSet b = parse_cset_body(take_block(cur, "b"), true);
        CSet d = parse_cset_body(take_block(cur, "d"), true);
        Square sq;
        sq.top = assemble_morphism(c, b, parse_components(take_block(cur, "top"), c.schema));
        sq.left = assemble_morphism(c, a, parse_components(take_block(cur, "left"), c.schema));
        sq.bottom = assemble_morphism(a, d, parse_components(take_block(cur, "bottom"), a.schema));
        sq.right = assemble_morphism(b, d, parse_components(take_block(cur, "right"), b.schema));
        expect_done();
        doc.payload = std::move(sq);
      } else {
        FcSquareDoc sd;
        sd.category = parse_fincat_body(take_block(cur, "category"));
        auto side = [&](const char* which) {
          if (cur.done() || cur.peek().tokens[0] != which || cur.peek().tokens.size() != 2)
            throw ParseError(cur.here(), std::string("expected '") + which + " MOR'");
          const Line& ln = cur.take();
          return named_morphism(sd.category, ln, ln.tokens[1]);
        };
        sd.square.top = side("top");
        sd.square.left = side("left");
        sd.square.bottom = side("bottom");
        sd.square.right = side("right");
        expect_done();
        doc.payload = std::move(sd);
      }
    } else {
      doc.kind = DocKind::Cube;
      if (base == "cset") {
        CSet c1 = parse_cset_body(take_block(cur, "c1"), true);
        CSet a1 = parse_cset_body(take_block(cur, "a1"), true);
        CSet b1 = parse_cset_body(take_block(cur, "b1"), true);
        CSet d1 = parse_cset_body(take_block(cur, "d1"), true);
        CSet c0 = parse_cset_body(take_block(cur, "c0"), true);
        CSet a0 = parse_cset_body(take_block(cur, "a0"), true);
        CSet b0 = parse_cset_body(take_block(cur, "b0"), true);
        CSet d0 = parse_cset_body(take_block(cur, "d0"), true);
        Cube cube;
        auto mor = [&](const char* blk, const CSet& dom, const CSet& cod) {
          return assemble_morphism(dom, cod, parse_components(take_block(cur, blk), dom.schema));
        };
        cube.top = Square{mor("ttop", c1, b1), mor("tleft", c1, a1), mor("tbottom", a1, d1),
                          mor("tright", b1, d1)};
        cube.bottom = Square{mor("btop", c0, b0), mor("bleft", c0, a0), mor("bbottom", a0, d0),
                             mor("bright", b0, d0)};
        cube.vc = mor("vc", c1, c0);
        cube.va = mor("va", a1, a0);
        cube.vb = mor("vb", b1, b0);
        cube.vd = mor("vd", d1, d0);
        expect_done();
        doc.payload = std::move(cube);
      } else {
        FcCubeDoc cd;
        cd.category = parse_fincat_body(take_block(cur, "category"));
        auto quad = [&](const char* which) {
          if (cur.done() || cur.peek().tokens[0] != which || cur.peek().tokens.size() != 5)
            throw ParseError(cur.here(), std::string("expected '") + which + " TOP LEFT BOTTOM RIGHT'");
          const Line& ln = cur.take();
          FcSquare sq;
          sq.top = named_morphism(cd.category, ln, ln.tokens[1]);
          sq.left = named_morphism(cd.category, ln, ln.tokens[2]);
          sq.bottom = named_morphism(cd.category, ln, ln.tokens[3]);
          sq.right = named_morphism(cd.category, ln, ln.tokens[4]);
          return sq;
        };
        cd.cube.top = quad("top");
        cd.cube.bottom = quad("bottom");
        if (cur.done() || cur.peek().tokens[0] != "verticals" || cur.peek().tokens.size() != 5)
          throw ParseError(cur.here(), "expected 'verticals C A B D'");
        const Line& ln = cur.take();
        cd.cube.vc = named_morphism(cd.category, ln, ln.tokens[1]);
        cd.cube.va = named_morphism(cd.category, ln, ln.tokens[2]);
        cd.cube.vb = named_morphism(cd.category, ln, ln.tokens[3]);
        cd.cube.vd = named_morphism(cd.category, ln, ln.tokens[4]);
        expect_done();
        doc.payload = std::move(cd);
      }
    }
  } else {
    throw ParseError(kind_line.number, "unknown document kind '" + kind + "'");
  }
  return doc;
}

// ---------------------------------------------------------------------------
// serialization

inline std::string serialize(const Document& doc) {
  using namespace io_detail;
  std::ostringstream out;
  out << "format " << kFormatHeader << '\n';
  out << "kind " << to_string(doc.kind) << '\n';

  auto block = [&](const char* name, const auto& writer) {
    out << "begin " << name << '\n';
    writer();
    out << "end\n";
  };
  auto cset_block = [&](const char* name, const CSet& x) {
    block(name, [&] { write_cset_body(out, x, true); });
  };
  auto comp_block = [&](const char* name, const CSetMorphism& f) {
    block(name, [&] { write_components(out, f); });
  };

  switch (doc.kind) {
    case DocKind::Schema: {
      const auto& s = std::get<Schema>(doc.payload);
      CSet shell = CSet::empty(s);
      write_cset_body(out, shell, false);
      break;
    }
    case DocKind::CSet:
      write_cset_body(out, std::get<CSet>(doc.payload), true);
      break;
    case DocKind::Morphism: {
      const auto& f = std::get<CSetMorphism>(doc.payload);
      cset_block("dom", f.dom);
      cset_block("cod", f.cod);
      write_components(out, f);
      break;
    }
    case DocKind::FinCat:
      write_fincat_body(out, std::get<FinCategory>(doc.payload));
      break;
    case DocKind::Rule: {
      const auto& r = std::get<Rule>(doc.payload);
      out << "name " << r.name << '\n';
      cset_block("k", r.k());
      cset_block("l", r.lhs());
      cset_block("r", r.rhs());
      comp_block("lmap", r.l);
      comp_block("rmap", r.r);
      break;
    }
    case DocKind::Presheaf: {
      const auto& f = std::get<Presheaf>(doc.payload);
      const FinCategory& c = *f.base;
      block("base", [&] { write_fincat_body(out, c); });
      for (std::size_t a = 0; a < c.objects.size(); ++a)
        out << "carrier " << c.objects[a] << ' ' << f.carrier[a] << '\n';
      for (std::size_t m = 0; m < c.morphisms.size(); ++m) {
        if (c.identity[static_cast<std::size_t>(c.src(static_cast<int>(m)))] == static_cast<int>(m))
          continue;
        out << "action " << c.morphisms[m].name;
        for (int v : f.action[m]) out << ' ' << v;
        out << '\n';
      }
      break;
    }
    case DocKind::Square: {
      if (std::holds_alternative<Square>(doc.payload)) {
        const auto& sq = std::get<Square>(doc.payload);
        out << "base cset\n";
        cset_block("c", sq.c());
        cset_block("a", sq.a());
        cset_block("b", sq.b());
        cset_block("d", sq.d());
        comp_block("top", sq.top);
        comp_block("left", sq.left);
        comp_block("bottom", sq.bottom);
        comp_block("right", sq.right);
      } else {
        const auto& sd = std::get<FcSquareDoc>(doc.payload);
        out << "base fincat\n";
        block("category", [&] { write_fincat_body(out, sd.category); });
        auto nm = [&](int m) { return sd.category.morphisms[static_cast<std::size_t>(m)].name; };
        out << "top " << nm(sd.square.top) << '\n';
        out << "left " << nm(sd.square.left) << '\n';
        out << "bottom " << nm(sd.square.bottom) << '\n';
        out << "right " << nm(sd.square.right) << '\n';
      }
      break;
    }
    case DocKind::Cube: {
      if (std::holds_alternative<Cube>(doc.payload)) {
        const auto& cube = std::get<Cube>(doc.payload);
        out << "base cset\n";
        cset_block("c1", cube.top.c());
        cset_block("a1", cube.top.a());
        cset_block("b1", cube.top.b());
        cset_block("d1", cube.top.d());
        cset_block("c0", cube.bottom.c());
        cset_block("a0", cube.bottom.a());
        cset_block("b0", cube.bottom.b());
        cset_block("d0", cube.bottom.d());
        comp_block("ttop", cube.top.top);
        comp_block("tleft", cube.top.left);
        comp_block("tbottom", cube.top.bottom);
        comp_block("tright", cube.top.right);
        comp_block("btop", cube.bottom.top);
        comp_block("bleft", cube.bottom.left);
        comp_block("bbottom", cube.bottom.bottom);
        comp_block("bright", cube.bottom.right);
        comp_block("vc", cube.vc);
        comp_block("va", cube.va);
        comp_block("vb", cube.vb);
        comp_block("vd", cube.vd);
      } else {
        const auto& cd = std::get<FcCubeDoc>(doc.payload);
        out << "base fincat\n";
        block("category", [&] { write_fincat_body(out, cd.category); });
        auto nm = [&](int m) { return cd.category.morphisms[static_cast<std::size_t>(m)].name; };
        auto quad = [&](const char* which, const FcSquare& sq) {
          out << which << ' ' << nm(sq.top) << ' ' << nm(sq.left) << ' ' << nm(sq.bottom) << ' '
              << nm(sq.right) << '\n';
        };
        quad("top", cd.cube.top);
        quad("bottom", cd.cube.bottom);
        out << "verticals " << nm(cd.cube.vc) << ' ' << nm(cd.cube.va) << ' ' << nm(cd.cube.vb)
            << ' ' << nm(cd.cube.vd) << '\n';
      }
      break;
    }
  }
  return out.str();
}

// convenience wrappers

inline Document make_document(Schema s) { return {DocKind::Schema, std::move(s)}; }
inline Document make_document(CSet x) { return {DocKind::CSet, std::move(x)}; }
inline Document make_document(CSetMorphism f) { return {DocKind::Morphism, std::move(f)}; }
inline Document make_document(FinCategory c) { return {DocKind::FinCat, std::move(c)}; }
inline Document make_document(Rule r) { return {DocKind::Rule, std::move(r)}; }
inline Document make_document(Presheaf f) { return {DocKind::Presheaf, std::move(f)}; }
inline Document make_document(Square sq) { return {DocKind::Square, std::move(sq)}; }
inline Document make_document(FcSquareDoc sd) { return {DocKind::Square, std::move(sd)}; }
inline Document make_document(Cube c) { return {DocKind::Cube, std::move(c)}; }
inline Document make_document(FcCubeDoc cd) { return {DocKind::Cube, std::move(cd)}; }

}  // namespace adhesive
