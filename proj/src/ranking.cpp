#include "sct/ranking.hpp"

#include "lex.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

namespace sct {

namespace {

std::vector<std::string> sorted(std::vector<std::string> vs) {
  std::sort(vs.begin(), vs.end());
  return vs;
}

std::vector<std::string> sorted_unique(std::vector<std::string> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace

DocEntry DocEntry::set(std::vector<std::string> vs) {
  if (vs.empty()) throw ValidationError("empty set entry");
  return {EntryKind::Set, 0, sorted(std::move(vs))};
}

DocEntry DocEntry::maxval(std::vector<std::string> vs) {
  if (vs.empty()) throw ValidationError("empty max entry");
  return {EntryKind::MaxVal, 0, sorted_unique(std::move(vs))};
}

DocEntry DocEntry::minval(std::vector<std::string> vs) {
  if (vs.empty()) throw ValidationError("empty min entry");
  return {EntryKind::MinVal, 0, sorted_unique(std::move(vs))};
}

const std::vector<DocTuple>* RankingDoc::find_row(const std::string& flowpoint) const {
  for (const auto& [name, tuples] : rows)
    if (name == flowpoint) return &tuples;
  return nullptr;
}

namespace {

int kind_rank(EntryKind k) {
  switch (k) {
    case EntryKind::Const: return 0;
    case EntryKind::Set: return 1;
    case EntryKind::MaxVal: return 2;
    case EntryKind::MinVal: return 3;
  }
  return 4;
}

bool entry_less(const DocEntry& a, const DocEntry& b) {
  return std::tuple(kind_rank(a.kind), a.value, a.vars) <
         std::tuple(kind_rank(b.kind), b.value, b.vars);
}

}  // namespace

bool tuple_less(const DocTuple& a, const DocTuple& b) {
  return std::lexicographical_compare(a.entries.begin(), a.entries.end(),
                                      b.entries.begin(), b.entries.end(),
                                      entry_less);
}

void canonicalize(RankingDoc& doc) {
  for (auto& [name, tuples] : doc.rows) {
    std::sort(tuples.begin(), tuples.end(), tuple_less);
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using lex::Token;

bool is_int(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Cursor over one line's tokens.
struct Cursor {
  const std::vector<Token>& toks;
  std::size_t i = 0;

  bool done() const { return i >= toks.size(); }
  const Token& peek() const {
    if (done()) lex::fail(toks.back(), "unexpected end of line");
    return toks[i];
  }
  const Token& take() {
    const Token& t = peek();
    ++i;
    return t;
  }
  const Token& expect(const std::string& text) {
    const Token& t = take();
    if (t.text != text) lex::fail(t, "expected '" + text + "'");
    return t;
  }
};

std::vector<std::string> parse_braced_names(Cursor& c) {
  c.expect("{");
  std::vector<std::string> vs;
  while (true) {
    const Token& t = c.take();
    lex::expect_name(t);
    vs.push_back(t.text);
    const Token& sep = c.take();
    if (sep.text == "}") break;
    if (sep.text != ",") lex::fail(sep, "expected ',' or '}'");
  }
  return vs;
}

DocEntry parse_entry(Cursor& c) {
  const Token& t = c.peek();
  if (is_int(t.text)) {
    c.take();
    return DocEntry::constant(std::stoll(t.text));
  }
  if (t.text == "{") return DocEntry::set(parse_braced_names(c));
  if (t.text == "max" || t.text == "min") {
    bool is_max = t.text == "max";
    c.take();
    std::vector<std::string> vs = parse_braced_names(c);
    return is_max ? DocEntry::maxval(std::move(vs)) : DocEntry::minval(std::move(vs));
  }
  c.take();
  lex::expect_name(t);
  return DocEntry::set({t.text});
}

DocTuple parse_tuple(Cursor& c) {
  c.expect("<");
  DocTuple tup;
  while (true) {
    tup.entries.push_back(parse_entry(c));
    const Token& sep = c.take();
    if (sep.text == ">") break;
    if (sep.text != ",") lex::fail(sep, "expected ',' or '>'");
  }
  return tup;
}

}  // namespace

RankingDoc parse_ranking(const std::string& text) {
  std::vector<std::vector<Token>> lines = lex::tokenize_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input");

  RankingDoc doc;
  {
    const std::vector<Token>& l = lines[0];
    if (l[0].text != "ranking") lex::fail(l[0], "expected 'ranking'");
    if (l.size() != 4 || l[2].text != "mode")
      lex::fail(l[0], "expected 'ranking NAME mode min|max'");
    lex::expect_name(l[1]);
    doc.instance = l[1].text;
    if (l[3].text == "min")
      doc.mode = Mode::Min;
    else if (l[3].text == "max")
      doc.mode = Mode::Max;
    else
      lex::fail(l[3], "expected 'min' or 'max'");
  }

  std::set<std::string> seen;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    Cursor c{lines[li]};
    const Token& name = c.take();
    lex::expect_name(name);
    if (!seen.insert(name.text).second)
      throw ValidationError("duplicate row for flow point " + name.text);
    c.expect(":");
    c.expect("{");
    std::vector<DocTuple> tuples;
    while (true) {
      tuples.push_back(parse_tuple(c));
      const Token& sep = c.take();
      if (sep.text == "}") break;
      if (sep.text != ",") lex::fail(sep, "expected ',' or '}'");
    }
    if (!c.done()) lex::fail(c.peek(), "unexpected token after row");
    doc.rows.emplace_back(name.text, std::move(tuples));
  }
  if (doc.rows.empty()) throw ParseError(1, 1, "ranking document has no rows");
  return doc;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void render_entry(std::ostringstream& os, const DocEntry& e) {
  switch (e.kind) {
    case EntryKind::Const:
      os << e.value;
      return;
    case EntryKind::Set:
      if (e.vars.size() == 1) {
        os << e.vars[0];
      } else {
        os << "{";
        for (std::size_t i = 0; i < e.vars.size(); ++i)
          os << (i ? "," : "") << e.vars[i];
        os << "}";
      }
      return;
    case EntryKind::MaxVal:
    case EntryKind::MinVal:
      os << (e.kind == EntryKind::MaxVal ? "max{" : "min{");
      for (std::size_t i = 0; i < e.vars.size(); ++i)
        os << (i ? "," : "") << e.vars[i];
      os << "}";
      return;
  }
}

}  // namespace

std::string serialize_ranking(const RankingDoc& doc) {
  std::ostringstream os;
  os << "ranking " << doc.instance << " mode "
     << (doc.mode == Mode::Min ? "min" : "max") << "\n";
  for (const auto& [name, tuples] : doc.rows) {
    os << name << " : { ";
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      if (t) os << ", ";
      os << "<";
      for (std::size_t e = 0; e < tuples[t].entries.size(); ++e) {
        if (e) os << ",";
        render_entry(os, tuples[t].entries[e]);
      }
      os << ">";
    }
    os << " }\n";
  }
  return os.str();
}

}  // namespace sct
