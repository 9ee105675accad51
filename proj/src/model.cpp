#include "sct/model.hpp"

#include "lex.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace sct {

namespace {

const std::set<std::string> kReserved = {
    "instance", "flowpoint", "vars", "initial", "graph", "end",
    "ranking", "mode", "min", "max"};

}  // namespace

bool is_reserved_word(const std::string& s) { return kReserved.count(s) > 0; }

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::vector<Arc> merge_arcs(std::vector<Arc> arcs) {
  std::sort(arcs.begin(), arcs.end());
  std::vector<Arc> out;
  for (const Arc& a : arcs) {
    if (!out.empty() && out.back().src == a.src && out.back().dst == a.dst) {
      if (a.label == Label::Strict) out.back().label = Label::Strict;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

const FlowPoint* Acg::find_flowpoint(const std::string& fp_name) const {
  for (const FlowPoint& f : flowpoints)
    if (f.name == fp_name) return &f;
  return nullptr;
}

const FlowPoint& Acg::flowpoint(const std::string& fp_name) const {
  const FlowPoint* f = find_flowpoint(fp_name);
  if (!f) throw ValidationError("unknown flow point: " + fp_name);
  return *f;
}

int Acg::var_count() const {
  return flowpoints.empty() ? 0 : static_cast<int>(flowpoints.front().vars.size());
}

void validate(const Acg& a) {
  if (!is_identifier(a.name) || is_reserved_word(a.name))
    throw ValidationError("invalid instance name: " + a.name);
  if (a.flowpoints.empty()) throw ValidationError("instance has no flow points");

  std::set<std::string> fp_names;
  std::size_t n = a.flowpoints.front().vars.size();
  for (const FlowPoint& f : a.flowpoints) {
    if (!is_identifier(f.name) || is_reserved_word(f.name))
      throw ValidationError("invalid flow point name: " + f.name);
    if (!fp_names.insert(f.name).second)
      throw ValidationError("duplicate flow point name: " + f.name);
    if (f.vars.empty()) throw ValidationError("flow point " + f.name + " has no variables");
    if (f.vars.size() != n)
      throw ValidationError("unequal variable counts across flow points (" +
                            f.name + " has " + std::to_string(f.vars.size()) +
                            ", expected " + std::to_string(n) + ")");
    std::set<std::string> seen;
    for (const std::string& v : f.vars) {
      if (!is_identifier(v) || is_reserved_word(v))
        throw ValidationError("invalid variable name: " + v);
      if (!seen.insert(v).second)
        throw ValidationError("duplicate variable " + v + " at " + f.name);
    }
  }

  if (!fp_names.count(a.initial))
    throw ValidationError("initial names unknown flow point: " + a.initial);

  std::set<std::string> graph_ids;
  for (const SizeChangeGraph& g : a.graphs) {
    if (!is_identifier(g.id) || is_reserved_word(g.id))
      throw ValidationError("invalid graph id: " + g.id);
    if (!graph_ids.insert(g.id).second)
      throw ValidationError("duplicate graph id: " + g.id);
    const FlowPoint& src = a.flowpoint(g.source);
    const FlowPoint& tgt = a.flowpoint(g.target);
    std::set<std::string> pairs;
    for (const Arc& arc : g.arcs) {
      if (std::find(src.vars.begin(), src.vars.end(), arc.src) == src.vars.end())
        throw ValidationError("graph " + g.id + ": unknown variable " + arc.src +
                              " at " + g.source);
      if (std::find(tgt.vars.begin(), tgt.vars.end(), arc.dst) == tgt.vars.end())
        throw ValidationError("graph " + g.id + ": unknown variable " + arc.dst +
                              " at " + g.target);
      if (!pairs.insert(arc.src + "\x1f" + arc.dst).second)
        throw ValidationError("graph " + g.id + ": duplicate arc " + arc.src +
                              " -> " + arc.dst);
    }
  }

  // Every flow point reachable from the initial one over CFG edges.
  std::set<std::string> reached = {a.initial};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const SizeChangeGraph& g : a.graphs)
      if (reached.count(g.source) && reached.insert(g.target).second) grew = true;
  }
  for (const FlowPoint& f : a.flowpoints)
    if (!reached.count(f.name))
      throw ValidationError("flow point " + f.name + " unreachable from " + a.initial);
}

// ---------------------------------------------------------------------------
// Parsing

using lex::Token;
using lex::expect_name;
using lex::fail;
using lex::tokenize_lines;

Acg parse_instance(const std::string& text) {
  std::vector<std::vector<Token>> lines = tokenize_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input");

  std::size_t li = 0;
  Acg a;

  {
    const std::vector<Token>& l = lines[li];
    if (l[0].text != "instance") fail(l[0], "expected 'instance'");
    if (l.size() != 2) fail(l.back(), "expected 'instance NAME'");
    expect_name(l[1]);
    a.name = l[1].text;
    ++li;
  }

  while (li < lines.size() && lines[li][0].text == "flowpoint") {
    const std::vector<Token>& l = lines[li];
    if (l.size() < 4 || l[2].text != "vars")
      fail(l[l.size() > 1 ? 1 : 0], "expected 'flowpoint NAME vars NAME+'");
    expect_name(l[1]);
    FlowPoint fp;
    fp.name = l[1].text;
    for (std::size_t k = 3; k < l.size(); ++k) {
      expect_name(l[k]);
      fp.vars.push_back(l[k].text);
    }
    a.flowpoints.push_back(std::move(fp));
    ++li;
  }
  if (a.flowpoints.empty()) {
    const Token& t = li < lines.size() ? lines[li][0] : lines.back().back();
    fail(t, "expected at least one 'flowpoint' declaration");
  }

  a.initial = a.flowpoints.front().name;
  if (li < lines.size() && lines[li][0].text == "initial") {
    const std::vector<Token>& l = lines[li];
    if (l.size() != 2) fail(l[0], "expected 'initial NAME'");
    expect_name(l[1]);
    a.initial = l[1].text;
    ++li;
  }

  while (li < lines.size()) {
    const std::vector<Token>& header = lines[li];
    if (header[0].text != "graph") fail(header[0], "expected 'graph'");
    if (header.size() != 6 || header[2].text != ":" || header[4].text != "->")
      fail(header[0], "expected 'graph NAME : NAME -> NAME'");
    expect_name(header[1]);
    expect_name(header[3]);
    expect_name(header[5]);
    SizeChangeGraph g;
    g.id = header[1].text;
    g.source = header[3].text;
    g.target = header[5].text;
    ++li;
    bool closed = false;
    std::vector<Arc> arcs;
    while (li < lines.size()) {
      const std::vector<Token>& l = lines[li];
      if (l[0].text == "end") {
        if (l.size() != 1) fail(l[1], "unexpected token after 'end'");
        closed = true;
        ++li;
        break;
      }
      if (l.size() != 3 || (l[1].text != ">" && l[1].text != ">="))
        fail(l[0], "expected 'NAME > NAME' or 'NAME >= NAME'");
      expect_name(l[0]);
      expect_name(l[2]);
      arcs.push_back({l[0].text, l[2].text,
                      l[1].text == ">" ? Label::Strict : Label::NonStrict});
      ++li;
    }
    if (!closed) {
      const Token& t = lines.back().back();
      throw ParseError(t.line, t.column, "graph " + g.id + " not closed with 'end'");
    }
    g.arcs = merge_arcs(std::move(arcs));
    a.graphs.push_back(std::move(g));
  }
  if (a.graphs.empty()) {
    const Token& t = lines.back().back();
    throw ParseError(t.line, t.column, "expected at least one 'graph' block");
  }

  validate(a);
  return a;
}

std::string serialize_instance(const Acg& a) {
  std::ostringstream os;
  os << "instance " << a.name << "\n";
  for (const FlowPoint& f : a.flowpoints) {
    os << "flowpoint " << f.name << " vars";
    for (const std::string& v : f.vars) os << " " << v;
    os << "\n";
  }
  os << "initial " << a.initial << "\n";
  for (const SizeChangeGraph& g : a.graphs) {
    os << "graph " << g.id << " : " << g.source << " -> " << g.target << "\n";
    std::vector<Arc> arcs = g.arcs;
    std::sort(arcs.begin(), arcs.end());
    for (const Arc& arc : arcs)
      os << "  " << arc.src << (arc.label == Label::Strict ? " > " : " >= ")
         << arc.dst << "\n";
    os << "end\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Classification and transposition

namespace {

// Tarjan over flow points with edges given by the graphs' (source, target)
// pairs. Components are emitted sinks-first (reverse topological order).
struct Tarjan {
  const Acg& a;
  std::map<std::string, std::vector<std::string>> succ;
  std::map<std::string, int> index, low;
  std::vector<std::string> stack;
  std::set<std::string> on_stack;
  int counter = 0;
  std::vector<std::vector<std::string>> sccs;

  explicit Tarjan(const Acg& acg) : a(acg) {
    for (const FlowPoint& f : a.flowpoints) succ[f.name];
    for (const SizeChangeGraph& g : a.graphs) succ[g.source].push_back(g.target);
    for (const FlowPoint& f : a.flowpoints)
      if (!index.count(f.name)) visit(f.name);
  }

  void visit(const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const std::string& w : succ[v]) {
      if (!index.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> comp;
      while (true) {
        std::string w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp.push_back(w);
        if (w == v) break;
      }
      std::sort(comp.begin(), comp.end());
      sccs.push_back(std::move(comp));
    }
  }
};

}  // namespace

std::vector<std::vector<std::string>> cfg_sccs(const Acg& a) {
  return Tarjan(a).sccs;
}

Classification classify(const Acg& a) {
  Classification c{true, true, true, false};
  for (const SizeChangeGraph& g : a.graphs) {
    std::map<std::string, int> out_deg, in_deg;
    for (const Arc& arc : g.arcs) {
      if (++out_deg[arc.src] > 1) c.fan_out_free = false;
      if (++in_deg[arc.dst] > 1) c.fan_in_free = false;
      if (arc.label != Label::Strict) c.strict = false;
    }
  }
  c.strongly_connected = cfg_sccs(a).size() == 1;
  return c;
}

Acg transpose(const Acg& a) {
  Acg t = a;
  for (SizeChangeGraph& g : t.graphs) {
    std::swap(g.source, g.target);
    std::vector<Arc> arcs;
    arcs.reserve(g.arcs.size());
    for (const Arc& arc : g.arcs) arcs.push_back({arc.dst, arc.src, arc.label});
    g.arcs = merge_arcs(std::move(arcs));
  }
  return t;
}

}  // namespace sct
