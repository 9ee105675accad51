#include "sct/decide.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace sct {

SizeChangeGraph compose(const SizeChangeGraph& g1, const SizeChangeGraph& g2) {
  if (g1.target != g2.source)
    throw ValidationError("compose: " + g1.id + " ends at " + g1.target +
                          " but " + g2.id + " starts at " + g2.source);
  std::map<std::string, std::vector<const Arc*>> by_src;
  for (const Arc& a2 : g2.arcs) by_src[a2.src].push_back(&a2);

  std::vector<Arc> arcs;
  for (const Arc& a1 : g1.arcs) {
    auto it = by_src.find(a1.dst);
    if (it == by_src.end()) continue;
    for (const Arc* a2 : it->second) {
      Label l = (a1.label == Label::Strict || a2->label == Label::Strict)
                    ? Label::Strict
                    : Label::NonStrict;
      arcs.push_back({a1.src, a2->dst, l});
    }
  }
  SizeChangeGraph g;
  g.id = g1.id + ";" + g2.id;
  g.source = g1.source;
  g.target = g2.target;
  g.arcs = merge_arcs(std::move(arcs));
  return g;
}

namespace {

std::string element_key(const std::string& source, const std::string& target,
                        const std::vector<Arc>& arcs) {
  std::ostringstream os;
  os << source << "\x1e" << target;
  for (const Arc& a : arcs)
    os << "\x1e" << a.src << "\x1f" << a.dst << "\x1f"
       << (a.label == Label::Strict ? ">" : ">=");
  return os.str();
}

SizeChangeGraph to_graph(const ClosureElement& e) {
  SizeChangeGraph g;
  g.source = e.source;
  g.target = e.target;
  g.arcs = e.arcs;
  return g;
}

}  // namespace

std::vector<ClosureElement> closure(const Acg& a, const ClosureOptions& opts) {
  std::vector<ClosureElement> elems;
  std::map<std::string, int> index;
  std::deque<int> work;

  auto add = [&](ClosureElement e) {
    std::string key = element_key(e.source, e.target, e.arcs);
    if (index.count(key)) return;
    if (elems.size() >= opts.max_elements)
      throw ResourceError("closure exceeds " + std::to_string(opts.max_elements) +
                          " elements");
    index[key] = static_cast<int>(elems.size());
    work.push_back(static_cast<int>(elems.size()));
    elems.push_back(std::move(e));
  };

  for (const SizeChangeGraph& g : a.graphs)
    add({g.source, g.target, g.arcs, {g.id}});

  while (!work.empty()) {
    int i = work.front();
    work.pop_front();
    // Snapshot: elements appended during this pass pair up when popped later.
    std::size_t count = elems.size();
    for (std::size_t j = 0; j < count; ++j) {
      if (elems[i].target == elems[j].source) {
        SizeChangeGraph c = compose(to_graph(elems[i]), to_graph(elems[j]));
        std::vector<std::string> path = elems[i].witness_path;
        path.insert(path.end(), elems[j].witness_path.begin(),
                    elems[j].witness_path.end());
        add({c.source, c.target, std::move(c.arcs), std::move(path)});
      }
      if (j != static_cast<std::size_t>(i) && elems[j].target == elems[i].source) {
        SizeChangeGraph c = compose(to_graph(elems[j]), to_graph(elems[i]));
        std::vector<std::string> path = elems[j].witness_path;
        path.insert(path.end(), elems[i].witness_path.begin(),
                    elems[i].witness_path.end());
        add({c.source, c.target, std::move(c.arcs), std::move(path)});
      }
    }
  }
  return elems;
}

namespace {

bool has_strict_self_arc(const ClosureElement& e) {
  for (const Arc& a : e.arcs)
    if (a.src == a.dst && a.label == Label::Strict) return true;
  return false;
}

bool is_idempotent(const ClosureElement& e) {
  SizeChangeGraph g = to_graph(e);
  return compose(g, g).arcs == e.arcs;
}

// Some strict arc lies on a cycle of e's variable digraph. Iterating e
// forever then yields a thread with infinitely many strict arcs; absence of
// such a cycle makes e a non-termination witness. On idempotent graphs this
// coincides with having a strict self-arc.
bool has_strict_cycle(const ClosureElement& e) {
  std::map<std::string, std::vector<std::string>> succ;
  for (const Arc& a : e.arcs) succ[a.src].push_back(a.dst);
  auto reaches = [&](const std::string& from, const std::string& to) {
    std::vector<std::string> stack = {from};
    std::set<std::string> seen = {from};
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (const std::string& w : succ[v])
        if (seen.insert(w).second) stack.push_back(w);
    }
    return false;
  };
  for (const Arc& a : e.arcs)
    if (a.label == Label::Strict && reaches(a.dst, a.src)) return true;
  return false;
}

}  // namespace

Verdict decide_sct(const Acg& a, DecideVariant variant, const ClosureOptions& opts) {
  std::vector<ClosureElement> elems = closure(a, opts);
  for (const ClosureElement& e : elems) {
    if (e.source != e.target) continue;
    if (variant == DecideVariant::IdempotentOnly) {
      if (is_idempotent(e) && !has_strict_self_arc(e)) return {false, e};
    } else {
      if (!has_strict_cycle(e)) return {false, e};
    }
  }
  return {true, std::nullopt};
}

}  // namespace sct
