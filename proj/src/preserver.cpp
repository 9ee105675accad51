#include "sct/preserver.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace sct {

bool is_thread_preserver(const Acg& a, const VariableSet& p) {
  for (const auto& [fp, var] : p) {
    const FlowPoint* f = a.find_flowpoint(fp);
    if (!f || std::find(f->vars.begin(), f->vars.end(), var) == f->vars.end())
      throw ValidationError("thread preserver names unknown variable " + fp +
                            "." + var);
  }
  for (const SizeChangeGraph& g : a.graphs) {
    for (const std::string& x : a.flowpoint(g.source).vars) {
      if (!p.count({g.source, x})) continue;
      bool carried = false;
      for (const Arc& arc : g.arcs)
        if (arc.src == x && p.count({g.target, arc.dst})) {
          carried = true;
          break;
        }
      if (!carried) return false;
    }
  }
  return true;
}

VariableSet compute_mtp(const Acg& a) {
  VariableSet alive;
  for (const FlowPoint& f : a.flowpoints)
    for (const std::string& v : f.vars) alive.insert({f.name, v});

  // count[(graph index, x)] = surviving targets of x's arcs in that graph
  std::map<std::pair<int, std::string>, int> count;
  // arcs into (g.target, y), grouped for decrement on deletion
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<int, std::string>>>
      into;
  std::deque<std::pair<std::string, std::string>> dead;
  auto kill = [&](const std::string& fp, const std::string& var) {
    if (alive.erase({fp, var})) dead.push_back({fp, var});
  };

  for (int gi = 0; gi < static_cast<int>(a.graphs.size()); ++gi) {
    const SizeChangeGraph& g = a.graphs[gi];
    for (const std::string& x : a.flowpoint(g.source).vars) count[{gi, x}] = 0;
    for (const Arc& arc : g.arcs) {
      ++count[{gi, arc.src}];
      into[{g.target, arc.dst}].push_back({gi, arc.src});
    }
    for (const std::string& x : a.flowpoint(g.source).vars)
      if (count[{gi, x}] == 0) kill(g.source, x);
  }

  while (!dead.empty()) {
    auto [fp, var] = dead.front();
    dead.pop_front();
    for (const auto& [gi, x] : into[{fp, var}]) {
      if (--count[{gi, x}] == 0) kill(a.graphs[gi].source, x);
    }
  }
  return alive;
}

namespace {

RankingDoc extremal_ranking(const Acg& a, Mode mode) {
  Classification c = classify(a);
  bool fan_ok = mode == Mode::Min ? c.fan_out_free : c.fan_in_free;
  if (!c.strict || !fan_ok)
    throw ClassError(std::string("instance is not strict and ") +
                     (mode == Mode::Min ? "fan-out" : "fan-in") + " free");
  if (!c.strongly_connected)
    throw ClassError("instance is not strongly connected");

  VariableSet p = mode == Mode::Min ? compute_mtp(a) : compute_mtp(transpose(a));
  RankingDoc doc;
  doc.instance = a.name;
  doc.mode = mode;
  for (const FlowPoint& f : a.flowpoints) {
    std::vector<std::string> vs;
    for (const std::string& v : f.vars)
      if (p.count({f.name, v})) vs.push_back(v);
    if (vs.empty())
      throw ClassError("no thread preserver covers " + f.name +
                       "; the instance does not terminate");
    DocTuple t;
    t.entries.push_back(mode == Mode::Min ? DocEntry::minval(std::move(vs))
                                          : DocEntry::maxval(std::move(vs)));
    doc.rows.emplace_back(f.name, std::vector<DocTuple>{std::move(t)});
  }
  return doc;
}

}  // namespace

RankingDoc strict_min_ranking(const Acg& a) { return extremal_ranking(a, Mode::Min); }

RankingDoc strict_max_ranking(const Acg& a) { return extremal_ranking(a, Mode::Max); }

}  // namespace sct
