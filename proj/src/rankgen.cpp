#include "sct/rankgen.hpp"

#include "sct/decide.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace sct {

std::string RankVector::encode() const {
  std::ostringstream os;
  os << flowpoint;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    os << "|{";
    for (std::size_t j = 0; j < sets[i].size(); ++j)
      os << (j ? "," : "") << sets[i][j];
    os << "}:" << nums[i];
  }
  return os.str();
}

std::vector<std::string> image(const std::vector<std::string>& s,
                               const SizeChangeGraph& g) {
  std::set<std::string> out;
  for (const Arc& a : g.arcs)
    if (std::find(s.begin(), s.end(), a.src) != s.end()) out.insert(a.dst);
  return {out.begin(), out.end()};
}

PositionAnalysis analyze_positions(const RankVector& v, const SizeChangeGraph& g) {
  if (v.flowpoint != g.source)
    throw ValidationError("vector at " + v.flowpoint + " analyzed against graph from " +
                          g.source);
  PositionAnalysis pa;
  std::set<std::string> used;
  for (std::size_t i = 0; i < v.sets.size(); ++i) {
    std::vector<std::string> im;
    for (const std::string& y : image(v.sets[i], g))
      if (!used.count(y)) im.push_back(y);
    used.insert(im.begin(), im.end());

    bool desc = im.size() < v.sets[i].size();
    if (!desc && im.size() == v.sets[i].size()) {
      std::set<std::string> im_set(im.begin(), im.end());
      for (const Arc& a : g.arcs)
        if (a.label == Label::Strict && im_set.count(a.dst) &&
            std::find(v.sets[i].begin(), v.sets[i].end(), a.src) != v.sets[i].end()) {
          desc = true;
          break;
        }
    }
    pa.images.push_back(std::move(im));
    pa.descending.push_back(desc);
    if (desc && !pa.first_descending) pa.first_descending = static_cast<int>(i);
  }
  return pa;
}

std::optional<RankVector> next_vector(const RankVector& v, const SizeChangeGraph& g,
                                      const std::vector<std::string>& target_vars) {
  PositionAnalysis pa = analyze_positions(v, g);
  RankVector r;
  r.flowpoint = g.target;
  r.bound = v.bound;

  auto leftover = [&](std::size_t upto) {
    // target variables not used by images[0..upto)
    std::set<std::string> used;
    for (std::size_t i = 0; i < upto; ++i)
      used.insert(pa.images[i].begin(), pa.images[i].end());
    std::vector<std::string> s;
    for (const std::string& y : target_vars)
      if (!used.count(y)) s.push_back(y);
    std::sort(s.begin(), s.end());
    return s;
  };

  if (pa.first_descending) {
    std::size_t i = static_cast<std::size_t>(*pa.first_descending);
    if (!pa.images[i].empty()) {
      // keep images up to i, reset its counter, append the leftovers
      for (std::size_t j = 0; j <= i; ++j) {
        r.sets.push_back(pa.images[j]);
        r.nums.push_back(j < i ? v.nums[j] : v.bound);
      }
      std::vector<std::string> s = leftover(i + 1);
      if (!s.empty()) {
        r.sets.push_back(std::move(s));
        r.nums.push_back(v.bound);
      }
      return r;
    }
    // emptied position: charge the previous counter
    if (i == 0 || v.nums[i - 1] == 0) return std::nullopt;
    for (std::size_t j = 0; j + 1 < i; ++j) {
      r.sets.push_back(pa.images[j]);
      r.nums.push_back(v.nums[j]);
    }
    r.sets.push_back(pa.images[i - 1]);
    r.nums.push_back(v.nums[i - 1] - 1);
    std::vector<std::string> s = leftover(i);
    if (!s.empty()) {
      r.sets.push_back(std::move(s));
      r.nums.push_back(v.bound);
    }
    return r;
  }

  // nothing descends: decrement the final counter
  if (v.nums.back() == 0) return std::nullopt;
  r.sets = pa.images;
  r.nums = v.nums;
  r.nums.back() -= 1;
  return r;
}

VectorGraph reachable_vectors(const Acg& a, long long bound) {
  VectorGraph vg;
  std::map<std::string, int> index;
  std::deque<int> work;

  auto add = [&](RankVector v) {
    std::string key = v.encode();
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(vg.nodes.size());
    index[key] = id;
    vg.nodes.push_back(std::move(v));
    work.push_back(id);
    return id;
  };

  RankVector v0;
  v0.flowpoint = a.initial;
  std::vector<std::string> all = a.flowpoint(a.initial).vars;
  std::sort(all.begin(), all.end());
  v0.sets.push_back(std::move(all));
  v0.nums.push_back(bound);
  v0.bound = bound;
  add(std::move(v0));

  while (!work.empty()) {
    int i = work.front();
    work.pop_front();
    for (const SizeChangeGraph& g : a.graphs) {
      if (g.source != vg.nodes[i].flowpoint) continue;
      std::vector<std::string> tvars = a.flowpoint(g.target).vars;
      std::optional<RankVector> nv = next_vector(vg.nodes[i], g, tvars);
      if (!nv)
        throw ClassError("vector " + vg.nodes[i].encode() +
                         " has no successor under graph " + g.id +
                         "; instance not terminating or not fan-out free");
      int j = add(std::move(*nv));
      vg.edges.emplace_back(i, g.id, j);
    }
  }
  return vg;
}

std::vector<RankVector> sink_scc_preserver(const VectorGraph& vg) {
  int n = static_cast<int>(vg.nodes.size());
  std::vector<std::vector<int>> succ(n);
  for (const auto& [from, id, to] : vg.edges) succ[from].push_back(to);

  // iterative Tarjan
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<int> stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<int>> sccs;
  int counter = 0;
  struct Frame {
    int v;
    std::size_t next_child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call = {{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next_child < succ[f.v].size()) {
        int w = succ[f.v][f.next_child++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (low[v] == index[v]) {
          std::vector<int> c;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = static_cast<int>(sccs.size());
            c.push_back(w);
            if (w == v) break;
          }
          sccs.push_back(std::move(c));
        } else if (!call.empty()) {
          low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
      }
    }
  }

  std::vector<bool> is_sink(sccs.size(), true);
  for (const auto& [from, id, to] : vg.edges)
    if (comp[from] != comp[to]) is_sink[comp[from]] = false;

  // pick the sink with the lexicographically smallest sorted encoding list
  std::vector<std::string> best_key;
  int best = -1;
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    if (!is_sink[c]) continue;
    std::vector<std::string> key;
    for (int v : sccs[c]) key.push_back(vg.nodes[v].encode());
    std::sort(key.begin(), key.end());
    if (best == -1 || key < best_key) {
      best = static_cast<int>(c);
      best_key = std::move(key);
    }
  }
  std::vector<RankVector> out;
  for (int v : sccs[best]) out.push_back(vg.nodes[v]);
  std::sort(out.begin(), out.end(), [](const RankVector& a, const RankVector& b) {
    return a.encode() < b.encode();
  });
  return out;
}

bool dominates(const RankVector& v, const RankVector& u) {
  if (v.flowpoint != u.flowpoint) return false;
  std::size_t k = std::min(v.sets.size(), u.sets.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (v.sets[i] != u.sets[i])
      return v.sets[i].size() < u.sets[i].size();
    if (v.nums[i] != u.nums[i]) return v.nums[i] < u.nums[i];
  }
  return false;
}

namespace {

bool dominated_within(const RankVector& u, const std::vector<RankVector>& s,
                      Mode flavor) {
  for (const RankVector& v : s) {
    bool d = flavor == Mode::Min ? dominates(v, u) : dominates(u, v);
    if (d) return true;
  }
  return false;
}

}  // namespace

std::vector<RankVector> normalize(std::vector<RankVector> s, Mode flavor) {
  std::sort(s.begin(), s.end(), [](const RankVector& a, const RankVector& b) {
    return a.encode() < b.encode();
  });
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<RankVector> out;
  for (const RankVector& u : s)
    if (!dominated_within(u, s, flavor)) out.push_back(u);
  return out;
}

namespace {

// all orderings of one (set, counter) position, each as a run of entries:
// optional cardinality constant, then singletons with 0 between them and the
// original counter after the last
std::vector<std::vector<DocEntry>> expand_position(const std::vector<std::string>& set,
                                                   long long num, bool marker) {
  std::vector<std::string> perm = set;
  std::sort(perm.begin(), perm.end());
  std::vector<std::vector<DocEntry>> out;
  do {
    std::vector<DocEntry> run;
    if (marker) run.push_back(DocEntry::constant(static_cast<long long>(perm.size())));
    for (std::size_t i = 0; i < perm.size(); ++i) {
      run.push_back(DocEntry::set({perm[i]}));
      run.push_back(DocEntry::constant(i + 1 < perm.size() ? 0 : num));
    }
    out.push_back(std::move(run));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// v always evaluates strictly below u: entries agree up to an index where
// both hold constants and v's is smaller, or v is a proper equal prefix
bool tuple_below(const DocTuple& v, const DocTuple& u) {
  std::size_t k = std::min(v.entries.size(), u.entries.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (v.entries[i] == u.entries[i]) continue;
    if (v.entries[i].kind == EntryKind::Const && u.entries[i].kind == EntryKind::Const)
      return v.entries[i].value < u.entries[i].value;
    return false;
  }
  return v.entries.size() < u.entries.size();
}

std::vector<DocTuple> normalize_tuples(std::vector<DocTuple> ts, Mode flavor) {
  std::sort(ts.begin(), ts.end(), tuple_less);
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<DocTuple> out;
  for (const DocTuple& u : ts) {
    bool drop = false;
    for (const DocTuple& v : ts) {
      drop = flavor == Mode::Min ? tuple_below(v, u) : tuple_below(u, v);
      if (drop) break;
    }
    if (!drop) out.push_back(u);
  }
  return out;
}

bool uniform_profiles(const std::vector<RankVector>& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].sets.size() != s[0].sets.size()) return false;
    for (std::size_t j = 0; j < s[0].sets.size(); ++j)
      if (s[i].sets[j].size() != s[0].sets[j].size()) return false;
  }
  return true;
}

}  // namespace

std::vector<DocTuple> simplify(const std::vector<RankVector>& s, Mode flavor) {
  return simplify(s, flavor, !uniform_profiles(s));
}

std::vector<DocTuple> simplify(const std::vector<RankVector>& s, Mode flavor,
                               bool cardinality_markers) {
  std::vector<DocTuple> expanded;
  for (const RankVector& v : s) {
    std::vector<DocTuple> partial(1);
    for (std::size_t i = 0; i < v.sets.size(); ++i) {
      auto runs = expand_position(v.sets[i], v.nums[i], cardinality_markers);
      std::vector<DocTuple> grown;
      for (const DocTuple& p : partial) {
        for (const auto& run : runs) {
          DocTuple q = p;
          q.entries.insert(q.entries.end(), run.begin(), run.end());
          grown.push_back(std::move(q));
        }
      }
      partial = std::move(grown);
    }
    expanded.insert(expanded.end(), partial.begin(), partial.end());
  }
  return normalize_tuples(std::move(expanded), flavor);
}

DocTuple to_doc_tuple(const RankVector& v) {
  DocTuple t;
  for (std::size_t i = 0; i < v.sets.size(); ++i) {
    t.entries.push_back(DocEntry::set(v.sets[i]));
    t.entries.push_back(DocEntry::constant(v.nums[i]));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Pipelines

namespace {

long long pow2(int n) { return 1LL << n; }

// per-flow-point normalized sink-SCC vector sets, in the min-world
// interpretation
std::map<std::string, std::vector<RankVector>> min_world_sets(const Acg& a,
                                                              long long bound) {
  VectorGraph vg = reachable_vectors(a, bound);
  std::vector<RankVector> sink = sink_scc_preserver(vg);
  std::map<std::string, std::vector<RankVector>> per_fp;
  for (RankVector& v : sink) per_fp[v.flowpoint].push_back(std::move(v));
  for (auto& [fp, vs] : per_fp) vs = normalize(std::move(vs), Mode::Min);
  for (const FlowPoint& f : a.flowpoints)
    if (!per_fp.count(f.name) || per_fp[f.name].empty())
      throw ClassError("no rank vector covers flow point " + f.name);
  return per_fp;
}

// shapes must agree across the whole document for unprefixed simplification,
// since values of different flow points get compared across every graph
bool need_markers(const std::map<std::string, std::vector<RankVector>>& per_fp) {
  std::vector<RankVector> all;
  for (const auto& [fp, vs] : per_fp) all.insert(all.end(), vs.begin(), vs.end());
  return !uniform_profiles(all);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ClassError(msg);
}

}  // namespace

RankingDoc synthesize_fanout(const Acg& a, const SynthesisOptions& opts) {
  Classification c = classify(a);
  require(c.fan_out_free, "instance is not fan-out free");
  require(c.strongly_connected, "instance is not strongly connected");
  require(decide_sct(a).terminating, "instance is not terminating");

  long long bound = static_cast<long long>(a.flowpoints.size()) * pow2(a.var_count());
  auto per_fp = min_world_sets(a, bound);
  bool markers = opts.simplify && need_markers(per_fp);

  RankingDoc doc;
  doc.instance = a.name;
  doc.mode = Mode::Min;
  for (const FlowPoint& f : a.flowpoints) {
    std::vector<DocTuple> tuples;
    if (opts.simplify) {
      tuples = simplify(per_fp[f.name], Mode::Min, markers);
    } else {
      for (const RankVector& v : per_fp[f.name]) tuples.push_back(to_doc_tuple(v));
    }
    doc.rows.emplace_back(f.name, std::move(tuples));
  }
  canonicalize(doc);
  return doc;
}

RankingDoc synthesize_fanin(const Acg& a, const SynthesisOptions& opts) {
  Classification c = classify(a);
  require(c.fan_in_free, "instance is not fan-in free");
  require(c.strongly_connected, "instance is not strongly connected");
  require(decide_sct(a).terminating, "instance is not terminating");

  Acg t = transpose(a);
  long long n = a.var_count();
  long long bound = static_cast<long long>(a.flowpoints.size()) * pow2(a.var_count());
  auto per_fp = min_world_sets(t, bound);

  RankingDoc doc;
  doc.instance = a.name;
  doc.mode = Mode::Max;

  if (opts.simplify) {
    // simplify in the min world, then invert every numeric entry; variable
    // values keep their natural order, only the numeric order flips, and
    // bound >= n covers the cardinality prefixes too
    bool markers = need_markers(per_fp);
    for (const FlowPoint& f : a.flowpoints) {
      std::vector<DocTuple> tuples = simplify(per_fp[f.name], Mode::Min, markers);
      for (DocTuple& tup : tuples)
        for (DocEntry& e : tup.entries)
          if (e.kind == EntryKind::Const) e.value = bound - e.value;
      doc.rows.emplace_back(f.name, std::move(tuples));
    }
    canonicalize(doc);
    return doc;
  }

  // Cardinalities fold into the preceding counters (first set exempt), then
  // every counter flips to invert the order. The flip base n*(bound+1)
  // exceeds every encoded value, keeping results non-negative.
  long long flip = n * (bound + 1);
  for (const FlowPoint& f : a.flowpoints) {
    std::vector<DocTuple> tuples;
    for (const RankVector& v : per_fp[f.name]) {
      DocTuple tup;
      for (std::size_t i = 0; i < v.sets.size(); ++i) {
        tup.entries.push_back(DocEntry::set(v.sets[i]));
        long long follow =
            i + 1 < v.sets.size() ? static_cast<long long>(v.sets[i + 1].size()) : 0;
        tup.entries.push_back(DocEntry::constant(flip - (v.nums[i] * n + follow)));
      }
      tuples.push_back(std::move(tup));
    }
    doc.rows.emplace_back(f.name, std::move(tuples));
  }
  canonicalize(doc);
  return doc;
}

namespace {

// classification of the graphs internal to one CFG component; returns the id
// of some offending graph, or empty
std::string fan_offender(const Acg& a, const std::set<std::string>& comp, bool out) {
  for (const SizeChangeGraph& g : a.graphs) {
    if (!comp.count(g.source) || !comp.count(g.target)) continue;
    std::map<std::string, int> deg;
    for (const Arc& arc : g.arcs)
      if (++deg[out ? arc.src : arc.dst] > 1) return g.id;
  }
  return "";
}

Acg sub_instance(const Acg& a, const std::vector<std::string>& comp) {
  std::set<std::string> members(comp.begin(), comp.end());
  Acg s;
  s.name = a.name;
  for (const FlowPoint& f : a.flowpoints)
    if (members.count(f.name)) s.flowpoints.push_back(f);
  s.initial = comp.front();  // components list names sorted
  for (const SizeChangeGraph& g : a.graphs)
    if (members.count(g.source) && members.count(g.target)) s.graphs.push_back(g);
  return s;
}

}  // namespace

RankingDoc synthesize(const Acg& a, SynthMode mode, const SynthesisOptions& opts) {
  std::vector<std::vector<std::string>> sccs = cfg_sccs(a);

  if (mode == SynthMode::Auto) {
    std::string fo_bad, fi_bad, fo_scc, fi_scc;
    for (const auto& comp : sccs) {
      std::set<std::string> members(comp.begin(), comp.end());
      if (fo_bad.empty()) {
        fo_bad = fan_offender(a, members, true);
        fo_scc = comp.front();
      }
      if (fi_bad.empty()) {
        fi_bad = fan_offender(a, members, false);
        fi_scc = comp.front();
      }
    }
    if (fo_bad.empty())
      mode = SynthMode::Fanout;
    else if (fi_bad.empty())
      mode = SynthMode::Fanin;
    else
      throw ClassError("component of " + fo_scc + " is not fan-out free (graph " +
                       fo_bad + ") and component of " + fi_scc +
                       " is not fan-in free (graph " + fi_bad + ")");
  } else {
    bool out = mode == SynthMode::Fanout;
    for (const auto& comp : sccs) {
      std::set<std::string> members(comp.begin(), comp.end());
      std::string bad = fan_offender(a, members, out);
      if (!bad.empty())
        throw ClassError("component of " + comp.front() + " is not fan-" +
                         (out ? "out" : "in") + " free (graph " + bad + ")");
    }
  }

  RankingDoc doc;
  doc.instance = a.name;
  doc.mode = mode == SynthMode::Fanout ? Mode::Min : Mode::Max;
  std::map<std::string, std::vector<DocTuple>> rows;

  for (std::size_t ci = 0; ci < sccs.size(); ++ci) {
    const auto& comp = sccs[ci];
    long long idx = static_cast<long long>(ci) + 1;  // reverse topological, sinks = 1
    Acg sub = sub_instance(a, comp);
    if (sub.graphs.empty()) {
      // degenerate component: inter-component descent comes from the prefix
      DocTuple t;
      t.entries.push_back(DocEntry::constant(idx));
      t.entries.push_back(DocEntry::constant(0));
      rows[comp.front()].push_back(std::move(t));
      continue;
    }
    RankingDoc part = mode == SynthMode::Fanout ? synthesize_fanout(sub, opts)
                                                : synthesize_fanin(sub, opts);
    for (auto& [fp, tuples] : part.rows)
      for (DocTuple& t : tuples) {
        t.entries.insert(t.entries.begin(), DocEntry::constant(idx));
        rows[fp].push_back(std::move(t));
      }
  }

  for (const FlowPoint& f : a.flowpoints)
    doc.rows.emplace_back(f.name, std::move(rows[f.name]));
  canonicalize(doc);
  return doc;
}

}  // namespace sct
