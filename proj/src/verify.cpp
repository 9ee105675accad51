#include "sct/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace sct {

long long Valuation::at(const std::string& var) const {
  auto it = values.find(var);
  if (it == values.end())
    throw ValidationError("valuation at " + flowpoint + " lacks variable " + var);
  return it->second;
}

std::string Value::to_string() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) os << ",";
    if (entries[i].is_num) {
      os << entries[i].num;
    } else {
      os << "{";
      for (std::size_t j = 0; j < entries[i].bag.size(); ++j)
        os << (j ? "," : "") << entries[i].bag[j];
      os << "}";
    }
  }
  os << ">";
  return os.str();
}

Ordering multiset_compare(std::vector<long long> a, std::vector<long long> b,
                          Mode flavor) {
  if (a.size() != b.size())
    return a.size() > b.size() ? Ordering::Greater : Ordering::Less;
  if (flavor == Mode::Max) {
    std::sort(a.rbegin(), a.rend());
    std::sort(b.rbegin(), b.rend());
  } else {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
  }
  if (a == b) return Ordering::Equal;
  return a < b ? Ordering::Less : Ordering::Greater;
}

Ordering value_compare(const Value& a, const Value& b, Mode flavor) {
  std::size_t k = std::min(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < k; ++i) {
    const ValueEntry& x = a.entries[i];
    const ValueEntry& y = b.entries[i];
    if (x.is_num != y.is_num) {
      // only an error if this index has to decide
      throw ValidationError("entry kind mismatch at position " + std::to_string(i));
    }
    if (x.is_num) {
      if (x.num != y.num) return x.num < y.num ? Ordering::Less : Ordering::Greater;
    } else {
      Ordering o = multiset_compare(x.bag, y.bag, flavor);
      if (o != Ordering::Equal) return o;
    }
  }
  if (a.entries.size() == b.entries.size()) return Ordering::Equal;
  return a.entries.size() < b.entries.size() ? Ordering::Less : Ordering::Greater;
}

Value eval_tuple(const DocTuple& t, const Valuation& v) {
  Value val;
  for (const DocEntry& e : t.entries) {
    ValueEntry ve;
    switch (e.kind) {
      case EntryKind::Const:
        ve.is_num = true;
        ve.num = e.value;
        break;
      case EntryKind::Set: {
        ve.is_num = false;
        for (const std::string& x : e.vars) ve.bag.push_back(v.at(x));
        std::sort(ve.bag.begin(), ve.bag.end());
        break;
      }
      case EntryKind::MaxVal:
      case EntryKind::MinVal: {
        ve.is_num = true;
        long long acc = v.at(e.vars.front());
        for (const std::string& x : e.vars)
          acc = e.kind == EntryKind::MaxVal ? std::max(acc, v.at(x))
                                            : std::min(acc, v.at(x));
        ve.num = acc;
        break;
      }
    }
    val.entries.push_back(std::move(ve));
  }
  return val;
}

Value eval_ranking(const RankingDoc& doc, const Valuation& v) {
  const std::vector<DocTuple>* row = doc.find_row(v.flowpoint);
  if (!row || row->empty())
    throw ValidationError("document has no tuples for flow point " + v.flowpoint);
  Value best = eval_tuple((*row)[0], v);
  for (std::size_t i = 1; i < row->size(); ++i) {
    Value cand = eval_tuple((*row)[i], v);
    Ordering o = value_compare(cand, best, doc.mode);
    if ((doc.mode == Mode::Min && o == Ordering::Less) ||
        (doc.mode == Mode::Max && o == Ordering::Greater))
      best = std::move(cand);
  }
  return best;
}

bool models(const SizeChangeGraph& g, const Valuation& src, const Valuation& tgt) {
  for (const Arc& a : g.arcs) {
    long long s = src.at(a.src);
    long long t = tgt.at(a.dst);
    if (a.label == Label::Strict ? !(s > t) : !(s >= t)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Certificate check

namespace {

void check_coverage(const Acg& a, const RankingDoc& doc) {
  for (const FlowPoint& f : a.flowpoints) {
    const std::vector<DocTuple>* row = doc.find_row(f.name);
    if (!row || row->empty())
      throw ValidationError("document misses flow point " + f.name);
    for (const DocTuple& t : *row)
      for (const DocEntry& e : t.entries)
        for (const std::string& x : e.vars)
          if (std::find(f.vars.begin(), f.vars.end(), x) == f.vars.end())
            throw ValidationError("document tuple at " + f.name +
                                  " names unknown variable " + x);
  }
  for (const auto& [fp, tuples] : doc.rows)
    if (!a.find_flowpoint(fp))
      throw ValidationError("document names unknown flow point " + fp);
}

// all grid valuations of one flow point, odometer order (last variable fastest)
std::vector<Valuation> grid_valuations(const FlowPoint& f, long long domain) {
  std::vector<Valuation> out;
  std::vector<long long> digits(f.vars.size(), 0);
  while (true) {
    Valuation v;
    v.flowpoint = f.name;
    for (std::size_t i = 0; i < f.vars.size(); ++i) v.values[f.vars[i]] = digits[i];
    out.push_back(std::move(v));
    int i = static_cast<int>(digits.size()) - 1;
    while (i >= 0 && ++digits[i] == domain) digits[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

unsigned long long ipow(unsigned long long b, unsigned e) {
  unsigned long long r = 1;
  while (e--) {
    if (b != 0 && r > ~0ULL / b) return ~0ULL;
    r *= b;
  }
  return r;
}

}  // namespace

VerifyReport verify_ranking(const Acg& a, const RankingDoc& doc,
                            const VerifyBudget& budget) {
  check_coverage(a, doc);
  VerifyReport rep{true, std::nullopt, false, false, 0};

  unsigned n = static_cast<unsigned>(a.var_count());
  long long domain = 2LL * n;
  unsigned long long per_graph_pairs = ipow(static_cast<unsigned long long>(domain), 2 * n);

  bool exhaustive = budget.exhaustive;
  if (exhaustive && per_graph_pairs > budget.cap) {
    exhaustive = false;
    rep.degraded = true;
  }
  rep.sampled = !exhaustive;

  auto check_pair = [&](const SizeChangeGraph& g, const Valuation& src,
                        const Value& sv, const Valuation& tgt, const Value& tv) {
    ++rep.checked;
    if (value_compare(sv, tv, doc.mode) != Ordering::Greater) {
      rep.valid = false;
      rep.counterexample = Counterexample{g.id, src, tgt, sv, tv};
      return false;
    }
    return true;
  };

  if (exhaustive) {
    // precomputed evaluations per flow point
    std::map<std::string, std::vector<Valuation>> vals;
    std::map<std::string, std::vector<Value>> evs;
    for (const FlowPoint& f : a.flowpoints) {
      vals[f.name] = grid_valuations(f, domain);
      for (const Valuation& v : vals[f.name]) evs[f.name].push_back(eval_ranking(doc, v));
    }
    for (const SizeChangeGraph& g : a.graphs) {
      const auto& sv = vals[g.source];
      const auto& tv = vals[g.target];
      for (std::size_t i = 0; i < sv.size(); ++i)
        for (std::size_t j = 0; j < tv.size(); ++j) {
          if (!models(g, sv[i], tv[j])) continue;
          if (!check_pair(g, sv[i], evs[g.source][i], tv[j], evs[g.target][j]))
            return rep;
        }
    }
    return rep;
  }

  std::mt19937_64 rng(budget.seed);
  std::uniform_int_distribution<long long> dist(0, domain - 1);
  auto draw = [&](const FlowPoint& f) {
    Valuation v;
    v.flowpoint = f.name;
    for (const std::string& x : f.vars) v.values[x] = dist(rng);
    return v;
  };
  for (const SizeChangeGraph& g : a.graphs) {
    const FlowPoint& fs = a.flowpoint(g.source);
    const FlowPoint& ft = a.flowpoint(g.target);
    unsigned long long accepted = 0, attempts = 0;
    unsigned long long max_attempts = budget.samples * 1000ULL;
    while (accepted < budget.samples && attempts < max_attempts) {
      ++attempts;
      Valuation src = draw(fs), tgt = draw(ft);
      if (!models(g, src, tgt)) continue;
      ++accepted;
      Value sv = eval_ranking(doc, src);
      Value tv = eval_ranking(doc, tgt);
      if (!check_pair(g, src, sv, tgt, tv)) return rep;
    }
  }
  return rep;
}

}  // namespace sct
