// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
// with its wall time and the binary exits non-zero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "sct/decide.hpp"
#include "sct/generators.hpp"
#include "sct/preserver.hpp"
#include "sct/rankgen.hpp"
#include "sct/verify.hpp"

using namespace sct;

namespace {

struct Criterion {
  int id;
  const char* title;
  long long limit_ms;
  std::function<void(std::string&)> run;  // appends failure details
};

// --- helpers ---------------------------------------------------------------

RankingDoc fig3_ranking() {
  RankingDoc doc;
  doc.instance = "fig3";
  doc.mode = Mode::Max;
  DocTuple t1, t2;
  t1.entries = {DocEntry::set({"y"}), DocEntry::constant(0), DocEntry::set({"z"})};
  t2.entries = {DocEntry::set({"x"}), DocEntry::constant(1), DocEntry::set({"z"})};
  doc.rows.emplace_back("f", std::vector<DocTuple>{t1, t2});
  return doc;
}

RankingDoc fig5_ranking() {
  RankingDoc doc;
  doc.instance = "fig5";
  doc.mode = Mode::Min;
  std::vector<DocTuple> ts(3);
  ts[0].entries = {DocEntry::maxval({"x", "y"})};
  ts[1].entries = {DocEntry::maxval({"x", "z"})};
  ts[2].entries = {DocEntry::maxval({"y", "z"})};
  doc.rows.emplace_back("f", ts);
  return doc;
}

void expect(bool ok, const std::string& what, std::string& err) {
  if (!ok) err += (err.empty() ? "" : "; ") + what;
}

// --- criteria --------------------------------------------------------------

void c1_golden_document(std::string& err) {
  RankingDoc doc = synthesize_fanout(builtin("sec46"));
  std::string got = serialize_ranking(doc);
  std::string want = "ranking sec46 mode min\nf : { <x,3,y,4>, <y,4,x,4> }\n";
  expect(got == want, "got \"" + got + "\"", err);
}

void c2_successor_trace(std::string& err) {
  Acg a = builtin("fig6");
  const std::vector<std::string> vars = {"x", "y", "z"};
  auto graph = [&](const char* id) -> const SizeChangeGraph& {
    for (const SizeChangeGraph& g : a.graphs)
      if (g.id == id) return g;
    throw ValidationError(std::string("no graph ") + id);
  };
  RankVector v;
  v.flowpoint = "f";
  v.sets = {{"x", "y", "z"}};
  v.nums = {8};
  v.bound = 8;
  const char* seq[] = {"g3", "g2", "g1", "g2"};
  RankVector want[4];
  for (RankVector& w : want) {
    w.flowpoint = "f";
    w.bound = 8;
  }
  want[0].sets = {{"y", "z"}, {"x"}};
  want[0].nums = {8, 8};
  want[1].sets = {{"x", "z"}, {"y"}};
  want[1].nums = {7, 8};
  want[2].sets = {{"y"}, {"x", "z"}};
  want[2].nums = {8, 8};
  want[3].sets = {{"x"}, {"z"}, {"y"}};
  want[3].nums = {8, 8, 8};
  for (int i = 0; i < 4; ++i) {
    std::optional<RankVector> nxt = next_vector(v, graph(seq[i]), vars);
    if (!nxt) {
      expect(false, std::string("step ") + std::to_string(i + 1) + " undefined", err);
      return;
    }
    expect(*nxt == want[i],
           std::string("step ") + std::to_string(i + 1) + " got " + nxt->encode(),
           err);
    v = *nxt;
  }
}

void c3_certificates_and_mutations(std::string& err) {
  for (const char* name : {"fig3", "fig5"}) {
    Acg base = builtin(name);
    RankingDoc doc = std::string(name) == "fig3" ? fig3_ranking() : fig5_ranking();
    VerifyReport rep = verify_ranking(base, doc);
    expect(rep.valid && !rep.sampled, std::string(name) + " certificate rejected", err);
    for (std::size_t g = 0; g < base.graphs.size(); ++g)
      for (std::size_t k = 0; k < base.graphs[g].arcs.size(); ++k) {
        if (base.graphs[g].arcs[k].label != Label::Strict) continue;
        Acg mutated = base;
        mutated.graphs[g].arcs[k].label = Label::NonStrict;
        VerifyReport bad = verify_ranking(mutated, doc);
        expect(!bad.valid && bad.counterexample.has_value(),
               std::string(name) + " mutation in " + base.graphs[g].id + " accepted",
               err);
      }
  }
}

void c4_decision_suite(std::string& err) {
  // fig6 harbors a loop with no strict arc anywhere, so it is the one suite
  // member that must come out non-terminating; both variants must agree on
  // every member.
  std::vector<std::pair<Acg, bool>> suite;
  suite.emplace_back(builtin("sec46"), true);
  suite.emplace_back(builtin("fig3"), true);
  suite.emplace_back(builtin("fig5"), true);
  suite.emplace_back(builtin("fig6"), false);
  for (int n = 1; n <= 3; ++n) {
    suite.emplace_back(family_61(n), true);
    suite.emplace_back(family_62(n), true);
    suite.emplace_back(family_63(n), true);
  }
  for (const auto& [a, want] : suite) {
    Verdict v1 = decide_sct(a, DecideVariant::IdempotentOnly);
    Verdict v2 = decide_sct(a, DecideVariant::AllGraphs);
    expect(v1.terminating == want && v2.terminating == want,
           a.name + " verdict mismatch", err);
  }
  Acg swap = parse_instance("instance swap\nflowpoint f vars x y\n"
                            "graph g : f -> f\n  x >= y\n  y >= x\nend\n");
  Verdict v = decide_sct(swap);
  bool ok = !v.terminating && v.witness.has_value();
  if (ok)
    for (const Arc& arc : v.witness->arcs)
      if (arc.src == arc.dst && arc.label == Label::Strict) ok = false;
  expect(ok, "swap instance: expected a witness without strict self-arcs", err);
}

void c5_tuple_counts(std::string& err) {
  RankingDoc doc = synthesize_fanout(family_61(3));
  const std::vector<DocTuple>* row = doc.find_row("f");
  std::size_t tuples = row ? row->size() : 0;
  expect(tuples >= 6 && tuples <= 24,
         "family_61(3) tuple count " + std::to_string(tuples), err);
  RankingDoc k = k_ranking(3);
  const std::vector<DocTuple>* krow = k.find_row("f");
  expect(krow && krow->size() == 8, "k_ranking(3) tuple count", err);
  VerifyBudget b;
  b.exhaustive = false;
  b.samples = 100'000;
  b.seed = 1;
  VerifyReport rep = verify_ranking(family_63(3), k, b);
  expect(rep.sampled && rep.valid, "k_ranking(3) sampled verification failed", err);
}

void c6_random_pipelines(std::string& err) {
  auto run = [&](bool fanin, std::uint64_t base) {
    int done = 0;
    for (int seed = 0; done < 200 && seed < 4000; ++seed) {
      RandomParams p;
      p.n = 1 + seed % 3;
      p.m = 1 + seed % 2;
      p.graphs = 1 + seed % 4;
      if (p.m > 1 && p.graphs < p.m) p.graphs = p.m;
      p.fan_out_free = !fanin;
      p.fan_in_free = fanin;
      p.require_terminating = true;
      p.seed = base + static_cast<std::uint64_t>(seed);
      Acg a;
      try {
        a = gen_random(p);
      } catch (const ResourceError&) {
        continue;
      }
      RankingDoc doc = fanin ? synthesize_fanin(a) : synthesize_fanout(a);
      if (!verify_ranking(a, doc).valid) {
        expect(false,
               std::string(fanin ? "fan-in" : "fan-out") + " seed " +
                   std::to_string(p.seed) + " invalid",
               err);
        return;
      }
      ++done;
    }
    expect(done == 200, "only " + std::to_string(done) + " instances found", err);
  };
  run(false, 500000);
  run(true, 600000);
}

void c7_invariants(std::string& err) {
  std::mt19937_64 rng(99);
  auto random_graph = [&](int n) {
    std::vector<Arc> arcs;
    std::uniform_int_distribution<int> coin(0, 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int c = coin(rng);
        if (c)
          arcs.push_back({"x" + std::to_string(i + 1), "x" + std::to_string(j + 1),
                          c == 2 ? Label::Strict : Label::NonStrict});
      }
    return SizeChangeGraph{"g", "f", "f", merge_arcs(std::move(arcs))};
  };
  int bad_assoc = 0;
  for (int i = 0; i < 1000; ++i) {
    SizeChangeGraph a = random_graph(3), b = random_graph(3), c = random_graph(3);
    if (compose(compose(a, b), c).arcs != compose(a, compose(b, c)).arcs) ++bad_assoc;
  }
  expect(bad_assoc == 0, "composition associativity", err);

  int bad_inv = 0, bad_dec = 0;
  for (int i = 0; i < 1000; ++i) {
    RandomParams p;
    p.n = 1 + i % 4;
    p.m = 1 + i % 2;
    p.graphs = 2 + i % 3;
    p.seed = 40000u + static_cast<std::uint64_t>(i);
    Acg a = gen_random(p);
    if (transpose(transpose(a)) != a) ++bad_inv;
    if (i < 200 &&
        decide_sct(a).terminating != decide_sct(transpose(a)).terminating)
      ++bad_dec;
  }
  expect(bad_inv == 0, "transpose involution", err);
  expect(bad_dec == 0, "decision under transposition", err);

  // dropping dominated vectors must not change the pointwise extremum
  const std::vector<std::string> vars = {"x1", "x2", "x3"};
  std::uniform_int_distribution<int> npos(1, 3), card(1, 3), num(0, 3), len(2, 5);
  int bad_norm = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RankVector> s;
    int k = len(rng);
    for (int i = 0; i < k; ++i) {
      RankVector v;
      v.flowpoint = "f";
      v.bound = 3;
      int m = npos(rng);
      for (int j = 0; j < m; ++j) {
        std::vector<std::string> set;
        std::sample(vars.begin(), vars.end(), std::back_inserter(set), card(rng), rng);
        v.sets.push_back(std::move(set));
        v.nums.push_back(num(rng));
      }
      s.push_back(std::move(v));
    }
    for (Mode flavor : {Mode::Min, Mode::Max}) {
      std::vector<RankVector> reduced = normalize(s, flavor);
      std::vector<long long> digits(vars.size(), 0);
      bool more = true;
      while (more) {
        Valuation val;
        val.flowpoint = "f";
        for (std::size_t i = 0; i < vars.size(); ++i) val.values[vars[i]] = digits[i];
        auto extremum = [&](const std::vector<RankVector>& set) {
          Value best = eval_tuple(to_doc_tuple(set[0]), val);
          for (std::size_t i = 1; i < set.size(); ++i) {
            Value cand = eval_tuple(to_doc_tuple(set[i]), val);
            Ordering o = value_compare(cand, best, flavor);
            if ((flavor == Mode::Min && o == Ordering::Less) ||
                (flavor == Mode::Max && o == Ordering::Greater))
              best = std::move(cand);
          }
          return best;
        };
        if (!(extremum(s) == extremum(reduced))) ++bad_norm;
        int i = static_cast<int>(digits.size()) - 1;
        while (i >= 0 && ++digits[i] == 6) digits[i--] = 0;
        more = i >= 0;
      }
    }
  }
  expect(bad_norm == 0, "normalization changed an extremum", err);

  // total-order laws for the multiset comparison
  std::uniform_int_distribution<int> blen(0, 4), belem(0, 5);
  auto bag = [&] {
    std::vector<long long> b(blen(rng));
    for (auto& x : b) x = belem(rng);
    return b;
  };
  auto leq = [](Ordering o) { return o != Ordering::Greater; };
  int bad_ord = 0;
  for (int i = 0; i < 1000; ++i)
    for (Mode m : {Mode::Min, Mode::Max}) {
      auto a = bag(), b = bag(), c = bag();
      Ordering ab = multiset_compare(a, b, m);
      Ordering ba = multiset_compare(b, a, m);
      if ((ab == Ordering::Equal) != (ba == Ordering::Equal)) ++bad_ord;
      if (ab == Ordering::Less && ba != Ordering::Greater) ++bad_ord;
      if (leq(ab) && leq(multiset_compare(b, c, m)) &&
          !leq(multiset_compare(a, c, m)))
        ++bad_ord;
    }
  expect(bad_ord == 0, "comparison order laws", err);
}

void c8_thread_preservers(std::string& err) {
  std::vector<Acg> suite;
  for (const char* name : {"sec46", "fig3", "fig5", "fig6", "sec46_counter"})
    suite.push_back(builtin(name));
  for (int n = 1; n <= 3; ++n) {
    suite.push_back(family_61(n));
    suite.push_back(family_62(n));
    suite.push_back(family_63(n));
  }
  for (int seed = 0; seed < 30; ++seed) {
    RandomParams p;
    p.n = 1 + seed % 3;
    p.m = 1 + seed % 2;
    p.graphs = 2 + seed % 3;
    p.seed = 80000u + static_cast<std::uint64_t>(seed);
    suite.push_back(gen_random(p));
  }
  for (const Acg& a : suite) {
    VariableSet mtp = compute_mtp(a);
    expect(is_thread_preserver(a, mtp), a.name + ": mtp not a preserver", err);
    std::vector<std::pair<std::string, std::string>> univ;
    for (const FlowPoint& f : a.flowpoints)
      for (const std::string& v : f.vars) univ.emplace_back(f.name, v);
    if (univ.size() > 6) continue;
    for (std::uint32_t mask = 0; mask < (1u << univ.size()); ++mask) {
      VariableSet p;
      for (std::size_t i = 0; i < univ.size(); ++i)
        if (mask & (1u << i)) p.insert(univ[i]);
      if (is_thread_preserver(a, p) &&
          !std::includes(mtp.begin(), mtp.end(), p.begin(), p.end())) {
        expect(false, a.name + ": preserver outside mtp", err);
        break;
      }
    }
  }
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "two-variable pipeline emits the expected document", 1000, c1_golden_document},
      {2, "four-step successor trace at bound 8", 1000, c2_successor_trace},
      {3, "frozen certificates verify; strict-arc weakenings rejected", 30000,
       c3_certificates_and_mutations},
      {4, "decision suite agrees across both closure variants", 10000,
       c4_decision_suite},
      {5, "tuple count bounds and the closed-form document", 60000, c5_tuple_counts},
      {6, "200+200 random pipelines synthesize and verify", 300000,
       c6_random_pipelines},
      {7, "algebraic invariants of the core operations", 120000, c7_invariants},
      {8, "maximal thread preservers contain every preserver", 60000,
       c8_thread_preservers},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string err;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(err);
    } catch (const std::exception& e) {
      err += (err.empty() ? "" : "; ") + std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (ms > c.limit_ms)
      err += (err.empty() ? "" : "; ") + std::string("took ") + std::to_string(ms) +
             " ms, limit " + std::to_string(c.limit_ms);
    if (err.empty()) {
      std::printf("criterion %d: PASS (%lld ms) %s\n", c.id,
                  static_cast<long long>(ms), c.title);
    } else {
      ++failures;
      std::printf("criterion %d: FAIL (%lld ms) %s: %s\n", c.id,
                  static_cast<long long>(ms), c.title, err.c_str());
    }
  }
  return failures == 0 ? 0 : 1;
}
