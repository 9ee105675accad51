#include "sct/generators.hpp"

#include "sct/decide.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace sct {

namespace {

const char* kFig3 = R"(instance fig3
flowpoint f vars x y z
graph g1 : f -> f
  y > x
  y > y
end
graph g2 : f -> f
  x > x
  x >= y
end
graph g3 : f -> f
  y > x
  y >= y
  z > z
end
)";

const char* kFig5 = R"(instance fig5
flowpoint f vars x y z
graph g1 : f -> f
  y > y
  y > z
  z > y
  z > z
end
graph g2 : f -> f
  x > x
  x > z
  z > x
  z > z
end
graph g3 : f -> f
  x > x
  x > y
  y > x
  y > y
end
)";

const char* kFig6 = R"(instance fig6
flowpoint f vars x y z
graph g1 : f -> f
  x > y
  y > y
end
graph g2 : f -> f
  x >= x
  y >= x
  z >= z
end
graph g3 : f -> f
  x > y
  y >= y
  z > z
end
)";

const char* kSec46 = R"(instance sec46
flowpoint f vars x y
graph g1 : f -> f
  x > y
  y > y
end
graph g2 : f -> f
  x > x
  y >= x
end
)";

const char* kSec46Counter = R"(instance sec46_counter
flowpoint f vars x y z
graph g1 : f -> f
  x > x
  y >= y
  z > y
end
graph g2 : f -> f
  y > z
  z > z
end
)";

void check_n(int n, int lo = 1) {
  if (n < lo || n > 8)
    throw ValidationError("family size n must be in [" + std::to_string(lo) + ", 8]");
}

std::string xvar(int i) { return "x" + std::to_string(i); }
std::string yvar(int i) { return "y" + std::to_string(i); }

Acg single_node_skeleton(const std::string& name, const std::vector<std::string>& vars) {
  Acg a;
  a.name = name;
  a.flowpoints.push_back({"f", vars});
  a.initial = "f";
  return a;
}

SizeChangeGraph make_graph(const std::string& id, std::vector<Arc> arcs) {
  return {id, "f", "f", merge_arcs(std::move(arcs))};
}

// non-strict swap of x_k, x_{k+1}, non-strict identity elsewhere, strict
// self-arc on x0
SizeChangeGraph swap_graph(int k, int n) {
  std::vector<Arc> arcs;
  arcs.push_back({xvar(k), xvar(k + 1), Label::NonStrict});
  arcs.push_back({xvar(k + 1), xvar(k), Label::NonStrict});
  for (int i = 0; i <= n; ++i)
    if (i != k && i != k + 1) arcs.push_back({xvar(i), xvar(i), Label::NonStrict});
  arcs.push_back({xvar(0), xvar(0), Label::Strict});
  return make_graph("g" + std::to_string(k), std::move(arcs));
}

SizeChangeGraph drop_graph(int n) {
  // identity on x_1..x_{n-1}, strict self-arc on x_n, x0 dies
  std::vector<Arc> arcs;
  for (int i = 1; i < n; ++i) arcs.push_back({xvar(i), xvar(i), Label::NonStrict});
  arcs.push_back({xvar(n), xvar(n), Label::Strict});
  return make_graph("g" + std::to_string(n), std::move(arcs));
}

}  // namespace

Acg builtin(const std::string& name) {
  if (name == "fig3") return parse_instance(kFig3);
  if (name == "fig5") return parse_instance(kFig5);
  if (name == "fig6") return parse_instance(kFig6);
  if (name == "sec46") return parse_instance(kSec46);
  if (name == "sec46_counter") return parse_instance(kSec46Counter);
  throw ValidationError("unknown builtin instance: " + name);
}

Acg family_61(int n) {
  check_n(n);
  std::vector<std::string> vars;
  for (int i = 0; i <= n; ++i) vars.push_back(xvar(i));
  Acg a = single_node_skeleton("c61_" + std::to_string(n), vars);
  for (int k = 1; k < n; ++k) a.graphs.push_back(swap_graph(k, n));
  a.graphs.push_back(drop_graph(n));
  validate(a);
  return a;
}

Acg family_62(int n) {
  check_n(n);
  std::vector<std::string> vars;
  for (int i = 0; i <= n; ++i) vars.push_back(xvar(i));
  Acg a = single_node_skeleton("c62_" + std::to_string(n), vars);
  for (int k = 1; k < n; ++k) a.graphs.push_back(swap_graph(k, n));
  for (int i = 1; i <= n; ++i) {
    std::vector<Arc> arcs;
    for (int j = 1; j < i; ++j) arcs.push_back({xvar(j), xvar(j), Label::NonStrict});
    for (int j = i; j <= n; ++j) arcs.push_back({xvar(j), xvar(i), Label::Strict});
    a.graphs.push_back(make_graph("h" + std::to_string(i), std::move(arcs)));
  }
  validate(a);
  return a;
}

Acg family_63(int n) {
  check_n(n);
  std::vector<std::string> vars;
  for (int i = 0; i <= n; ++i) vars.push_back(xvar(i));
  for (int i = 1; i <= n; ++i) vars.push_back(yvar(i));
  Acg a = single_node_skeleton("c63_" + std::to_string(n), vars);
  for (int k = 1; k < n; ++k) {
    std::vector<Arc> arcs;
    arcs.push_back({xvar(k), xvar(k + 1), Label::NonStrict});
    arcs.push_back({xvar(k + 1), xvar(k), Label::NonStrict});
    arcs.push_back({yvar(k), yvar(k + 1), Label::NonStrict});
    arcs.push_back({yvar(k + 1), yvar(k), Label::NonStrict});
    for (int i = 1; i <= n; ++i)
      if (i != k && i != k + 1) {
        arcs.push_back({xvar(i), xvar(i), Label::NonStrict});
        arcs.push_back({yvar(i), yvar(i), Label::NonStrict});
      }
    arcs.push_back({xvar(0), xvar(0), Label::Strict});
    a.graphs.push_back(make_graph("g" + std::to_string(k), std::move(arcs)));
  }
  {
    std::vector<Arc> arcs;
    arcs.push_back({xvar(1), xvar(1), Label::NonStrict});
    arcs.push_back({yvar(1), xvar(1), Label::NonStrict});
    for (int i = 2; i <= n; ++i) {
      arcs.push_back({xvar(i), xvar(i), Label::NonStrict});
      arcs.push_back({yvar(i), yvar(i), Label::NonStrict});
    }
    arcs.push_back({xvar(0), xvar(0), Label::Strict});
    a.graphs.push_back(make_graph("hx", std::move(arcs)));
  }
  {
    std::vector<Arc> arcs;
    arcs.push_back({xvar(1), yvar(1), Label::Strict});
    arcs.push_back({yvar(1), yvar(1), Label::Strict});
    for (int i = 2; i <= n; ++i) {
      arcs.push_back({xvar(i), xvar(i), Label::NonStrict});
      arcs.push_back({yvar(i), yvar(i), Label::NonStrict});
    }
    a.graphs.push_back(make_graph("hy", std::move(arcs)));
  }
  validate(a);
  return a;
}

RankingDoc k_ranking(int n) {
  check_n(n);
  RankingDoc doc;
  doc.instance = "c63_" + std::to_string(n);
  doc.mode = Mode::Min;
  std::vector<DocTuple> tuples;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::string> pick;
    long long ys = 0;
    for (int i = 1; i <= n; ++i) {
      if (mask & (1u << (i - 1))) {
        pick.push_back(yvar(i));
        ++ys;
      } else {
        pick.push_back(xvar(i));
      }
    }
    DocTuple t;
    t.entries.push_back(DocEntry::set(std::move(pick)));
    t.entries.push_back(DocEntry::constant(ys));
    t.entries.push_back(DocEntry::set({xvar(0)}));
    t.entries.push_back(DocEntry::constant(0));
    tuples.push_back(std::move(t));
  }
  doc.rows.emplace_back("f", std::move(tuples));
  canonicalize(doc);
  return doc;
}

// ---------------------------------------------------------------------------
// Random instances

namespace {

Acg random_once(const RandomParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto chance = [&](double prob) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prob;
  };

  Acg a;
  a.name = "random_" + std::to_string(p.seed);
  std::vector<std::string> vars;
  for (int i = 1; i <= p.n; ++i) vars.push_back("x" + std::to_string(i));
  for (int i = 1; i <= p.m; ++i)
    a.flowpoints.push_back({"f" + std::to_string(i), vars});
  a.initial = "f1";

  for (int gi = 0; gi < p.graphs; ++gi) {
    SizeChangeGraph g;
    g.id = "g" + std::to_string(gi + 1);
    if (p.m > 1 && gi < p.m) {
      // ring through all flow points, keeping the CFG strongly connected
      g.source = "f" + std::to_string(gi + 1);
      g.target = "f" + std::to_string(gi + 1 == p.m ? 1 : gi + 2);
    } else {
      std::uniform_int_distribution<int> pick(1, p.m);
      g.source = "f" + std::to_string(pick(rng));
      g.target = "f" + std::to_string(pick(rng));
    }
    std::vector<Arc> arcs;
    auto label = [&] { return chance(p.strict_prob) ? Label::Strict : Label::NonStrict; };
    if (p.fan_out_free && p.fan_in_free) {
      std::vector<int> perm(p.n);
      for (int i = 0; i < p.n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (int i = 0; i < p.n; ++i)
        if (chance(0.7)) arcs.push_back({vars[i], vars[perm[i]], label()});
    } else if (p.fan_out_free) {
      std::uniform_int_distribution<int> tgt(0, p.n);  // 0 = no arc
      for (int i = 0; i < p.n; ++i) {
        int t = tgt(rng);
        if (t > 0) arcs.push_back({vars[i], vars[t - 1], label()});
      }
    } else if (p.fan_in_free) {
      std::uniform_int_distribution<int> src(0, p.n);
      for (int i = 0; i < p.n; ++i) {
        int s = src(rng);
        if (s > 0) arcs.push_back({vars[s - 1], vars[i], label()});
      }
    } else {
      for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j)
          if (chance(0.35)) arcs.push_back({vars[i], vars[j], label()});
    }
    g.arcs = merge_arcs(std::move(arcs));
    a.graphs.push_back(std::move(g));
  }
  validate(a);
  return a;
}

}  // namespace

Acg gen_random(const RandomParams& p) {
  if (p.n < 1 || p.n > 8) throw ValidationError("n must be in [1, 8]");
  if (p.m < 1 || p.m > 4) throw ValidationError("m must be in [1, 4]");
  if (p.graphs < 1 || p.graphs > 8) throw ValidationError("graphs must be in [1, 8]");
  if (p.m > 1 && p.graphs < p.m)
    throw ValidationError("need at least m graphs to connect m flow points");

  const int max_attempts = 500;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Acg a = random_once(p, p.seed + 0x9e3779b97f4a7c15ULL * attempt);
    if (!p.require_terminating) return a;
    if (decide_sct(a).terminating) return a;
  }
  throw ResourceError("no terminating instance found in " +
                      std::to_string(max_attempts) + " attempts");
}

}  // namespace sct
