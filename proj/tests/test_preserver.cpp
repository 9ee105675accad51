#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sct/generators.hpp"
#include "sct/preserver.hpp"
#include "sct/verify.hpp"

using namespace sct;

namespace {

// every thread preserver found by brute force must sit inside the mtp
void brute_force_check(const Acg& a) {
  std::vector<std::pair<std::string, std::string>> univ;
  for (const FlowPoint& f : a.flowpoints)
    for (const std::string& v : f.vars) univ.emplace_back(f.name, v);
  REQUIRE(univ.size() <= 16);
  VariableSet mtp = compute_mtp(a);
  for (std::uint32_t mask = 0; mask < (1u << univ.size()); ++mask) {
    VariableSet p;
    for (std::size_t i = 0; i < univ.size(); ++i)
      if (mask & (1u << i)) p.insert(univ[i]);
    if (is_thread_preserver(a, p)) {
      bool contained = std::includes(mtp.begin(), mtp.end(), p.begin(), p.end());
      CHECK(contained);
    }
  }
}

}  // namespace

TEST_CASE("thread preserver definition") {
  Acg a = builtin("sec46");
  CHECK(is_thread_preserver(a, {}));  // vacuously
  CHECK(is_thread_preserver(a, {{"f", "x"}, {"f", "y"}}));
  // {x} alone breaks in g1 where x maps only to y
  CHECK_FALSE(is_thread_preserver(a, {{"f", "x"}}));
  CHECK_THROWS_AS(is_thread_preserver(a, {{"f", "w"}}), ValidationError);
  CHECK_THROWS_AS(is_thread_preserver(a, {{"h", "x"}}), ValidationError);
}

TEST_CASE("mtp of the running two-variable instance") {
  VariableSet mtp = compute_mtp(builtin("sec46"));
  CHECK(mtp == VariableSet{{"f", "x"}, {"f", "y"}});
}

TEST_CASE("mtp can be empty") {
  // fig3: x and z have no outgoing arc in g1, y has none in g2
  CHECK(compute_mtp(builtin("fig3")).empty());
}

TEST_CASE("mtp is a thread preserver on the whole suite") {
  std::vector<Acg> suite;
  for (const char* name : {"sec46", "fig3", "fig5", "fig6", "sec46_counter"})
    suite.push_back(builtin(name));
  for (int n = 1; n <= 3; ++n) {
    suite.push_back(family_61(n));
    suite.push_back(family_62(n));
    suite.push_back(family_63(n));
  }
  for (const Acg& a : suite) CHECK(is_thread_preserver(a, compute_mtp(a)));
}

TEST_CASE("mtp is maximal: brute force containment") {
  for (const char* name : {"sec46", "fig3", "fig5", "fig6", "sec46_counter"})
    brute_force_check(builtin(name));
  brute_force_check(family_61(2));
  brute_force_check(family_61(3));
  brute_force_check(family_62(3));
  brute_force_check(family_63(2));
  for (int seed = 0; seed < 20; ++seed) {
    RandomParams p;
    p.n = 1 + seed % 3;
    p.m = 1 + seed % 2;
    p.graphs = 2 + seed % 3;
    p.seed = static_cast<std::uint64_t>(seed) + 7000;
    brute_force_check(gen_random(p));
  }
}

TEST_CASE("mtp across two flow points") {
  Acg a = parse_instance(
      "instance t\nflowpoint f vars x y\nflowpoint h vars x y\n"
      "graph g1 : f -> h\n  x > x\nend\n"
      "graph g2 : h -> f\n  x >= x\n  y >= x\nend\n");
  VariableSet mtp = compute_mtp(a);
  // y at h survives through g2's y >= x arc; y at f has no arc in g1
  CHECK(mtp == VariableSet{{"f", "x"}, {"h", "x"}, {"h", "y"}});
  brute_force_check(a);
}

TEST_CASE("strict min ranking for a strict fan-out free instance") {
  Acg a = parse_instance("instance t\nflowpoint f vars x y\n"
                         "graph g : f -> f\n  x > y\n  y > y\nend\n");
  RankingDoc doc = strict_min_ranking(a);
  CHECK(doc.mode == Mode::Min);
  const std::vector<DocTuple>* row = doc.find_row("f");
  REQUIRE(row);
  REQUIRE(row->size() == 1);
  REQUIRE((*row)[0].entries.size() == 1);
  CHECK((*row)[0].entries[0] == DocEntry::minval({"x", "y"}));
  CHECK(verify_ranking(a, doc).valid);
}

TEST_CASE("strict max ranking for a strict fan-in free instance") {
  Acg a = parse_instance("instance t\nflowpoint f vars x y\n"
                         "graph g : f -> f\n  y > x\n  y > y\nend\n");
  RankingDoc doc = strict_max_ranking(a);
  CHECK(doc.mode == Mode::Max);
  const std::vector<DocTuple>* row = doc.find_row("f");
  REQUIRE(row);
  REQUIRE((*row)[0].entries[0] == DocEntry::maxval({"x", "y"}));
  CHECK(verify_ranking(a, doc).valid);
}

TEST_CASE("strict rankings refuse out-of-class instances") {
  // not strict
  CHECK_THROWS_AS(strict_min_ranking(builtin("sec46")), ClassError);
  // strict but no thread preserver covering f
  Acg a = parse_instance("instance t\nflowpoint f vars x y\n"
                         "graph g1 : f -> f\n  x > y\nend\n"
                         "graph g2 : f -> f\n  y > x\nend\n");
  CHECK_THROWS_AS(strict_min_ranking(a), ClassError);
}

TEST_CASE("strict rankings verify on strict random instances") {
  int done = 0;
  for (int seed = 0; done < 25 && seed < 400; ++seed) {
    RandomParams p;
    p.n = 1 + seed % 3;
    p.graphs = 1 + seed % 3;
    p.strict_prob = 1.0;
    p.fan_out_free = true;
    p.seed = static_cast<std::uint64_t>(seed) + 11000;
    Acg a = gen_random(p);
    VariableSet mtp = compute_mtp(a);
    bool covered = true;
    for (const FlowPoint& f : a.flowpoints) {
      bool any = false;
      for (const std::string& v : f.vars) any |= mtp.count({f.name, v}) > 0;
      covered &= any;
    }
    if (!covered) continue;
    RankingDoc doc = strict_min_ranking(a);
    CHECK(verify_ranking(a, doc).valid);
    ++done;
  }
  CHECK(done == 25);
}
