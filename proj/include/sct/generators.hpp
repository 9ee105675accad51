#pragma once

#include <cstdint>
#include <string>

#include "sct/model.hpp"
#include "sct/ranking.hpp"

namespace sct {

/// Named instances from the literature examples, frozen as data:
/// fig3, fig5, fig6, sec46, sec46_counter.
Acg builtin(const std::string& name);

/// Single flow point, variables x0..xn; swap graphs plus one graph that
/// drops x0 and strictly decreases xn.
Acg family_61(int n);

/// family_61's swap graphs plus H_1..H_n, where H_i funnels x_i..x_n
/// strictly into x_i.
Acg family_62(int n);

/// Variables x0..xn, y1..yn; pair-swap graphs plus H_x (merge y1 into x1)
/// and H_y (strictly drop the first pair onto y1).
Acg family_63(int n);

/// The explicit 2^n-tuple min ranking for family_63(n): tuples
/// <S, #y's in S, {x0}, 0> with S picking one variable per pair.
RankingDoc k_ranking(int n);

struct RandomParams {
  int n = 2;                 // variables per flow point, 1..8
  int m = 1;                 // flow points, 1..4
  int graphs = 2;            // 1..8
  double strict_prob = 0.5;  // per-arc strict label probability
  bool fan_out_free = false;
  bool fan_in_free = false;
  bool require_terminating = false;
  std::uint64_t seed = 0;
};

/// Seeded random instance honoring the structural flags. With
/// require_terminating, rejection-samples against decide_sct and throws
/// ResourceError when retries run out.
Acg gen_random(const RandomParams& p);

}  // namespace sct
