#pragma once

#include <set>
#include <string>
#include <utility>

#include "sct/model.hpp"
#include "sct/ranking.hpp"

namespace sct {

/// A set of (flow point, variable) pairs.
using VariableSet = std::set<std::pair<std::string, std::string>>;

/// True iff every graph carries each member variable at its source to some
/// member variable at its target.
bool is_thread_preserver(const Acg& a, const VariableSet& p);

/// The unique maximal thread preserver, computed as a greatest fixpoint
/// with per-(variable, graph) counters of surviving successors.
VariableSet compute_mtp(const Acg& a);

/// Ranking for strict, fan-out free, strongly connected instances:
/// per flow point the single tuple <MinVal(Var(f) ∩ MTP)>.
RankingDoc strict_min_ranking(const Acg& a);

/// Symmetric construction for strict fan-in free instances via the MTP of
/// the transposed instance: <MaxVal(Var(f) ∩ P)> under a top-level max.
RankingDoc strict_max_ranking(const Acg& a);

}  // namespace sct
