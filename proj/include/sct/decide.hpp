#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sct/model.hpp"

namespace sct {

/// Relational composition of two size-change graphs. An arc x->z is strict
/// when some two-step path through a shared middle variable has a strict
/// leg; otherwise non-strict when an all-non-strict path exists.
SizeChangeGraph compose(const SizeChangeGraph& g1, const SizeChangeGraph& g2);

struct ClosureElement {
  std::string source;
  std::string target;
  std::vector<Arc> arcs;
  std::vector<std::string> witness_path;  // base graph ids, in composition order
};

struct ClosureOptions {
  std::size_t max_elements = 1'000'000;
};

/// Composition closure of the instance's graphs, deduplicated by
/// (source, target, arc set). Worklist to fixpoint; each element keeps the
/// first derivation found. Throws ResourceError past max_elements.
std::vector<ClosureElement> closure(const Acg& a, const ClosureOptions& opts = {});

enum class DecideVariant { IdempotentOnly, AllGraphs };

struct Verdict {
  bool terminating;
  std::optional<ClosureElement> witness;  // present iff not terminating
};

/// The size-change termination decision via the closure algorithm.
/// IdempotentOnly inspects idempotent cyclic elements; AllGraphs inspects
/// every cyclic element. Both are complete and agree on the verdict.
Verdict decide_sct(const Acg& a, DecideVariant variant = DecideVariant::IdempotentOnly,
                   const ClosureOptions& opts = {});

}  // namespace sct
