#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sct/model.hpp"
#include "sct/ranking.hpp"

namespace sct {

/// Even-length rank vector: alternating non-empty variable sets and bounded
/// counters. sets[i] precedes nums[i]; both sequences have equal length.
struct RankVector {
  std::string flowpoint;
  std::vector<std::vector<std::string>> sets;  // each sorted, non-empty
  std::vector<long long> nums;
  long long bound = 0;

  std::size_t positions() const { return sets.size() + nums.size(); }
  std::string encode() const;  // canonical string, used for dedup and ordering

  friend bool operator==(const RankVector&, const RankVector&) = default;
};

/// {y | x -> y in g, x in s}. Result sorted.
std::vector<std::string> image(const std::vector<std::string>& s,
                               const SizeChangeGraph& g);

struct PositionAnalysis {
  std::vector<std::vector<std::string>> images;  // Im_i per set position
  std::vector<bool> descending;
  std::optional<int> first_descending;  // index into sets
};

/// Per-position images with earlier images subtracted, and the descending
/// flags: a position descends when its image shrinks, or keeps its size
/// with some strict arc into it.
PositionAnalysis analyze_positions(const RankVector& v, const SizeChangeGraph& g);

/// The successor vector, by cases: reset after the first non-empty
/// descending position (N1); decrement before an emptied position (N2);
/// decrement the final counter when nothing descends (N3). nullopt when
/// undefined.
std::optional<RankVector> next_vector(const RankVector& v, const SizeChangeGraph& g,
                                      const std::vector<std::string>& target_vars);

struct VectorGraph {
  std::vector<RankVector> nodes;
  std::vector<std::tuple<int, std::string, int>> edges;  // (from, graph id, to)
};

/// Closure of {<Var(initial), B>} under next_vector over all graphs.
/// Throws ClassError if some reachable vector has an undefined successor,
/// which signals a non-terminating or non-fan-out-free instance.
VectorGraph reachable_vectors(const Acg& a, long long bound);

/// The node set of one sink SCC of the vector graph, chosen as the sink
/// component with the lowest canonical node ordering.
std::vector<RankVector> sink_scc_preserver(const VectorGraph& vg);

/// v dominates u: equal prefix, then a strictly smaller set cardinality or
/// counter. A dominated vector is never the minimum.
bool dominates(const RankVector& v, const RankVector& u);

/// Removes every vector dominated by another member. For Mode::Max the
/// dual criterion applies (strictly larger entry after an equal prefix).
std::vector<RankVector> normalize(std::vector<RankVector> s, Mode flavor = Mode::Min);

/// Expands every multi-element set position into all orderings of singleton
/// positions, inserting a 0 counter between consecutive set positions, and
/// re-normalizes (dominated tuples removed). When the vectors in s do not all
/// share one cardinality profile, each expanded position is prefixed with its
/// cardinality as a constant; without that prefix, flattening loses the
/// cardinality-first comparison and the minimum is no longer preserved.
std::vector<DocTuple> simplify(const std::vector<RankVector>& s,
                               Mode flavor = Mode::Min);
std::vector<DocTuple> simplify(const std::vector<RankVector>& s, Mode flavor,
                               bool cardinality_markers);

DocTuple to_doc_tuple(const RankVector& v);

struct SynthesisOptions {
  bool simplify = true;
};

/// Fan-out free pipeline: reachable vectors with B = m * 2^n, sink SCC,
/// per-flow-point restriction, normalization, optional simplification.
/// The result is a min-mode document.
RankingDoc synthesize_fanout(const Acg& a, const SynthesisOptions& opts = {});

/// Fan-in free pipeline: the fan-out pipeline on the transposed instance,
/// with set cardinalities folded into the preceding counters and all
/// counters order-inverted. The result is a max-mode document.
RankingDoc synthesize_fanin(const Acg& a, const SynthesisOptions& opts = {});

enum class SynthMode { Auto, Fanout, Fanin };

/// SCC-decomposed synthesis: per-component pipelines with the component's
/// reverse-topological index prepended to every tuple as a constant.
RankingDoc synthesize(const Acg& a, SynthMode mode = SynthMode::Auto,
                      const SynthesisOptions& opts = {});

}  // namespace sct
