#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sct/model.hpp"
#include "sct/ranking.hpp"

namespace sct {

/// Concrete store: a total assignment of non-negative integers to one flow
/// point's variables.
struct Valuation {
  std::string flowpoint;
  std::map<std::string, long long> values;

  long long at(const std::string& var) const;
};

struct ValueEntry {
  bool is_num;
  long long num = 0;
  std::vector<long long> bag;  // ascending

  friend bool operator==(const ValueEntry&, const ValueEntry&) = default;
};

/// Evaluated tuple: alternating numbers and integer multisets.
struct Value {
  std::vector<ValueEntry> entries;

  std::string to_string() const;
  friend bool operator==(const Value&, const Value&) = default;
};

enum class Ordering { Less, Equal, Greater };

/// Total order on integer multisets. Larger cardinality wins; at equal
/// cardinality Mode::Max compares descending-sorted listings and Mode::Min
/// ascending-sorted listings, lexicographically.
Ordering multiset_compare(std::vector<long long> a, std::vector<long long> b,
                          Mode flavor);

/// Index-wise lexicographic comparison of values; a proper prefix is Less.
/// Throws ValidationError on a Num/Bag kind mismatch at a deciding index.
Ordering value_compare(const Value& a, const Value& b, Mode flavor);

Value eval_tuple(const DocTuple& t, const Valuation& v);

/// The document's value at a state: the value_compare-minimal tuple value
/// for min documents, maximal for max documents.
Value eval_ranking(const RankingDoc& doc, const Valuation& v);

/// True iff every arc's assertion holds: src(x) > tgt(y) for strict arcs,
/// src(x) >= tgt(y) for non-strict ones.
bool models(const SizeChangeGraph& g, const Valuation& src, const Valuation& tgt);

struct VerifyBudget {
  bool exhaustive = true;
  unsigned long long cap = 100'000'000ULL;  // modeled pairs per graph
  unsigned long long samples = 100'000ULL;  // sampled mode
  std::uint64_t seed = 0;
};

struct Counterexample {
  std::string graph_id;
  Valuation src;
  Valuation tgt;
  Value src_value;
  Value tgt_value;
};

struct VerifyReport {
  bool valid;
  std::optional<Counterexample> counterexample;
  bool sampled;        // mode actually used
  bool degraded = false;  // exhaustive requested but cap exceeded
  unsigned long long checked = 0;  // modeled valuation pairs examined
};

/// Bounded-valuation certificate check: over the grid {0..2n-1}, for every
/// graph and every modeled valuation pair, the document value must strictly
/// decrease. Exhaustive mode is complete for this expression language.
VerifyReport verify_ranking(const Acg& a, const RankingDoc& doc,
                            const VerifyBudget& budget = {});

}  // namespace sct
