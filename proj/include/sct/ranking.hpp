#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sct/model.hpp"

namespace sct {

enum class Mode { Min, Max };

enum class EntryKind { Const, Set, MaxVal, MinVal };

/// One entry of a ranking tuple: a constant, a variable multiset, or the
/// max/min over a variable set.
struct DocEntry {
  EntryKind kind;
  long long value = 0;             // Const only
  std::vector<std::string> vars;   // Set/MaxVal/MinVal, sorted

  static DocEntry constant(long long v) { return {EntryKind::Const, v, {}}; }
  static DocEntry set(std::vector<std::string> vs);
  static DocEntry maxval(std::vector<std::string> vs);
  static DocEntry minval(std::vector<std::string> vs);

  friend bool operator==(const DocEntry&, const DocEntry&) = default;
};

struct DocTuple {
  std::vector<DocEntry> entries;

  friend bool operator==(const DocTuple&, const DocTuple&) = default;
};

/// A ranking document: per flow point, a set of tuples combined under a
/// top-level min or max.
struct RankingDoc {
  std::string instance;
  Mode mode = Mode::Min;
  std::vector<std::pair<std::string, std::vector<DocTuple>>> rows;

  const std::vector<DocTuple>* find_row(const std::string& flowpoint) const;

  friend bool operator==(const RankingDoc&, const RankingDoc&) = default;
};

/// Total order on tuples used for deterministic serialization.
bool tuple_less(const DocTuple& a, const DocTuple& b);

/// Sorts every row's tuples with tuple_less and drops exact duplicates.
void canonicalize(RankingDoc& doc);

RankingDoc parse_ranking(const std::string& text);
std::string serialize_ranking(const RankingDoc& doc);

}  // namespace sct
