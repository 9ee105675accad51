#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace sct {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line/column position.
struct ParseError : Error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& what_)
      : Error("parse error at " + std::to_string(line_) + ":" +
              std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_) {}
};

/// Structurally invalid instance or document (duplicate names, unknown
/// variables, unequal variable counts, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// An operation was applied to an instance outside its class
/// (e.g. ranking synthesis on a graph that is not fan-out free).
struct ClassError : Error {
  using Error::Error;
};

/// A configured resource budget was exceeded.
struct ResourceError : Error {
  using Error::Error;
};

enum class Label { Strict, NonStrict };

/// One size-change arc: source variable, target variable, strictness.
struct Arc {
  std::string src;
  std::string dst;
  Label label;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Sorts arcs by (src, dst) and collapses duplicate pairs, keeping
/// Strict when both labels appear for the same pair.
std::vector<Arc> merge_arcs(std::vector<Arc> arcs);

/// Bipartite labeled graph between the variables of two flow points.
struct SizeChangeGraph {
  std::string id;
  std::string source;
  std::string target;
  std::vector<Arc> arcs;  // sorted, at most one arc per (src, dst)

  friend bool operator==(const SizeChangeGraph&, const SizeChangeGraph&) = default;
};

struct FlowPoint {
  std::string name;
  std::vector<std::string> vars;

  friend bool operator==(const FlowPoint&, const FlowPoint&) = default;
};

/// Annotated control-flow graph: flow points plus size-change graphs
/// labeling the CFG edges.
struct Acg {
  std::string name;
  std::vector<FlowPoint> flowpoints;
  std::string initial;
  std::vector<SizeChangeGraph> graphs;

  const FlowPoint* find_flowpoint(const std::string& name) const;
  const FlowPoint& flowpoint(const std::string& name) const;  // throws ValidationError
  int var_count() const;  // n, identical across flow points

  friend bool operator==(const Acg&, const Acg&) = default;
};

struct Classification {
  bool fan_in_free;
  bool fan_out_free;
  bool strict;
  bool strongly_connected;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Checks all structural invariants of an Acg, including reachability of
/// every flow point from the initial one. Throws ValidationError.
void validate(const Acg& a);

/// Parses the instance text format. The result is validated.
Acg parse_instance(const std::string& text);

/// Canonical text rendering; parse_instance(serialize_instance(a)) == a.
std::string serialize_instance(const Acg& a);

Classification classify(const Acg& a);

/// Reverses every size-change graph and every CFG edge. The initial flow
/// point is kept, so the result may not satisfy the reachability invariant;
/// it is meant for internal use.
Acg transpose(const Acg& a);

/// Strongly connected components of the CFG, in reverse topological order
/// (components with no outgoing edges first). Each component lists flow
/// point names sorted lexicographically.
std::vector<std::vector<std::string>> cfg_sccs(const Acg& a);

bool is_reserved_word(const std::string& s);
bool is_identifier(const std::string& s);

}  // namespace sct
