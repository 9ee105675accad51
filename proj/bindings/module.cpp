// Python bindings. Text in, text out: instances and ranking documents cross
// the boundary in their canonical grammars, results come back as dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sct/decide.hpp"
#include "sct/generators.hpp"
#include "sct/preserver.hpp"
#include "sct/rankgen.hpp"
#include "sct/verify.hpp"

namespace py = pybind11;
using namespace sct;

namespace {

std::string arcs_to_string(const std::vector<Arc>& arcs) {
  std::string out;
  for (const Arc& a : arcs) {
    if (!out.empty()) out += ",";
    out += a.src + (a.label == Label::Strict ? ">" : ">=") + a.dst;
  }
  return out;
}

py::dict valuation_dict(const Valuation& v) {
  py::dict d;
  d["flowpoint"] = v.flowpoint;
  py::dict vals;
  for (const auto& [var, value] : v.values) vals[py::str(var)] = value;
  d["values"] = vals;
  return d;
}

py::dict py_decide(const std::string& text, bool all_graphs, std::size_t max_elements) {
  Acg a = parse_instance(text);
  Verdict v = decide_sct(
      a, all_graphs ? DecideVariant::AllGraphs : DecideVariant::IdempotentOnly,
      {max_elements});
  py::dict d;
  d["terminating"] = v.terminating;
  if (v.witness) {
    py::dict w;
    w["source"] = v.witness->source;
    w["target"] = v.witness->target;
    w["arcs"] = arcs_to_string(v.witness->arcs);
    w["path"] = py::cast(v.witness->witness_path);
    d["witness"] = w;
  }
  return d;
}

std::string py_rank(const std::string& text, const std::string& mode, bool simplify) {
  Acg a = parse_instance(text);
  Verdict v = decide_sct(a);
  if (!v.terminating) throw ClassError("instance is not size-change terminating");
  SynthMode m = SynthMode::Auto;
  if (mode == "fanout") m = SynthMode::Fanout;
  else if (mode == "fanin") m = SynthMode::Fanin;
  else if (mode != "auto") throw ValidationError("unknown mode: " + mode);
  SynthesisOptions opts{simplify};
  RankingDoc doc;
  if (cfg_sccs(a).size() == 1) {
    Classification c = classify(a);
    if (m == SynthMode::Auto)
      m = c.fan_out_free ? SynthMode::Fanout
          : c.fan_in_free
              ? SynthMode::Fanin
              : throw ClassError("instance is neither fan-out nor fan-in free");
    doc = m == SynthMode::Fanout ? synthesize_fanout(a, opts)
                                 : synthesize_fanin(a, opts);
  } else {
    doc = synthesize(a, m, opts);
  }
  return serialize_ranking(doc);
}

py::dict py_verify(const std::string& instance_text, const std::string& ranking_text,
                   bool exhaustive, unsigned long long samples, std::uint64_t seed) {
  Acg a = parse_instance(instance_text);
  RankingDoc doc = parse_ranking(ranking_text);
  VerifyBudget b;
  b.exhaustive = exhaustive;
  b.samples = samples;
  b.seed = seed;
  VerifyReport rep = verify_ranking(a, doc, b);
  py::dict d;
  d["valid"] = rep.valid;
  d["sampled"] = rep.sampled;
  d["degraded"] = rep.degraded;
  d["checked"] = rep.checked;
  if (rep.counterexample) {
    const Counterexample& ce = *rep.counterexample;
    py::dict c;
    c["graph"] = ce.graph_id;
    c["src"] = valuation_dict(ce.src);
    c["tgt"] = valuation_dict(ce.tgt);
    c["src_value"] = ce.src_value.to_string();
    c["tgt_value"] = ce.tgt_value.to_string();
    d["counterexample"] = c;
  }
  return d;
}

std::string py_generate(const std::string& family, int n, int m, int graphs,
                        double strict_prob, bool fan_out_free, bool fan_in_free,
                        bool terminating, std::uint64_t seed, bool with_ranking) {
  Acg a;
  std::string extra;
  if (family == "c61") a = family_61(n);
  else if (family == "c62") a = family_62(n);
  else if (family == "c63") {
    a = family_63(n);
    if (with_ranking) extra = serialize_ranking(k_ranking(n));
  } else if (family == "random") {
    RandomParams p;
    p.n = n;
    p.m = m;
    p.graphs = graphs;
    p.strict_prob = strict_prob;
    p.fan_out_free = fan_out_free;
    p.fan_in_free = fan_in_free;
    p.require_terminating = terminating;
    p.seed = seed;
    a = gen_random(p);
  } else {
    a = builtin(family);
  }
  if (with_ranking && extra.empty())
    throw ValidationError("with_ranking is only available for c63");
  return serialize_instance(a) + extra;
}

py::dict py_info(const std::string& text) {
  Acg a = parse_instance(text);
  Classification c = classify(a);
  py::dict d;
  d["name"] = a.name;
  d["m"] = a.flowpoints.size();
  d["n"] = a.var_count();
  d["graphs"] = a.graphs.size();
  d["fan_in_free"] = c.fan_in_free;
  d["fan_out_free"] = c.fan_out_free;
  d["strict"] = c.strict;
  d["strongly_connected"] = c.strongly_connected;
  d["scc_count"] = cfg_sccs(a).size();
  d["mtp_size"] = compute_mtp(a).size();
  return d;
}

}  // namespace

PYBIND11_MODULE(_sct, mod) {
  mod.doc() = "size-change termination analysis and ranking-function synthesis";

  py::register_exception<ParseError>(mod, "ParseError");
  py::register_exception<ValidationError>(mod, "ValidationError");
  py::register_exception<ClassError>(mod, "ClassError");
  py::register_exception<ResourceError>(mod, "ResourceError");

  mod.def("decide", &py_decide, py::arg("text"), py::arg("all_graphs") = false,
          py::arg("max_elements") = std::size_t{1'000'000},
          "Decide size-change termination of an instance given as text.");
  mod.def("rank", &py_rank, py::arg("text"), py::arg("mode") = "auto",
          py::arg("simplify") = true,
          "Synthesize a ranking document; returns its canonical text.");
  mod.def("verify", &py_verify, py::arg("instance_text"), py::arg("ranking_text"),
          py::arg("exhaustive") = true, py::arg("samples") = 100'000ULL,
          py::arg("seed") = 0,
          "Check a ranking document against an instance over the bounded grid.");
  mod.def("generate", &py_generate, py::arg("family"), py::arg("n") = 2,
          py::arg("m") = 1, py::arg("graphs") = 2, py::arg("strict_prob") = 0.5,
          py::arg("fan_out_free") = false, py::arg("fan_in_free") = false,
          py::arg("terminating") = false, py::arg("seed") = 0,
          py::arg("with_ranking") = false,
          "Emit a named or random instance as text.");
  mod.def("info", &py_info, py::arg("text"),
          "Structural facts about an instance.");
}
