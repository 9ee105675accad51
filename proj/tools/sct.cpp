#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sct/decide.hpp"
#include "sct/generators.hpp"
#include "sct/model.hpp"
#include "sct/preserver.hpp"
#include "sct/rankgen.hpp"
#include "sct/ranking.hpp"
#include "sct/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sct::ValidationError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sct::ValidationError("cannot write file: " + path);
  out << text;
}

std::string arcs_to_string(const std::vector<sct::Arc>& arcs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (i) os << ",";
    os << arcs[i].src << (arcs[i].label == sct::Label::Strict ? ">" : ">=")
       << arcs[i].dst;
  }
  return os.str();
}

std::string path_to_string(const std::vector<std::string>& path) {
  std::ostringstream os;
  for (std::size_t i = 0; i < path.size(); ++i) os << (i ? ";" : "") << path[i];
  return os.str();
}

void print_witness(const sct::ClosureElement& w, bool machine) {
  if (machine) {
    std::cout << "witness_source=" << w.source << "\n"
              << "witness_target=" << w.target << "\n"
              << "witness_arcs=" << arcs_to_string(w.arcs) << "\n"
              << "witness_path=" << path_to_string(w.witness_path) << "\n";
  } else {
    std::cout << "witness: " << w.source << " -> " << w.target << "\n"
              << "  arcs: " << arcs_to_string(w.arcs) << "\n"
              << "  path: " << path_to_string(w.witness_path) << "\n";
  }
}

std::string val_to_string(const sct::Valuation& v) {
  std::ostringstream os;
  os << v.flowpoint << "[";
  bool first = true;
  for (const auto& [var, value] : v.values) {
    if (!first) os << ",";
    first = false;
    os << var << "=" << value;
  }
  os << "]";
  return os.str();
}

struct Options {
  bool machine = false;

  // decide
  std::string decide_file;
  bool all_graphs = false;
  bool witness = false;
  std::size_t max_elements = 1'000'000;

  // rank
  std::string rank_file;
  std::string rank_mode = "auto";
  bool no_simplify = false;
  std::string rank_out;

  // verify
  std::string verify_file;
  std::string ranking_file;
  bool exhaustive = false;
  std::optional<unsigned long long> samples;
  std::uint64_t sample_seed = 0;

  // gen
  std::string family;
  int n = 2;
  std::string gen_out;
  bool with_ranking = false;
  int rand_m = 1;
  int rand_graphs = 2;
  double strict_prob = 0.5;
  bool fan_out_free = false;
  bool fan_in_free = false;
  bool terminating = false;
  std::uint64_t gen_seed = 0;

  // info
  std::string info_file;
};

int cmd_decide(const Options& o) {
  sct::Acg a = sct::parse_instance(read_file(o.decide_file));
  sct::ClosureOptions copts{o.max_elements};
  sct::Verdict v = sct::decide_sct(
      a, o.all_graphs ? sct::DecideVariant::AllGraphs : sct::DecideVariant::IdempotentOnly,
      copts);
  if (o.machine)
    std::cout << "verdict=" << (v.terminating ? "terminating" : "non-terminating")
              << "\n";
  else
    std::cout << (v.terminating ? "terminating" : "non-terminating") << "\n";
  if (!v.terminating && o.witness) print_witness(*v.witness, o.machine);
  return v.terminating ? kOk : kNegative;
}

int cmd_rank(const Options& o) {
  sct::Acg a = sct::parse_instance(read_file(o.rank_file));
  sct::Verdict v = sct::decide_sct(a);
  if (!v.terminating) {
    if (o.machine)
      std::cout << "verdict=non-terminating\n";
    else
      std::cout << "non-terminating\n";
    print_witness(*v.witness, o.machine);
    return kNegative;
  }

  sct::SynthesisOptions sopts{!o.no_simplify};
  sct::SynthMode mode = sct::SynthMode::Auto;
  if (o.rank_mode == "fanout") mode = sct::SynthMode::Fanout;
  else if (o.rank_mode == "fanin") mode = sct::SynthMode::Fanin;
  else if (o.rank_mode != "auto")
    throw sct::ValidationError("unknown mode: " + o.rank_mode);

  sct::RankingDoc doc;
  if (sct::cfg_sccs(a).size() == 1) {
    // strongly connected: no component prefix
    sct::Classification c = sct::classify(a);
    if (mode == sct::SynthMode::Auto)
      mode = c.fan_out_free ? sct::SynthMode::Fanout
             : c.fan_in_free ? sct::SynthMode::Fanin
                             : throw sct::ClassError(
                                   "instance is neither fan-out nor fan-in free");
    doc = mode == sct::SynthMode::Fanout ? sct::synthesize_fanout(a, sopts)
                                         : sct::synthesize_fanin(a, sopts);
  } else {
    doc = sct::synthesize(a, mode, sopts);
  }

  std::string text = sct::serialize_ranking(doc);
  if (o.machine)
    std::cout << "status=ok\nmode=" << (doc.mode == sct::Mode::Min ? "min" : "max")
              << "\n";
  if (!o.rank_out.empty())
    write_file(o.rank_out, text);
  else if (!o.machine)
    std::cout << text;
  return kOk;
}

int cmd_verify(const Options& o) {
  sct::Acg a = sct::parse_instance(read_file(o.verify_file));
  sct::RankingDoc doc = sct::parse_ranking(read_file(o.ranking_file));
  sct::VerifyBudget budget;
  if (o.samples) {
    budget.exhaustive = false;
    budget.samples = *o.samples;
    budget.seed = o.sample_seed;
  }
  sct::VerifyReport rep = sct::verify_ranking(a, doc, budget);
  if (rep.degraded && !o.samples)
    throw sct::ResourceError(
        "exhaustive grid exceeds the pair budget; rerun with --samples");
  if (o.machine) {
    std::cout << "valid=" << (rep.valid ? "true" : "false") << "\n"
              << "mode=" << (rep.sampled ? "sampled" : "exhaustive") << "\n"
              << "checked=" << rep.checked << "\n";
    if (rep.counterexample) {
      const sct::Counterexample& ce = *rep.counterexample;
      std::cout << "counterexample_graph=" << ce.graph_id << "\n"
                << "counterexample_src=" << val_to_string(ce.src) << "\n"
                << "counterexample_tgt=" << val_to_string(ce.tgt) << "\n"
                << "counterexample_src_value=" << ce.src_value.to_string() << "\n"
                << "counterexample_tgt_value=" << ce.tgt_value.to_string() << "\n";
    }
  } else {
    std::cout << (rep.valid ? "valid" : "invalid") << "\n";
    if (rep.counterexample) {
      const sct::Counterexample& ce = *rep.counterexample;
      std::cout << "counterexample under graph " << ce.graph_id << ":\n"
                << "  source " << val_to_string(ce.src) << " value "
                << ce.src_value.to_string() << "\n"
                << "  target " << val_to_string(ce.tgt) << " value "
                << ce.tgt_value.to_string() << "\n";
    }
  }
  return rep.valid ? kOk : kNegative;
}

int cmd_gen(const Options& o) {
  sct::Acg a;
  std::optional<sct::RankingDoc> doc;
  if (o.family == "c61") a = sct::family_61(o.n);
  else if (o.family == "c62") a = sct::family_62(o.n);
  else if (o.family == "c63") {
    a = sct::family_63(o.n);
    if (o.with_ranking) doc = sct::k_ranking(o.n);
  } else if (o.family == "random") {
    sct::RandomParams p;
    p.n = o.n;
    p.m = o.rand_m;
    p.graphs = o.rand_graphs;
    p.strict_prob = o.strict_prob;
    p.fan_out_free = o.fan_out_free;
    p.fan_in_free = o.fan_in_free;
    p.require_terminating = o.terminating;
    p.seed = o.gen_seed;
    a = sct::gen_random(p);
  } else {
    a = sct::builtin(o.family);
  }
  if (o.with_ranking && !doc)
    throw sct::ValidationError("--with-ranking is only available for c63");

  std::string text = sct::serialize_instance(a);
  if (!o.gen_out.empty()) {
    write_file(o.gen_out, text);
    if (doc) {
      std::string rank_path = o.gen_out;
      std::size_t dot = rank_path.find_last_of('.');
      if (dot != std::string::npos) rank_path.resize(dot);
      rank_path += ".rank";
      write_file(rank_path, sct::serialize_ranking(*doc));
    }
  } else {
    std::cout << text;
    if (doc) std::cout << sct::serialize_ranking(*doc);
  }
  return kOk;
}

int cmd_info(const Options& o) {
  sct::Acg a = sct::parse_instance(read_file(o.info_file));
  sct::Classification c = sct::classify(a);
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::cout << "m=" << a.flowpoints.size() << "\n"
            << "n=" << a.var_count() << "\n"
            << "graphs=" << a.graphs.size() << "\n"
            << "fan_in_free=" << flag(c.fan_in_free) << "\n"
            << "fan_out_free=" << flag(c.fan_out_free) << "\n"
            << "strict=" << flag(c.strict) << "\n"
            << "strongly_connected=" << flag(c.strongly_connected) << "\n"
            << "scc_count=" << sct::cfg_sccs(a).size() << "\n"
            << "mtp_size=" << sct::compute_mtp(a).size() << "\n";
  try {
    std::cout << "closure_size=" << sct::closure(a, {100'000}).size() << "\n";
  } catch (const sct::ResourceError&) {
    std::cout << "closure_size=unknown\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"size-change termination analyzer and ranking-function toolkit"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--machine", o.machine, "machine-readable key=value output");

  CLI::App* decide = app.add_subcommand("decide", "decide termination");
  decide->add_option("file", o.decide_file, "instance file")->required();
  decide->add_flag("--all-graphs", o.all_graphs, "test every cyclic closure element");
  decide->add_flag("--witness", o.witness, "print a witness on a negative verdict");
  decide->add_option("--max-elements", o.max_elements, "closure element budget");

  CLI::App* rank = app.add_subcommand("rank", "synthesize a ranking function");
  rank->add_option("file", o.rank_file, "instance file")->required();
  rank->add_option("--mode", o.rank_mode, "auto|fanout|fanin")
      ->check(CLI::IsMember({"auto", "fanout", "fanin"}));
  rank->add_flag("--no-simplify", o.no_simplify, "skip set-position simplification");
  rank->add_option("--out", o.rank_out, "write the document to a file");

  CLI::App* verify = app.add_subcommand("verify", "check a ranking document");
  verify->add_option("file", o.verify_file, "instance file")->required();
  verify->add_option("--ranking", o.ranking_file, "ranking document file")->required();
  verify->add_flag("--exhaustive", o.exhaustive, "exhaustive grid check (default)");
  verify->add_option("--samples", o.samples, "sampled check with this many samples");
  verify->add_option("--seed", o.sample_seed, "sampling seed");

  CLI::App* gen = app.add_subcommand("gen", "emit a built-in or random instance");
  gen->add_option("family", o.family,
                  "c61|c62|c63|fig3|fig5|fig6|sec46|sec46_counter|random")
      ->required();
  gen->add_option("--n", o.n, "family size / variables per flow point");
  gen->add_option("--seed", o.gen_seed, "random seed");
  gen->add_option("--out", o.gen_out, "write the instance to a file");
  gen->add_flag("--with-ranking", o.with_ranking, "also emit the known ranking (c63)");
  gen->add_option("--m", o.rand_m, "random: flow points");
  gen->add_option("--graphs", o.rand_graphs, "random: graph count");
  gen->add_option("--strict-prob", o.strict_prob, "random: strict label probability");
  gen->add_flag("--fan-out-free", o.fan_out_free, "random: fan-out free graphs");
  gen->add_flag("--fan-in-free", o.fan_in_free, "random: fan-in free graphs");
  gen->add_flag("--terminating", o.terminating, "random: reject non-terminating draws");

  CLI::App* info = app.add_subcommand("info", "print instance facts");
  info->add_option("file", o.info_file, "instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (o.exhaustive && o.samples) {
      std::cerr << "error: --exhaustive conflicts with --samples\n";
      return kUsage;
    }
    if (decide->parsed()) return cmd_decide(o);
    if (rank->parsed()) return cmd_rank(o);
    if (verify->parsed()) return cmd_verify(o);
    if (gen->parsed()) return cmd_gen(o);
    if (info->parsed()) return cmd_info(o);
    return kUsage;
  } catch (const sct::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const sct::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
