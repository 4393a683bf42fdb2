#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fewham/connectivity.hpp"
#include "fewham/constructions.hpp"
#include "fewham/corpus.hpp"
#include "fewham/graph_io.hpp"
#include "fewham/report.hpp"
#include "fewham/verify.hpp"

namespace {

using namespace fewham;
using Clock = std::chrono::steady_clock;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 2;
constexpr int kExitInputError = 3;
constexpr int kExitBudgetExhausted = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write " + path);
  out << content;
}

std::string command_echo(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

struct GenerateArgs {
  std::string family;
  std::string out;
  std::string report_path;
  std::string format = "auto"; // g6 | json | dot
  std::string pattern_file;
  std::string template_file;
  int ell = 2;
  int k = 0;
  int m = 3;
  int workers = 1;
};

LadderPattern generate_pattern(const GenerateArgs& args, const GadgetSpec& spec) {
  if (!args.pattern_file.empty()) {
    return pattern_from_json(nlohmann::json::parse(read_file(args.pattern_file)));
  }
  std::vector<int> probes{2, 3, 4};
  return synthesize_ladder_pattern(spec, probes, args.workers).pattern;
}

std::string render(const MultiGraph& g, const std::string& format) {
  if (format == "dot") return write_dot(g);
  if (format == "json") return write_multigraph_json(g);
  if (format == "g6") return write_graph6(g) + "\n";
  // auto: graph6 for simple graphs, JSON otherwise
  return g.simple() ? write_graph6(g) + "\n" : write_multigraph_json(g);
}

int cmd_generate(const GenerateArgs& args, const std::string& echo) {
  RunReport report(echo, args.family);
  MultiGraph graph;
  nlohmann::json extra;

  if (args.family == "petersen") {
    graph = petersen();
  } else if (args.family == "meredith") {
    graph = meredith_graph();
  } else if (args.family == "gadget") {
    GadgetSearchStats stats;
    GadgetSpec spec = find_gadget(&stats);
    graph = spec.graph;
    extra["gadget"] = gadget_to_json(spec);
    extra["search"] = {{"paths_tried", stats.paths_tried},
                       {"rejected_no_split_two_factor", stats.rejected_no_split_two_factor},
                       {"rejected_conditions", stats.rejected_conditions}};
  } else if (args.family == "hg" || args.family == "finalized") {
    GadgetSpec spec = find_gadget();
    LadderPattern pattern = generate_pattern(args, spec);
    extra["pattern"] = pattern_to_json(pattern);
    HgAssembly hg = assemble_hg(spec, {args.ell, pattern});
    graph = args.family == "hg" ? hg.graph : expand_double_edge_ends(hg.graph);
  } else if (args.family == "triangle") {
    graph = triangle_family(args.k);
  } else if (args.family == "fig1") {
    std::optional<Fig1Template> tmpl;
    if (!args.template_file.empty()) {
      tmpl = fig1_template_from_json(nlohmann::json::parse(read_file(args.template_file)));
    }
    graph = fig1_family(args.m, tmpl); // throws FigureTranscriptionRequired without template
  } else {
    std::cerr << "unknown family: " << args.family << "\n";
    return kExitInputError;
  }

  report.describe_graph(graph);
  for (auto& [k, v] : extra.items()) report.set_result(k, v);

  std::string body = render(graph, args.format);
  if (args.out.empty()) {
    std::cout << body;
  } else {
    write_file(args.out, body);
    std::cout << args.family << ": " << graph.n() << " vertices, "
              << graph.total_multiplicity() << " edges -> " << args.out << "\n";
  }
  if (!args.report_path.empty()) report.write_file(args.report_path);
  return kExitPass;
}

struct CountArgs {
  std::string input;
  std::string through;
  std::string report_path;
  std::string engine = "auto";
  bool enumerate = false;
  std::uint64_t budget_nodes = 0;
  std::uint64_t budget_ms = 0;
  int workers = 1;
};

int cmd_count(const CountArgs& args, const std::string& echo) {
  auto t0 = Clock::now();
  std::string bytes = read_file(args.input);
  MultiGraph g = parse_any_graph(bytes);
  RunReport report(echo, bytes);
  report.describe_graph(g);

  CountOptions opt;
  opt.workers = args.workers;
  opt.retain_cycles = args.enumerate;
  if (args.budget_nodes) opt.node_budget = args.budget_nodes;
  if (args.budget_ms) opt.time_budget = std::chrono::milliseconds(args.budget_ms);
  if (args.engine == "backtrack") opt.engine = CountEngine::kBacktrack;
  else if (args.engine == "dp") opt.engine = CountEngine::kInterfaceDp;
  else if (args.engine != "auto") {
    std::cerr << "unknown engine: " << args.engine << "\n";
    return kExitInputError;
  }

  HamiltonReport rep;
  if (!args.through.empty()) {
    int u, v, copy = 0;
    if (std::sscanf(args.through.c_str(), "%d,%d,%d", &u, &v, &copy) < 2) {
      std::cerr << "--through-edge expects U,V[,COPY]\n";
      return kExitInputError;
    }
    opt.forced_include.push_back(EdgeRef(u, v, copy));
    opt.engine = CountEngine::kBacktrack;
    rep = count_hamiltonian_cycles(g, opt);
  } else {
    rep = count_hamiltonian_cycles(g, opt);
  }

  std::cout << to_string(rep.count) << "\n";
  if (args.enumerate) {
    for (const HamiltonCycle& c : rep.cycles) {
      for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        if (i) std::cout << ' ';
        std::cout << c.vertices[i];
      }
      bool copies = std::any_of(c.copies.begin(), c.copies.end(), [](int k) { return k > 0; });
      if (copies) {
        std::cout << " |";
        for (int k : c.copies) std::cout << ' ' << k;
      }
      std::cout << "\n";
    }
  }

  report.set_result("ham_count", bigcount_json(rep.count));
  report.set_stat("nodes_expanded", rep.nodes_expanded);
  report.set_stat("budget_exhausted", rep.budget_exhausted);
  report.set_stat("engine",
                  rep.engine_used == CountEngine::kInterfaceDp ? "interface-dp" : "backtrack");
  report.set_stat("workers", args.workers);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  report.set_stat("elapsed_ms", ms);
  if (!args.report_path.empty()) report.write_file(args.report_path);
  return rep.budget_exhausted ? kExitBudgetExhausted : kExitPass;
}

struct VerifyArgs {
  std::string target; // gadget | conditions | family | suite
  std::string input;
  std::string suite;
  std::string report_path;
  std::string pattern_file;
  std::string ell_set = "2,3,4";
  std::uint64_t seed = 20240917;
  int n_max = 16;
  int count = 50;
  int workers = 1;
};

std::vector<int> parse_ell_set(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<CatalogEntry> suite_corpus(const VerifyArgs& args) {
  Rng rng(args.seed);
  std::vector<CatalogEntry> corpus;
  if (args.suite == "smith") {
    for (int i = 0; i < args.count; ++i) {
      int n = 8 + static_cast<int>(rng() % 5) * 2; // even sizes 8..16
      n = std::min(n, args.n_max);
      corpus.push_back({"cubic-" + std::to_string(i), random_regular_graph(n, 3, rng)});
    }
  } else if (args.suite == "thomason") {
    for (int i = 0; i < args.count; ++i) {
      int n = 8 + static_cast<int>(rng() % 5) * 2;
      n = std::min(n, args.n_max);
      corpus.push_back({"cubic-" + std::to_string(i), random_regular_graph(n, 3, rng)});
    }
    for (int i = 0; i < args.count / 2; ++i) {
      int n = 8 + static_cast<int>(rng() % 4) * 2;
      n = std::min(n, 14);
      corpus.push_back({"quintic-" + std::to_string(i), random_regular_graph(n, 5, rng)});
    }
  } else {
    throw GraphError("unknown suite: " + args.suite + " (expected smith or thomason)");
  }
  return corpus;
}

int cmd_verify(const VerifyArgs& args, const std::string& echo) {
  RunReport report(echo, args.target + ":" + args.suite);
  CertificationReport cert;

  if (args.target == "gadget") {
    GadgetSpec spec = find_gadget();
    report.describe_graph(spec.graph);
    report.set_result("gadget", gadget_to_json(spec));
    cert = verify_conditions(spec);
  } else if (args.target == "conditions") {
    if (args.input.empty()) {
      std::cerr << "verify conditions needs --input SPEC.json\n";
      return kExitInputError;
    }
    GadgetSpec spec = gadget_from_json(nlohmann::json::parse(read_file(args.input)));
    report.describe_graph(spec.graph);
    cert = verify_conditions(spec);
  } else if (args.target == "family") {
    GadgetSpec spec = args.input.empty()
                          ? find_gadget()
                          : gadget_from_json(nlohmann::json::parse(read_file(args.input)));
    LadderPattern pattern;
    if (!args.pattern_file.empty()) {
      pattern = pattern_from_json(nlohmann::json::parse(read_file(args.pattern_file)));
    } else {
      std::vector<int> probes{2, 3, 4};
      SynthesisResult synth = synthesize_ladder_pattern(spec, probes, args.workers);
      report.set_result("pattern", pattern_to_json(synth.pattern));
      pattern = synth.pattern;
    }
    std::vector<int> ells = parse_ell_set(args.ell_set);
    cert = certify_family(spec, pattern, ells, args.workers);
  } else if (args.target == "suite") {
    auto corpus = suite_corpus(args);
    cert = property_suite(corpus, args.workers);
  } else {
    std::cerr << "unknown verify target: " << args.target << "\n";
    return kExitInputError;
  }

  nlohmann::json cj = cert.to_json(true);
  report.set_result("checks", cj["checks"]);
  report.set_result("overall", cert.overall);
  if (cj.contains("constants")) report.set_result("constants", cj["constants"]);
  if (!args.report_path.empty()) report.write_file(args.report_path);

  for (const auto& [name, r] : cert.checks) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!r.pass && !r.witness.is_null()) std::cout << "       " << r.witness.dump() << "\n";
  }
  if (!cert.hg_constants.empty()) {
    std::cout << "constants:";
    for (auto& [ell, c] : cert.hg_constants) {
      std::cout << " hg[" << ell << "]=" << to_string(c);
    }
    for (auto& [ell, c] : cert.finalized_constants) {
      std::cout << " finalized[" << ell << "]=" << to_string(c);
    }
    std::cout << "\n";
  }
  std::cout << (cert.overall ? "overall: PASS" : "overall: FAIL") << "\n";
  return cert.overall ? kExitPass : kExitCheckFailure;
}

} // namespace

int main(int argc, char** argv) {
  std::string echo = command_echo(argc, argv);
  CLI::App app{"fewham: builders and certifiers for 4-regular 4-connected graph families "
               "with constantly many Hamiltonian cycles"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "emit a named graph family member");
  generate->add_option("family", gen.family,
                       "petersen|gadget|hg|finalized|triangle|fig1|meredith")->required();
  generate->add_option("--out,-o", gen.out, "output path (stdout when omitted)");
  generate->add_option("--report", gen.report_path, "write a JSON run report");
  generate->add_option("--format", gen.format, "g6|json|dot|auto");
  generate->add_option("--ell", gen.ell, "stretching parameter for hg/finalized");
  generate->add_option("--k", gen.k, "triangle replacements for the triangle family");
  generate->add_option("--m", gen.m, "block count for the fig1 family");
  generate->add_option("--pattern", gen.pattern_file, "ladder pattern JSON (default: synthesize)");
  generate->add_option("--template", gen.template_file, "fig1 block template JSON");
  generate->add_option("--workers", gen.workers, "search parallelism");

  CountArgs cnt;
  CLI::App* count = app.add_subcommand("count", "count Hamiltonian cycles of a graph file");
  count->add_option("input", cnt.input, "graph6 or multigraph JSON file")->required();
  count->add_option("--through-edge", cnt.through, "U,V[,COPY]: count cycles through one edge");
  count->add_flag("--enumerate", cnt.enumerate, "print each cycle as a vertex sequence");
  count->add_option("--budget-nodes", cnt.budget_nodes, "search node budget");
  count->add_option("--budget-ms", cnt.budget_ms, "wall-clock budget in ms");
  count->add_option("--workers", cnt.workers, "worker threads");
  count->add_option("--engine", cnt.engine, "auto|backtrack|dp");
  count->add_option("--report", cnt.report_path, "write a JSON run report");

  VerifyArgs ver;
  CLI::App* verify = app.add_subcommand("verify", "run condition checks and certifications");
  verify->add_option("target", ver.target, "gadget|conditions|family|suite")->required();
  verify->add_option("--input", ver.input, "gadget spec JSON (conditions/family)");
  verify->add_option("--suite", ver.suite, "smith|thomason");
  verify->add_option("--ell-set", ver.ell_set, "comma list of stretching values");
  verify->add_option("--pattern", ver.pattern_file, "ladder pattern JSON");
  verify->add_option("--seed", ver.seed, "corpus seed");
  verify->add_option("--n", ver.n_max, "max corpus graph size");
  verify->add_option("--count", ver.count, "corpus size");
  verify->add_option("--workers", ver.workers, "worker threads");
  verify->add_option("--report", ver.report_path, "write a JSON run report");

  try {
    app.parse(argc, argv);
    if (*generate) return cmd_generate(gen, echo);
    if (*count) return cmd_count(cnt, echo);
    if (*verify) return cmd_verify(ver, echo);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const FigureTranscriptionRequired& e) {
    std::cerr << e.what() << "\n";
    return kExitInputError;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const SynthesisError& e) {
    std::cerr << "synthesis failed: " << e.what() << "\n";
    for (const auto& miss : e.near_misses) {
      std::cerr << "  " << miss.pattern << ": " << miss.reason << "\n";
    }
    return kExitCheckFailure;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitPass;
}
