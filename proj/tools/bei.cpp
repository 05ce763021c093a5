#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bei/constructors.hpp"
#include "bei/harness.hpp"
#include "bei/io.hpp"
#include "bei/properties.hpp"

namespace {

using namespace bei;

constexpr int kExitOk = 0;
constexpr int kExitFindings = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<double> budget_secs;
  int max_nonfree = 24;
  bool json = false;
  bool timing = false;
  unsigned workers = 1;

  /// --budget wins over BEI_BUDGET_SECS, which wins over 5 seconds.
  double seconds() const {
    if (budget_secs) return *budget_secs;
    if (const char* env = std::getenv("BEI_BUDGET_SECS"); env && *env) {
      try {
        return std::stod(env);
      } catch (const std::exception&) {
        throw UsageError(std::string("BEI_BUDGET_SECS is not a number: ") + env);
      }
    }
    return 5.0;
  }

  SuOptions su_options() const {
    SuOptions o;
    o.enumeration.budget.max_nonfree = max_nonfree;
    o.enumeration.budget.deadline = Deadline::after(std::chrono::duration<double>(seconds()));
    o.enumeration.workers = workers;
    return o;
  }

  HarnessOptions harness_options() const {
    HarnessOptions o;
    o.workers = workers;
    o.graph_seconds = seconds();
    o.max_nonfree = max_nonfree;
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_json = true) {
  cmd->add_option("--budget", c.budget_secs, "Time budget in seconds (overrides BEI_BUDGET_SECS)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-nonfree", c.max_nonfree, "Largest enumerable number of non-free vertices")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  if (with_json) cmd->add_flag("--json", c.json, "Emit JSON");
}

/// Human rendering of a report object: nested keys indented, scalar arrays
/// inline.
void render_text(std::ostream& out, const Json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar_array = [](const Json& a) {
    for (const auto& x : a) {
      if (x.is_object() || (x.is_array() && !x.empty() && x.front().is_object())) return false;
    }
    return true;
  };
  auto flat = [&](const Json& o) {
    for (const auto& x : o) {
      if (x.is_object() || (x.is_array() && !scalar_array(x))) return false;
    }
    return true;
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    const std::string key = j.is_object() ? it.key() : "-";
    if (v.is_object() && j.is_array() && flat(v)) {
      out << pad << "-";
      const char* sep = " ";
      for (auto f = v.begin(); f != v.end(); ++f) {
        out << sep << f.key() << "=" << (f.value().is_string() ? f.value().get<std::string>() : f.value().dump());
        sep = " ";
      }
      out << "\n";
    } else if (v.is_object()) {
      out << pad << key << ":\n";
      render_text(out, v, indent + 1);
    } else if (v.is_array() && !scalar_array(v)) {
      out << pad << key << ":\n";
      render_text(out, v, indent + 1);
    } else if (v.is_string()) {
      out << pad << key << ": " << v.get<std::string>() << "\n";
    } else {
      out << pad << key << ": " << v.dump() << "\n";
    }
  }
}

void emit(const Json& report, bool json) {
  if (json) {
    std::cout << report.dump(2) << "\n";
  } else {
    render_text(std::cout, report);
  }
}

GraphFormat parse_format(const std::string& s) {
  if (s == "edgelist") return GraphFormat::edgelist;
  if (s == "graph6") return GraphFormat::graph6;
  throw UsageError("unknown format '" + s + "' (expected edgelist or graph6)");
}

Graph load(const std::string& path, const std::string& format) {
  std::vector<ParseWarning> warnings;
  auto g = load_graph(path, parse_format(format), &warnings);
  for (const auto& w : warnings) std::cerr << path << ": line " << w.line << ": warning: " << w.message << "\n";
  return g;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " '" + s + "'");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
  std::string file;
  std::string format = "edgelist";
  std::string props = "unmixed,accessible,su";
  bool cutsets = false;
  bool trace = false;
};

int run_analyze(const AnalyzeArgs& a, const Common& c) {
  const auto g = load(a.file, a.format);
  const auto opts = c.su_options();
  Json report = {{"graph", graph_summary_json(g)}};
  Json timing = Json::object();
  Json props = Json::object();

  auto t0 = std::chrono::steady_clock::now();
  report["cutsets"] = family_json(enumerate_cutsets(g, opts.enumeration), a.cutsets);
  timing["cutsets"] = seconds_since(t0);

  for (const auto& p : split(a.props, ',')) {
    t0 = std::chrono::steady_clock::now();
    if (p == "unmixed") {
      auto u = is_unmixed(g, opts.enumeration);
      props["unmixed"] = {{"unmixed", u.unmixed},
                          {"witness", u.witness ? cutset_json(*u.witness) : Json(nullptr)}};
    } else if (p == "accessible") {
      props["accessible"] = accessibility_json(is_accessible(g, opts.enumeration), a.cutsets);
    } else if (p == "su") {
      props["strongly_unmixed"] = strongly_unmixed_json(is_strongly_unmixed(g, opts), a.trace);
    } else if (p.rfind("rcut=", 0) == 0) {
      const int r = to_int(p.substr(5), "rcut value");
      if (r < 1) throw UsageError("rcut needs r >= 1");
      props["r_cut_connected"] = {{"r", r},
                                  {"r_cut_connected", is_r_cut_connected(g, r)},
                                  {"strongly_r_cut_connected", is_strongly_r_cut_connected(g, r)}};
    } else if (p == "cm") {
      props["cm"] = cm_json(cm_verdict(g, opts));
    } else {
      throw UsageError("unknown property '" + p + "' (expected unmixed, accessible, su, rcut=R, cm)");
    }
    timing[p] = seconds_since(t0);
  }
  report["properties"] = std::move(props);
  if (c.timing) report["timing"] = std::move(timing);
  emit(report, c.json);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// decompose / blocks / construct

int run_decompose(const std::string& file, const std::string& format, bool all, const Common& c) {
  const auto g = load(file, format);
  const auto report = primary_decomposition(g, c.su_options().enumeration);
  if (c.json) {
    std::cout << decomposition_json(report, all).dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "T\tc(T)\theight\n";
  for (const auto& p : report.components) {
    std::cout << to_string(p.killed) << "\t" << p.clique_supports.size() << "\t" << p.height << "\n";
  }
  std::cout << "# primes: " << report.components.size() << ", heights " << report.min_height << ".."
            << report.max_height << ", unmixed: " << (report.unmixed ? "true" : "false") << "\n";
  if (report.witness) {
    std::cout << "# witness: " << to_string(report.witness->members) << " leaves "
              << report.witness->component_count << " components\n";
  }
  return kExitOk;
}

int run_blocks(const std::string& file, const std::string& format, bool whiskered, const Common& c) {
  const auto g = load(file, format);
  Json out = Json::array();
  for (const auto& block : blocks(g).blocks) {
    const auto cls = classify_block(g, block);
    Json entry = {{"block", cls.block}, {"class", to_string(cls.kind)}};
    if (whiskered) entry["whiskered"] = graph_json(cls.whiskered);
    out.push_back(std::move(entry));
    if (!c.json) {
      std::cout << "block " << to_string(cls.block) << ": " << to_string(cls.kind) << "\n";
      if (whiskered) {
        std::istringstream lines(serialize_edge_list(cls.whiskered));
        for (std::string line; std::getline(lines, line);) std::cout << "  " << line << "\n";
      }
    }
  }
  if (c.json) std::cout << Json{{"blocks", out}}.dump(2) << "\n";
  return kExitOk;
}

void print_graph(const Graph& g, const std::string& format, bool json) {
  if (json) {
    std::cout << graph_json(g).dump(2) << "\n";
  } else if (parse_format(format) == GraphFormat::graph6) {
    std::cout << encode_graph6(g) << "\n";
  } else {
    std::cout << serialize_edge_list(g);
  }
}

// ---------------------------------------------------------------------------
// verify / search

FamilySpec parse_family(const std::string& text, std::uint64_t seed) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw UsageError("empty family");
  const auto& kind = parts[0];
  if (kind == "corpus" && parts.size() == 1) return FamilySpec::corpus();
  if (kind == "exhaustive" && parts.size() == 2) {
    const int n = to_int(parts[1], "vertex count");
    if (n < 1 || n > 6) throw UsageError("exhaustive families cover 1..6 vertices; use graph6:FILE beyond");
    return FamilySpec::exhaustive_connected(1, n);
  }
  if (kind == "trees" && parts.size() == 3) {
    const int count = to_int(parts[1], "tree count");
    const int max_n = to_int(parts[2], "tree size");
    if (count < 0 || max_n < 2) throw UsageError("trees:COUNT:MAXN needs COUNT >= 0 and MAXN >= 2");
    return FamilySpec::random_block_trees(static_cast<std::size_t>(count), max_n, seed);
  }
  if (kind == "graph6" && parts.size() >= 2) {
    return FamilySpec::graph6_file(text.substr(text.find(':') + 1));
  }
  if (kind == "stars" && parts.size() == 2) return FamilySpec::star_family(to_int(parts[1], "r"));
  throw UsageError("unknown family '" + text +
                   "' (expected corpus, exhaustive:N, trees:COUNT:MAXN, graph6:FILE, stars:R)");
}

int finish_suite(const SuiteReport& report, const Common& c) {
  Json out = suite_json(report);
  if (c.timing) out["elapsed_seconds"] = report.elapsed_seconds;
  emit(out, c.json);
  if (!report.violations.empty() || !report.candidates.empty()) return kExitFindings;
  for (const auto& s : report.skips) {
    if (s.budget_exceeded) return kExitBudget;
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  std::optional<std::string> family;
  std::uint64_t seed = 1;
  int r_max = 5;
  int r = 3;
  int n_max = 6;
};

int run_verify(const VerifyArgs& a, const Common& c) {
  const auto options = c.harness_options();
  if (a.suite == "block") {
    return finish_suite(verify_block_theorem(parse_family(a.family.value_or("corpus"), a.seed), options), c);
  }
  if (a.suite == "star") {
    return finish_suite(verify_star_theorem(a.r_max, {{3, 2, 2}, {4, 3, 3}, {5, 3, 3}}, options), c);
  }
  if (a.suite == "regular") {
    const auto fam = parse_family(a.family.value_or("exhaustive:6"), a.seed);
    return finish_suite(verify_regular_classification(fam, a.n_max, a.r, options), c);
  }
  if (a.suite == "gluing") return finish_suite(verify_gluing_theorem(default_gluing_pairs(), options), c);
  if (a.suite == "conjecture") {
    return finish_suite(search_conjecture(parse_family(a.family.value_or("corpus"), a.seed), options), c);
  }
  throw UsageError("unknown suite '" + a.suite + "' (expected block, star, regular, gluing, conjecture)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cutsets, unmixedness, accessibility and strong unmixedness of graphs"};
  app.require_subcommand(1);
  Common common;

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "Report structure, cutsets and property verdicts");
  cmd_analyze->add_option("file", analyze.file, "Graph file")->required();
  cmd_analyze->add_option("--format", analyze.format, "edgelist or graph6");
  cmd_analyze->add_option("--props", analyze.props, "Comma list of unmixed, accessible, su, rcut=R, cm");
  cmd_analyze->add_flag("--cutsets", analyze.cutsets, "Emit the full cutset family even when large");
  cmd_analyze->add_flag("--trace", analyze.trace, "Emit every node of the strong-unmixedness trace");
  cmd_analyze->add_flag("--timing", common.timing, "Include timings (output is then not reproducible)");
  add_common(cmd_analyze, common);

  std::string file;
  std::string format = "edgelist";
  bool all = false;
  auto* cmd_decompose = app.add_subcommand("decompose", "Primary decomposition table: T, c(T), height");
  cmd_decompose->add_option("file", file, "Graph file")->required();
  cmd_decompose->add_option("--format", format, "edgelist or graph6");
  cmd_decompose->add_flag("--all", all, "Do not elide large families in JSON");
  add_common(cmd_decompose, common);

  bool whiskered = false;
  auto* cmd_blocks = app.add_subcommand("blocks", "Blocks, their classes and optionally each whiskered block");
  cmd_blocks->add_option("file", file, "Graph file")->required();
  cmd_blocks->add_option("--format", format, "edgelist or graph6");
  cmd_blocks->add_flag("--whiskered", whiskered, "Emit each block with whiskers");
  add_common(cmd_blocks, common);

  auto* cmd_construct = app.add_subcommand("construct", "Build a graph");
  cmd_construct->require_subcommand(1);
  std::string out_format = "edgelist";
  int m = 0, n = 0, r = 0;
  auto* cmd_star = cmd_construct->add_subcommand("star", "Star product K_M *_R K_N");
  cmd_star->add_option("M", m)->required();
  cmd_star->add_option("N", n)->required();
  cmd_star->add_option("R", r)->required();
  cmd_star->add_flag("--whiskered", whiskered, "Add whiskers at x_2..x_R and y_2..y_R");
  cmd_star->add_option("--format", out_format, "edgelist or graph6");
  cmd_star->add_flag("--json", common.json, "Emit JSON");
  std::string corpus_name;
  auto* cmd_corpus = cmd_construct->add_subcommand("corpus", "A named figure graph");
  cmd_corpus->add_option("name", corpus_name)->required();
  cmd_corpus->add_option("--format", out_format, "edgelist or graph6");
  cmd_corpus->add_flag("--json", common.json, "Emit JSON");

  VerifyArgs verify;
  auto* cmd_verify = app.add_subcommand("verify", "Run a verification suite");
  cmd_verify->add_option("suite", verify.suite, "block, star, regular, gluing or conjecture")->required();
  cmd_verify->add_option("--family", verify.family,
                         "corpus, exhaustive:N, trees:COUNT:MAXN, graph6:FILE or stars:R");
  cmd_verify->add_option("--seed", verify.seed, "Seed for random families");
  cmd_verify->add_option("--r-max", verify.r_max, "Largest r for the star suite");
  cmd_verify->add_option("--r", verify.r, "Regularity for the regular suite");
  cmd_verify->add_option("--n-max", verify.n_max, "Largest order for the regular suite");
  cmd_verify->add_flag("--timing", common.timing, "Include elapsed time");
  add_common(cmd_verify, common);

  std::string search_target;
  std::optional<int> search_max_n;
  std::optional<std::string> search_graph6;
  auto* cmd_search = app.add_subcommand("search", "Search for counterexample candidates");
  cmd_search->add_option("target", search_target, "conjecture")->required()->check(CLI::IsMember({"conjecture"}));
  auto* opt_max_n = cmd_search->add_option("--max-n", search_max_n, "All connected graphs up to N vertices (N <= 6)");
  cmd_search->add_option("--graph6", search_graph6, "Graphs from a graph6 file")->excludes(opt_max_n);
  cmd_search->add_flag("--timing", common.timing, "Include elapsed time");
  add_common(cmd_search, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_analyze) return run_analyze(analyze, common);
    if (*cmd_decompose) return run_decompose(file, format, all, common);
    if (*cmd_blocks) return run_blocks(file, format, whiskered, common);
    if (*cmd_star) {
      print_graph(whiskered ? whiskered_star_product(m, n, r) : star_product(m, n, r), out_format, common.json);
      return kExitOk;
    }
    if (*cmd_corpus) {
      print_graph(corpus_graph(corpus_name), out_format, common.json);
      return kExitOk;
    }
    if (*cmd_verify) return run_verify(verify, common);
    if (*cmd_search) {
      FamilySpec fam;
      if (search_graph6) {
        fam = FamilySpec::graph6_file(*search_graph6);
      } else {
        const int max_n = search_max_n.value_or(6);
        if (max_n < 1 || max_n > 6) throw UsageError("--max-n must be in 1..6; use --graph6 beyond");
        fam = FamilySpec::exhaustive_connected(1, max_n);
      }
      return finish_suite(search_conjecture(fam, common.harness_options()), common);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
