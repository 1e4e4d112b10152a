#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "kinv/block.hpp"
#include "kinv/digraph.hpp"
#include "kinv/generators.hpp"
#include "kinv/instance_io.hpp"
#include "kinv/inversion.hpp"
#include "kinv/limits.hpp"
#include "kinv/oracle.hpp"
#include "kinv/tournament.hpp"
#include "kinv/tree_decomposition.hpp"
#include "kinv/treewidth_dp.hpp"

namespace {

using namespace kinv;

// exit codes: 0 yes/accepted, 1 no/rejected, 2 usage or parse, 3 resource cap
constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

SolveLimits limits_from_env() {
  SolveLimits lim;
  if (const char* v = std::getenv("KINV_ENUM_BITS")) lim.enumeration_bits = std::atoi(v);
  if (const char* v = std::getenv("KINV_TRIPLESET_CAP"))
    lim.triple_set_cap = static_cast<std::size_t>(std::atoll(v));
  if (const char* v = std::getenv("KINV_TABLE_CAP"))
    lim.table_entry_cap = static_cast<std::uint64_t>(std::atoll(v));
  if (const char* v = std::getenv("KINV_WIDTH_CAP")) lim.auto_width_cap = std::atoi(v);
  return lim;
}

std::vector<WeightSet> weights_for(const OrientedGraph& g, int k,
                                   const std::optional<WeightConstraints>& wc) {
  std::vector<WeightSet> a(static_cast<std::size_t>(g.order()), WeightSet::all_up_to(k));
  if (wc)
    for (const auto& [v, ws] : *wc)
      if (g.has_vertex(v)) a[static_cast<std::size_t>(g.local_index(v))] = ws;
  return a;
}

struct SolveReport {
  std::string algorithm;
  bool yes = false;
  std::optional<DecyclingFamily> family;
  std::optional<std::string> no_reason;
  SolveStats stats;
};

// Runs one algorithm on a normalized instance. `algo` is already resolved
// (never "auto").
SolveReport run_algorithm(const std::string& algo, const OrientedGraph& g, int k,
                          const std::optional<WeightConstraints>& wc,
                          const SolveLimits& lim, bool want_certificate,
                          const std::optional<TreeDecomposition>& td_in) {
  SolveReport rep;
  rep.algorithm = algo;
  if (algo == "brute") {
    auto fam = brute_decide(g, k, wc, lim);
    rep.yes = fam.has_value();
    if (want_certificate) rep.family = fam;
  } else if (algo == "tournament") {
    WkitOptions opt;
    opt.limits = lim;
    opt.stats = &rep.stats;
    opt.want_certificate = want_certificate;
    auto res = wkit(g, k, weights_for(g, k, wc), opt);
    rep.yes = res.yes;
    rep.family = std::move(res.family);
  } else if (algo == "block") {
    if (wc) throw std::invalid_argument("the block solver takes no weight constraints");
    BlockSolveOptions opt;
    opt.limits = lim;
    opt.stats = &rep.stats;
    opt.want_certificate = want_certificate;
    auto res = solve_block_graph(g, k, opt);
    rep.yes = res.yes;
    rep.family = std::move(res.family);
  } else if (algo == "treewidth") {
    if (wc) throw std::invalid_argument("the treewidth solver takes no weight constraints");
    TreewidthOptions opt;
    opt.limits = lim;
    opt.stats = &rep.stats;
    rep.yes = solve_treewidth_detailed(g, k, td_in, opt).yes;
  } else {
    throw std::invalid_argument("unknown algorithm: " + algo);
  }
  return rep;
}

std::string resolve_auto(const OrientedGraph& g, int k,
                         const std::optional<WeightConstraints>& wc,
                         const SolveLimits& lim, ShapeReport* shape_out) {
  ShapeReport shape = classify(g);
  std::string algo;
  if (shape.is_tournament) {
    algo = "tournament";
  } else if (!wc && shape.is_block_graph) {
    algo = "block";
  } else {
    if (!wc) {
      shape.underlying_treewidth_upper_bound = compute_tree_decomposition(g).width();
      if (*shape.underlying_treewidth_upper_bound <= lim.auto_width_cap)
        algo = "treewidth";
    }
    if (algo.empty()) {
      if (static_cast<long long>(k) * g.order() > lim.enumeration_bits)
        throw CapExceeded("no applicable solver for this instance");
      algo = "brute";
    }
  }
  if (shape_out) *shape_out = std::move(shape);
  return algo;
}

int cmd_solve(const std::string& input, std::string algo, const std::string& cert_path,
              const std::string& td_in_path, const std::string& td_out_path,
              bool exact_td) {
  const SolveLimits lim = limits_from_env();
  Instance inst = parse_instance_file(input);
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&t0] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  Normalized norm = normalize(inst.graph);
  if (norm.trivial_no) {
    std::cout << "c algorithm normalize\n";
    std::cout << "c reason " << to_string(*norm.trivial_no) << "\n";
    std::cout << "c time_ms " << elapsed_ms() << "\n";
    std::cout << "s no\n";
    if (!cert_path.empty()) {
      std::ofstream out(cert_path);
      out << format_certificate(std::nullopt);
    }
    return kExitNo;
  }
  const OrientedGraph& g = *norm.graph;

  std::optional<TreeDecomposition> td_in;
  if (!td_in_path.empty()) td_in = parse_tree_decomposition_file(td_in_path);

  ShapeReport shape;
  if (algo == "auto") algo = resolve_auto(g, inst.k, inst.constraints, lim, &shape);

  if (algo == "treewidth" && !td_out_path.empty()) {
    TreeDecomposition td =
        td_in ? *td_in
              : (exact_td ? exact_tree_decomposition(g) : compute_tree_decomposition(g));
    std::ofstream out(td_out_path);
    out << format_tree_decomposition(td);
    if (!td_in) td_in = td;
  }
  if (algo == "treewidth" && exact_td && !td_in) td_in = exact_tree_decomposition(g);

  SolveReport rep = run_algorithm(algo, g, inst.k, inst.constraints, lim,
                                  !cert_path.empty(), td_in);

  std::cout << "c algorithm " << rep.algorithm << "\n";
  if (shape.underlying_treewidth_upper_bound)
    std::cout << "c width_bound " << *shape.underlying_treewidth_upper_bound << "\n";
  if (rep.stats.peak_triple_sets > 0)
    std::cout << "c peak_triple_sets " << rep.stats.peak_triple_sets << "\n";
  if (rep.stats.peak_table_entries > 0)
    std::cout << "c peak_table_entries " << rep.stats.peak_table_entries << "\n";
  std::cout << "c time_ms " << elapsed_ms() << "\n";
  std::cout << (rep.yes ? "s yes\n" : "s no\n");

  if (!cert_path.empty()) {
    if (rep.yes && !rep.family) {
      std::cerr << "note: the " << rep.algorithm
                << " solver is decision-only; no certificate written\n";
    } else {
      std::ofstream out(cert_path);
      out << format_certificate(rep.yes ? rep.family : std::nullopt);
    }
  }
  return rep.yes ? kExitYes : kExitNo;
}

int cmd_verify(const std::string& instance_path, const std::string& cert_path) {
  Instance inst = parse_instance_file(instance_path);
  auto fam = parse_certificate_file(cert_path);
  if (!fam) {
    std::cout << "rejected no-certificate\n";
    return kExitNo;
  }
  Normalized norm = normalize(inst.graph);
  if (norm.trivial_no) {
    std::cout << "rejected " << to_string(*norm.trivial_no) << "\n";
    return kExitNo;
  }
  auto res = verify_certificate(*norm.graph, *fam, inst.k, inst.constraints);
  if (res.accepted) {
    std::cout << "accepted\n";
    return kExitYes;
  }
  std::cout << "rejected " << res.reason << "\n";
  return kExitNo;
}

int cmd_gen(const std::string& cls, int n, int k, int blocks, int max_block_size,
            int width, std::uint64_t seed, const std::string& out_path) {
  std::string text;
  if (cls == "tournament") {
    text = format_instance(gen_tournament(n, seed), k);
  } else if (cls == "block") {
    text = format_instance(gen_block_digraph(blocks, max_block_size, seed), k);
  } else if (cls == "ktree") {
    auto inst = gen_partial_ktree_digraph(n, width, seed);
    std::ostringstream elim;
    elim << "elimination-order:";
    for (Vertex v : inst.elimination_order) elim << " " << v + 1;
    text = format_instance(inst.graph, k, {elim.str()});
  } else {
    throw std::invalid_argument("unknown class: " + cls);
  }
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    out << text;
  }
  return kExitYes;
}

int cmd_bench(const std::string& suite_path, const std::string& csv_path, bool oracle) {
  const SolveLimits lim = limits_from_env();
  std::ifstream in(suite_path);
  if (!in) throw std::runtime_error("cannot open suite file: " + suite_path);
  nlohmann::json spec = nlohmann::json::parse(in);
  if (!spec.contains("suites") || !spec["suites"].is_array())
    throw std::runtime_error("suite spec needs a 'suites' array");

  std::ostringstream csv;
  csv << "id,n,k,class,algorithm,answer,time_ms,peak_state";
  if (oracle) csv << ",brute";
  csv << "\n";

  for (const auto& suite : spec["suites"]) {
    const std::string cls = suite.at("class").get<std::string>();
    const int count = suite.value("count", 1);
    const int k = suite.value("k", 1);
    const std::uint64_t seed0 = suite.value("seed", 0);
    std::string algo = suite.value("algo", "auto");
    for (int i = 0; i < count; ++i) {
      const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(i);
      OrientedGraph g;
      if (cls == "tournament") {
        const int n_min = suite.value("n_min", suite.value("n", 5));
        const int n_max = suite.value("n_max", suite.value("n", 5));
        SplitMix64 pick(seed);
        const int n = n_min + static_cast<int>(pick.bounded(
                                  static_cast<std::uint64_t>(n_max - n_min + 1)));
        g = gen_tournament(n, seed);
      } else if (cls == "block") {
        g = gen_block_digraph(suite.value("blocks", 3), suite.value("max_block_size", 4),
                              seed);
      } else if (cls == "ktree") {
        g = gen_partial_ktree_digraph(suite.value("n", 8), suite.value("width", 2), seed)
                .graph;
      } else {
        throw std::runtime_error("unknown class in suite: " + cls);
      }

      std::string resolved = algo;
      if (resolved == "auto") resolved = resolve_auto(g, k, std::nullopt, lim, nullptr);
      const auto t0 = std::chrono::steady_clock::now();
      SolveReport rep =
          run_algorithm(resolved, g, k, std::nullopt, lim, false, std::nullopt);
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      const std::size_t peak =
          std::max(rep.stats.peak_triple_sets, rep.stats.peak_table_entries);
      csv << cls << "-" << seed0 << "-" << i << "," << g.order() << "," << k << ","
          << cls << "," << rep.algorithm << "," << (rep.yes ? "yes" : "no") << "," << ms
          << "," << peak;
      if (oracle)
        csv << "," << (brute_decide(g, k, std::nullopt, lim) ? "yes" : "no");
      csv << "\n";
    }
  }

  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(csv_path);
    out << csv.str();
  }
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solvers for bounded-size inversion of oriented graphs"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "decide one instance");
  std::string solve_input, solve_algo = "auto", solve_cert, solve_td_in, solve_td_out;
  bool solve_exact_td = false;
  solve->add_option("input", solve_input, "instance file")->required();
  solve->add_option("--algo", solve_algo, "auto|brute|tournament|block|treewidth")
      ->check(CLI::IsMember({"auto", "brute", "tournament", "block", "treewidth"}));
  solve->add_option("--certificate", solve_cert, "write the certificate here");
  solve->add_option("--td-in", solve_td_in, "use this tree decomposition");
  solve->add_option("--td-out", solve_td_out, "write the tree decomposition here");
  solve->add_flag("--exact-td", solve_exact_td, "exact-width decomposition (small n)");

  auto* verify = app.add_subcommand("verify", "check a certificate");
  std::string verify_instance, verify_cert;
  verify->add_option("instance", verify_instance, "instance file")->required();
  verify->add_option("certificate", verify_cert, "certificate file")->required();

  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string gen_class, gen_out;
  int gen_n = 5, gen_k = 1, gen_blocks = 3, gen_max_block = 4, gen_width = 2;
  std::uint64_t gen_seed = 0;
  gen->add_option("class", gen_class, "tournament|block|ktree")
      ->required()
      ->check(CLI::IsMember({"tournament", "block", "ktree"}));
  gen->add_option("-n,--n", gen_n, "vertex count");
  gen->add_option("-k,--k", gen_k, "budget written to the header");
  gen->add_option("--blocks", gen_blocks, "number of blocks");
  gen->add_option("--max-block-size", gen_max_block, "largest clique size");
  gen->add_option("--width", gen_width, "k-tree width");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");

  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  std::string bench_suite, bench_csv;
  bool bench_oracle = false;
  bench->add_option("suite", bench_suite, "suite spec (json)")->required();
  bench->add_option("-o,--out", bench_csv, "CSV output path (default stdout)");
  bench->add_flag("--oracle", bench_oracle, "add a brute-force answer column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed())
      return cmd_solve(solve_input, solve_algo, solve_cert, solve_td_in, solve_td_out,
                       solve_exact_td);
    if (verify->parsed()) return cmd_verify(verify_instance, verify_cert);
    if (gen->parsed())
      return cmd_gen(gen_class, gen_n, gen_k, gen_blocks, gen_max_block, gen_width,
                     gen_seed, gen_out);
    if (bench->parsed()) return cmd_bench(bench_suite, bench_csv, bench_oracle);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
