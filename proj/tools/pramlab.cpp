#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "pramlab/bench/config.hpp"
#include "pramlab/bench/plot_data.hpp"
#include "pramlab/bench/runner.hpp"
#include "pramlab/core/text_io.hpp"
#include "pramlab/gen/generators.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;

using namespace pramlab;

std::ostream* open_or(const std::string& path, std::unique_ptr<std::ofstream>& holder,
                      std::ostream* fallback) {
  if (path.empty()) return fallback;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw bench::ConfigError("cannot open " + path + " for writing");
  return holder.get();
}

int cmd_run(bench::BenchConfig& cfg, bool verify_only) {
  cfg.validate();
  if (verify_only) {
    const auto report = bench::verify(cfg);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& f : report.failures) std::cerr << "FAIL " << f << '\n';
    std::cout << (report.passed ? "PASS" : "FAIL") << ": " << report.runs << " runs, "
              << report.failures.size() << " mismatches\n";
    return report.passed ? kOk : kVerifyFailed;
  }
  std::unique_ptr<std::ofstream> out_file, stats_file, profile_file;
  std::ostream* out = open_or(cfg.output, out_file, &std::cout);
  std::ostream* stats = open_or(cfg.stats_output, stats_file, nullptr);
  std::ostream* profile = open_or(cfg.profile_output, profile_file, nullptr);
  const auto rows = bench::run_benchmark(cfg, stats, profile);
  bench::write_csv_header(*out);
  bool ok = true;
  for (const auto& r : rows) {
    bench::write_csv_row(*out, r);
    ok = ok && (r.status == "ok");
  }
  return ok ? kOk : kVerifyFailed;
}

int cmd_gen(const bench::BenchConfig& cfg) {
  if (cfg.sizes.size() != 1) throw bench::ConfigError("gen takes exactly one --n");
  const std::uint32_t n = cfg.sizes.front();
  const std::string& path = cfg.output;
  if (path.empty()) throw bench::ConfigError("gen needs --out");
  if (cfg.family == bench::Family::list && bench::is_list_ranking(cfg.algorithm)) {
    save_list(path, gen::gen_list(n, cfg.seed));
    return kOk;
  }
  switch (cfg.family) {
    case bench::Family::list: save_graph(path, gen::gen_tree_graph(n, 1, cfg.seed)); break;
    case bench::Family::tree: save_graph(path, gen::gen_tree_graph(n, cfg.k, cfg.seed)); break;
    case bench::Family::random:
      save_graph(path, gen::gen_random_graph(n, cfg.density, cfg.seed));
      break;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pramlab: list ranking and connected components on a virtual kernel machine"};
  app.require_subcommand(1);

  bench::BenchConfig cfg;
  std::string algo = "rs64", family = "list", backend = "threaded";
  std::string input, plot_in;
  bool verify_flag = false;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--algo", algo,
                    "seq_lr|wyllie|wyllie_single|rs48|rs64|rs_even|seq_cc|sv")
        ->capture_default_str();
    sub->add_option("--family", family, "list|tree|random")->capture_default_str();
    sub->add_option("--k", cfg.k, "tree degree")->capture_default_str();
    sub->add_option("--density", cfg.density, "random-graph edge density")->capture_default_str();
    sub->add_option("--n", cfg.sizes, "problem size (repeatable)")->take_all();
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { cfg.seed = s; seed_given = true; },
        "base seed (default: $PRAMLAB_SEED or 1)");
    sub->add_option("--out", cfg.output, "output file (default stdout)");
  };

  auto* run = app.add_subcommand("run", "run a benchmark sweep, or verify with --verify");
  add_common(run);
  run->add_option("--threads", cfg.threads, "virtual thread count p");
  run->add_option("--blocks", cfg.blocks, "thread block count (repeatable)")->take_all();
  run->add_option("--block-size", cfg.block_size, "threads per block")->capture_default_str();
  run->add_option("--backend", backend, "simulated|threaded")->capture_default_str();
  run->add_option("--reps", cfg.repetitions, "repetitions per size")->capture_default_str();
  run->add_option("--workers", cfg.workers, "OpenMP workers for the threaded backend");
  run->add_option("--input", input, "list or graph fixture instead of generated inputs");
  run->add_option("--stats-out", cfg.stats_output, "per-kernel stats CSV");
  run->add_option("--profile-out", cfg.profile_output, "components round profile CSV");
  run->add_flag("--verify", verify_flag, "check every run against the sequential oracle");
  run->add_flag("--inject-fault", cfg.inject_fault)->group("");

  auto* gen_cmd = app.add_subcommand("gen", "write an input fixture");
  add_common(gen_cmd);

  auto* plot = app.add_subcommand("plot", "derive time/n and speedup columns from a CSV");
  plot->add_option("--in", plot_in, "benchmark CSV")->required();
  plot->add_option("--out", cfg.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (!seed_given) cfg.seed = bench::default_seed();
    if (*plot) {
      std::ifstream in(plot_in);
      if (!in) throw bench::ConfigError("cannot read " + plot_in);
      std::unique_ptr<std::ofstream> holder;
      bench::emit_plot_data(in, *open_or(cfg.output, holder, &std::cout));
      return kOk;
    }
    cfg.algorithm = bench::parse_algorithm(algo);
    cfg.family = bench::parse_family(family);
    cfg.backend = vkm::parse_backend(backend);
    if (!input.empty()) cfg.input = input;
    if (*gen_cmd) return cmd_gen(cfg);
    return cmd_run(cfg, verify_flag);
  } catch (const bench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const CapabilityError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
}
