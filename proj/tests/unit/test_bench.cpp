#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "pramlab/bench/config.hpp"
#include "pramlab/bench/plot_data.hpp"
#include "pramlab/bench/runner.hpp"
#include "pramlab/core/text_io.hpp"
#include "pramlab/gen/generators.hpp"

using namespace pramlab;
using namespace pramlab::bench;

namespace {

BenchConfig base(Algorithm a, std::vector<std::uint32_t> sizes) {
  BenchConfig c;
  c.algorithm = a;
  c.sizes = std::move(sizes);
  c.repetitions = 2;
  c.backend = vkm::Backend::simulated;
  return c;
}

std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream s(l);
    while (std::getline(s, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  const auto header = split(line);
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    const auto cells = split(line);
    REQUIRE(cells.size() == header.size());
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(row);
  }
  return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  write_csv_header(out);
  for (const auto& r : rows) write_csv_row(out, r);
  return out.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PRAMLAB_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parsing names") {
  CHECK(parse_algorithm("rs48") == Algorithm::rs48);
  CHECK(to_string(Algorithm::wyllie_single) == "wyllie_single");
  CHECK(parse_family("tree") == Family::tree);
  CHECK_THROWS_AS(parse_algorithm("quick"), ConfigError);
  CHECK_THROWS_AS(parse_family("grid"), ConfigError);
  CHECK(is_list_ranking(Algorithm::seq_lr));
  CHECK_FALSE(is_list_ranking(Algorithm::sv));
  CHECK_FALSE(uses_machine(Algorithm::seq_cc));
}

TEST_CASE("configuration errors") {
  auto bad = [](auto edit) {
    BenchConfig c = base(Algorithm::rs64, {100});
    edit(c);
    return c;
  };
  CHECK_THROWS_AS(bad([](BenchConfig& c) { c.repetitions = 0; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](BenchConfig& c) { c.family = Family::tree; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](BenchConfig& c) { c.sizes = {0}; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](BenchConfig& c) { c.block_size = 1024; }).validate(), ConfigError);
  CHECK_THROWS_AS(bad([](BenchConfig& c) {
                    c.threads = 64;
                    c.blocks = {2};
                  }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(bad([](BenchConfig& c) {
                    c.algorithm = Algorithm::rs48;
                    c.threads = 65536;
                  }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(bad([](BenchConfig& c) {
                    c.algorithm = Algorithm::wyllie_single;
                    c.blocks = {2};
                  }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(bad([](BenchConfig& c) {
                    c.algorithm = Algorithm::sv;
                    c.family = Family::random;
                    c.density = 0;
                  }).validate(),
                  ConfigError);
  CHECK_NOTHROW(bad([](BenchConfig& c) { c.algorithm = Algorithm::rs48; }).validate());
}

TEST_CASE("geometries") {
  BenchConfig c = base(Algorithm::rs64, {1000});
  c.blocks = {1, 2, 8};
  const auto g = geometries(c, 1000);
  REQUIRE(g.size() == 3);
  CHECK(g[0].threads == 256);
  CHECK(g[1].threads == 512);
  CHECK(g[2].threads == 1000);  // clamped to n
  CHECK(g[2].blocks == 8);
  c.blocks.clear();
  c.threads = 50;
  CHECK(geometries(c, 1000).at(0).threads == 50);
}

TEST_CASE("seeds") {
  CHECK(instance_seed(1, 100, 0) == instance_seed(1, 100, 0));
  CHECK(instance_seed(1, 100, 0) != instance_seed(1, 100, 1));
  CHECK(instance_seed(1, 100, 0) != instance_seed(2, 100, 0));
  ::setenv("PRAMLAB_SEED", "77", 1);
  CHECK(default_seed() == 77);
  ::setenv("PRAMLAB_SEED", "x", 1);
  CHECK_THROWS_AS(default_seed(), ConfigError);
  ::unsetenv("PRAMLAB_SEED");
  CHECK(default_seed(5) == 5);
}

TEST_CASE("benchmark rows: one per repetition plus a mean") {
  BenchConfig c = base(Algorithm::rs64, {1000, 3000});
  c.repetitions = 3;
  const auto rows = run_benchmark(c);
  CHECK(rows.size() == 2 * (3 + 1));
  const auto parsed = parse_csv(to_csv(rows));
  for (const auto& r : parsed) {
    CHECK(r.at("status") == "ok");
    CHECK(r.at("wall_ms").empty());  // simulated runs have no wall time
    CHECK_FALSE(r.at("transactions").empty());
    CHECK_FALSE(r.at("max_sublist").empty());
  }
  CHECK(parsed[3].at("rep") == "mean");
  CHECK(parsed[0].at("rep") == "0");

  c.backend = vkm::Backend::threaded;
  c.sizes = {1000};
  const auto threaded = parse_csv(to_csv(run_benchmark(c)));
  for (const auto& r : threaded) {
    CHECK_FALSE(r.at("wall_ms").empty());
    CHECK(r.at("transactions").empty());
  }
  CHECK_FALSE(threaded.back().at("wall_ms_stddev").empty());
}

TEST_CASE("every algorithm runs through the harness") {
  for (auto a : {Algorithm::seq_lr, Algorithm::wyllie, Algorithm::wyllie_single, Algorithm::rs48,
                 Algorithm::rs64, Algorithm::rs_even}) {
    BenchConfig c = base(a, {960});
    c.repetitions = 1;
    if (a == Algorithm::wyllie_single) c.threads = 256;
    if (a == Algorithm::rs_even) c.threads = 96;
    const auto report = verify(c);
    CHECK_MESSAGE(report.passed, to_string(a));
  }
  for (auto f : {Family::list, Family::tree, Family::random}) {
    for (auto a : {Algorithm::seq_cc, Algorithm::sv}) {
      BenchConfig c = base(a, {800});
      c.family = f;
      c.k = 3;
      c.repetitions = 1;
      CHECK(verify(c).passed);
    }
  }
}

TEST_CASE("kernel stats and round profile streams") {
  BenchConfig c = base(Algorithm::sv, {500});
  c.family = Family::random;
  c.repetitions = 1;
  std::ostringstream ks, prof;
  run_benchmark(c, &ks, &prof);
  CHECK(ks.str().rfind("run_id,kernel,launches,reads,writes,transactions,bytes,divergence,wall_ms",
                       0) == 0);
  CHECK(ks.str().find(",SV2,") != std::string::npos);
  CHECK(prof.str().find("SV3") != std::string::npos);
}

TEST_CASE("verification reports the first wrong index") {
  BenchConfig c = base(Algorithm::rs64, {1000});
  c.inject_fault = true;
  const auto rep = verify(c);
  CHECK_FALSE(rep.passed);
  REQUIRE_FALSE(rep.failures.empty());
  CHECK(rep.failures[0].find("500") != std::string::npos);

  BenchConfig cc = base(Algorithm::sv, {400});
  cc.family = Family::tree;
  cc.inject_fault = true;
  const auto rep2 = verify(cc);
  CHECK_FALSE(rep2.passed);
  CHECK(rep2.failures[0].find("vertex 200") != std::string::npos);

  // faulty runs show up in the benchmark CSV too
  const auto rows = run_benchmark(c);
  CHECK(rows.front().status.rfind("mismatch@", 0) == 0);
  CHECK(rows.back().status == "fail");
}

TEST_CASE("an empty sweep passes vacuously with a warning") {
  BenchConfig c = base(Algorithm::rs64, {});
  const auto rep = verify(c);
  CHECK(rep.passed);
  CHECK(rep.runs == 0);
  CHECK(rep.warnings.size() == 1);
}

TEST_CASE("fixture inputs") {
  const auto dir = std::filesystem::temp_directory_path() / "pramlab_bench_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "list.txt").string();
  save_list(path, gen::gen_list(321, 4));
  BenchConfig c = base(Algorithm::wyllie, {});
  c.input = path;
  c.repetitions = 1;
  const auto rep = verify(c);
  CHECK(rep.passed);
  CHECK(rep.runs == 1);
  const auto rows = run_benchmark(c);
  CHECK(rows.front().n == 321);
}

TEST_CASE("plot data") {
  const std::string csv =
      "algo,family,param,n,blocks,p,backend,rep,wall_ms,transactions,sm_span_transactions\n"
      "rs64,list,,1000,1,256,simulated,mean,,5000,4000\n"
      "rs64,list,,1000,4,1000,simulated,mean,,5200,1000\n"
      "rs64,list,,1000,1,256,threaded,mean,8,,\n"
      "rs64,list,,1000,2,512,threaded,mean,5,,\n";
  std::istringstream in(csv);
  std::ostringstream out;
  emit_plot_data(in, out);
  const auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 4);
  CHECK(std::stod(rows[0].at("speedup")) == 1.0);
  CHECK(std::stod(rows[1].at("speedup")) == doctest::Approx(4.0));
  CHECK(std::stod(rows[1].at("transactions_per_elem")) == doctest::Approx(5.2));
  CHECK(std::stod(rows[2].at("speedup")) == 1.0);
  CHECK(std::stod(rows[3].at("speedup")) == doctest::Approx(1.6));
  CHECK(std::stod(rows[3].at("time_per_elem_ms")) == doctest::Approx(0.005));

  std::istringstream no_base(
      "algo,family,param,n,blocks,p,backend,rep,wall_ms,transactions,sm_span_transactions\n"
      "rs64,list,,1000,4,1000,simulated,mean,,5200,1000\n");
  CHECK_THROWS_AS(emit_plot_data(no_base, out), ConfigError);
  std::istringstream no_col("algo,n\nrs64,10\n");
  CHECK_THROWS_AS(emit_plot_data(no_col, out), ConfigError);
}

TEST_CASE("simulated speedup levels off once every SM has a block") {
  BenchConfig c = base(Algorithm::rs64, {1u << 17});
  c.repetitions = 1;
  c.blocks = {1, 27, 54};
  std::istringstream in(to_csv(run_benchmark(c)));
  std::ostringstream out;
  emit_plot_data(in, out);
  const auto rows = parse_csv(out.str());
  REQUIRE(rows.size() == 3);
  const double s27 = std::stod(rows[1].at("speedup"));
  const double s54 = std::stod(rows[2].at("speedup"));
  CHECK(s27 > 2.0);  // RS4 runs in one block and caps the gain at this size
  CHECK(s54 < 1.3 * s27);
}

TEST_CASE("CLI exit codes") {
  const auto dir = std::filesystem::temp_directory_path() / "pramlab_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "out.csv").string();
  CHECK(run_cli("run --algo rs64 --n 1000 --reps 2 --backend simulated --out " + csv) == 0);
  CHECK(std::filesystem::file_size(csv) > 0);
  CHECK(run_cli("run --algo rs64 --n 1000 --reps 1 --verify") == 0);
  CHECK(run_cli("run --algo rs64 --n 1000 --reps 1 --verify --inject-fault") == 1);
  CHECK(run_cli("run --algo rs48 --threads 65536 --n 100000") == 2);
  CHECK(run_cli("run --algo nope --n 10") == 2);
  CHECK(run_cli("run --algo rs64 --n 10 --bogus") == 2);
  CHECK(run_cli("run --algo rs64 --n 10 --threads 2 --blocks 1") == 2);
  CHECK(run_cli("gen --family tree --k 2 --n 50 --out " + (dir / "g.txt").string()) == 0);
  CHECK(run_cli("run --algo sv --input " + (dir / "g.txt").string() + " --reps 1 --verify") == 0);
  const auto plot = (dir / "plot.csv").string();
  CHECK(run_cli("run --algo rs64 --n 2000 --reps 1 --backend simulated --blocks 1 2 --out " +
                csv) == 0);
  CHECK(run_cli("plot --in " + csv + " --out " + plot) == 0);
  CHECK(run_cli("plot --in " + (dir / "missing.csv").string() + " --out " + plot) != 0);
}
