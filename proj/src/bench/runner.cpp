#include "pramlab/bench/runner.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "pramlab/concomp/round_profile.hpp"
#include "pramlab/concomp/shiloach_vishkin.hpp"
#include "pramlab/core/edge_graph.hpp"
#include "pramlab/core/successor_list.hpp"
#include "pramlab/core/text_io.hpp"
#include "pramlab/gen/generators.hpp"
#include "pramlab/listrank/wyllie.hpp"
#include "pramlab/vkm/stats_csv.hpp"

namespace pramlab::bench {

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "run_id", "algo", "family", "param", "n", "m", "p", "blocks", "backend", "rep", "seed",
      "wall_ms", "wall_ms_stddev", "rounds", "kernel_launches", "barriers", "global_reads",
      "global_writes", "payload_bytes", "transactions", "bytes_moved", "divergence_events",
      "sm_span_transactions", "max_sublist", "mean_sublist", "status"};
  return cols;
}

namespace {

std::string num(double v) {
  std::ostringstream s;
  if (std::floor(v) == v && std::fabs(v) < 9e15) {
    s << static_cast<long long>(v);
  } else {
    s << std::setprecision(10) << v;
  }
  return s.str();
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string family_param(const BenchConfig& c) {
  if (c.input) return "file";
  switch (c.family) {
    case Family::tree: return "k=" + std::to_string(c.k);
    case Family::random: {
      std::ostringstream s;
      s << "d=" << c.density;
      return s.str();
    }
    default: return "";
  }
}

}  // namespace

void write_csv_header(std::ostream& out) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

void write_csv_row(std::ostream& out, const BenchRow& r) {
  out << r.run_id << ',' << r.algo << ',' << r.family << ',' << r.param << ',' << r.n << ','
      << r.m << ',' << r.p << ',' << r.blocks << ',' << r.backend << ',' << r.rep << ','
      << r.seed << ',' << opt(r.wall_ms) << ',' << opt(r.wall_ms_stddev) << ',' << num(r.rounds)
      << ',' << num(r.kernel_launches) << ',' << num(r.barriers) << ',' << num(r.global_reads)
      << ',' << num(r.global_writes) << ',' << num(r.payload_bytes) << ',' << opt(r.transactions)
      << ',' << opt(r.bytes_moved) << ',' << opt(r.divergence_events) << ','
      << opt(r.sm_span_transactions) << ',' << opt(r.max_sublist) << ',' << opt(r.mean_sublist)
      << ',' << r.status << '\n';
}

Instance make_instance(const BenchConfig& c, std::uint32_t n, std::uint64_t seed) {
  Instance in;
  if (c.input) {
    if (is_list_ranking(c.algorithm)) {
      in.list = load_list(*c.input);
      in.n = static_cast<std::uint32_t>(in.list.size());
    } else {
      in.graph = load_graph(*c.input);
      in.n = in.graph.n;
    }
    return in;
  }
  in.n = n;
  if (is_list_ranking(c.algorithm)) {
    in.list = gen::gen_list(n, seed);
    return in;
  }
  switch (c.family) {
    case Family::list: in.graph = gen::gen_tree_graph(n, 1, seed); break;
    case Family::tree: in.graph = gen::gen_tree_graph(n, c.k, seed); break;
    case Family::random: in.graph = gen::gen_random_graph(n, c.density, seed); break;
  }
  return in;
}

std::vector<std::uint32_t> oracle(const BenchConfig& c, const Instance& in) {
  return is_list_ranking(c.algorithm) ? seq_rank(in.list) : seq_components(in.graph);
}

RunOutcome run_once(const BenchConfig& c, const Instance& in, const Geometry& g,
                    std::uint64_t seed) {
  vkm::MachineOptions mo;
  mo.backend = c.backend;
  mo.workers = c.workers;

  RunOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  switch (c.algorithm) {
    case Algorithm::seq_lr: out.result = seq_rank(in.list); break;
    case Algorithm::seq_cc: out.result = seq_components(in.graph); break;
    case Algorithm::wyllie:
    case Algorithm::wyllie_single: {
      listrank::WyllieOptions o;
      o.p = g.threads;
      o.block_size = g.block_size;
      o.variant = c.algorithm == Algorithm::wyllie ? listrank::WyllieVariant::multi_kernel
                                                   : listrank::WyllieVariant::single_block;
      o.machine = mo;
      auto r = listrank::wyllie_rank(in.list, o);
      out.result = std::move(r.rank);
      out.stats = std::move(r.stats);
      break;
    }
    case Algorithm::rs48:
    case Algorithm::rs64:
    case Algorithm::rs_even: {
      listrank::RsOptions o;
      o.p = g.threads;
      o.block_size = g.block_size;
      o.packing = c.algorithm == Algorithm::rs48 ? Packing::P48 : Packing::P64;
      o.seed = seed;
      o.machine = mo;
      auto r = c.algorithm == Algorithm::rs_even ? listrank::rs_rank_even(in.list, o)
                                                 : listrank::rs_rank(in.list, o);
      out.result = std::move(r.rank);
      out.stats = std::move(r.stats);
      out.sublists = listrank::sublist_stats(r.splitters);
      break;
    }
    case Algorithm::sv: {
      concomp::SvOptions o;
      o.p = g.threads;
      o.block_size = g.block_size;
      o.machine = mo;
      auto r = concomp::sv_components(in.graph, o);
      out.result = std::move(r.labels);
      out.stats = std::move(r.stats);
      out.rounds = r.rounds;
      break;
    }
  }
  out.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::optional<std::size_t> first_mismatch(const std::vector<std::uint32_t>& got,
                                          const std::vector<std::uint32_t>& want) {
  const std::size_t common = std::min(got.size(), want.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (got[i] != want[i]) return i;
  }
  if (got.size() != want.size()) return common;
  return std::nullopt;
}

namespace {

void corrupt(std::vector<std::uint32_t>& v) {
  if (!v.empty()) v[v.size() / 2] += 1;
}

std::string describe_mismatch(const BenchConfig& c, std::size_t i,
                              const std::vector<std::uint32_t>& got,
                              const std::vector<std::uint32_t>& want) {
  std::ostringstream s;
  s << (is_list_ranking(c.algorithm) ? "node " : "vertex ") << i << ": got "
    << (i < got.size() ? std::to_string(got[i]) : "<missing>") << ", expected "
    << (i < want.size() ? std::to_string(want[i]) : "<missing>");
  return s.str();
}

std::vector<std::uint32_t> sweep_sizes(const BenchConfig& c) {
  if (c.input) return {0};
  return c.sizes;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const BenchConfig& c, std::ostream* kernel_stats,
                                    std::ostream* profile) {
  c.validate();
  std::vector<BenchRow> rows;
  const bool threaded = c.backend == vkm::Backend::threaded;
  if (kernel_stats) vkm::write_kernel_stats_header(*kernel_stats);
  if (profile) *profile << "run_id,round,kernel,reads,writes,transactions\n";

  for (std::uint32_t size : sweep_sizes(c)) {
    std::vector<Instance> instances;
    for (std::uint32_t rep = 0; rep < c.repetitions; ++rep) {
      instances.push_back(make_instance(c, size, instance_seed(c.seed, size, rep)));
    }
    const std::uint32_t n = instances.front().n;
    for (const Geometry& g : geometries(c, n)) {
      std::vector<BenchRow> batch;
      for (std::uint32_t rep = 0; rep < c.repetitions; ++rep) {
        const Instance& in = instances[rep];
        const std::uint64_t seed = instance_seed(c.seed, size, rep) ^ 0x5a5a5a5aULL;
        RunOutcome o = run_once(c, in, g, seed);
        auto want = oracle(c, in);
        if (c.inject_fault) corrupt(o.result);

        BenchRow r;
        r.algo = std::string(to_string(c.algorithm));
        r.family = c.input ? "file" : std::string(to_string(c.family));
        r.param = family_param(c);
        r.n = in.n;
        r.m = is_list_ranking(c.algorithm) ? 0 : in.graph.m();
        r.p = uses_machine(c.algorithm) ? g.threads : 1;
        r.blocks = uses_machine(c.algorithm) ? (g.threads + g.block_size - 1) / g.block_size : 1;
        r.backend = std::string(vkm::to_string(c.backend));
        r.rep = std::to_string(rep);
        r.seed = seed;
        r.run_id = r.algo + "-" + r.family + "-n" + std::to_string(r.n) + "-b" +
                   std::to_string(r.blocks) + "-" + r.backend + "-r" + r.rep;
        if (threaded) r.wall_ms = o.wall_ms;
        const ExecStats& st = o.stats;
        r.rounds = o.rounds;
        r.kernel_launches = static_cast<double>(st.kernel_launches);
        r.barriers = static_cast<double>(st.barriers);
        r.global_reads = static_cast<double>(st.total.reads);
        r.global_writes = static_cast<double>(st.total.writes);
        r.payload_bytes = static_cast<double>(st.total.payload_bytes);
        if (!threaded) {
          r.transactions = static_cast<double>(st.total.transactions);
          r.bytes_moved = static_cast<double>(st.total.bytes_moved);
          r.divergence_events = static_cast<double>(st.total.divergence_events);
          r.sm_span_transactions = static_cast<double>(st.total.sm_span_transactions);
        }
        if (o.sublists) {
          r.max_sublist = o.sublists->max_len;
          r.mean_sublist = o.sublists->mean_len;
        }
        const auto bad = first_mismatch(o.result, want);
        r.status = bad ? "mismatch@" + std::to_string(*bad) : "ok";

        if (kernel_stats) vkm::write_kernel_stats_rows(*kernel_stats, r.run_id, st, threaded);
        if (profile && c.algorithm == Algorithm::sv) {
          for (const auto& pr : concomp::round_profile(st).rows) {
            *profile << r.run_id << ',' << pr.round << ',' << pr.kernel << ',' << pr.reads << ','
                     << pr.writes << ',' << pr.transactions << '\n';
          }
        }
        batch.push_back(std::move(r));
      }

      BenchRow mean = batch.front();
      mean.rep = "mean";
      mean.seed = c.seed;
      mean.run_id = mean.run_id.substr(0, mean.run_id.rfind("-r")) + "-mean";
      auto avg = [&](auto field) {
        double s = 0;
        for (const auto& b : batch) s += field(b);
        return s / static_cast<double>(batch.size());
      };
      auto avg_opt = [&](auto field) -> std::optional<double> {
        if (!field(batch.front())) return std::nullopt;
        return avg([&](const BenchRow& b) { return *field(b); });
      };
      mean.m = static_cast<std::uint64_t>(std::llround(avg([](const BenchRow& b) { return double(b.m); })));
      mean.rounds = avg([](const BenchRow& b) { return b.rounds; });
      mean.kernel_launches = avg([](const BenchRow& b) { return b.kernel_launches; });
      mean.barriers = avg([](const BenchRow& b) { return b.barriers; });
      mean.global_reads = avg([](const BenchRow& b) { return b.global_reads; });
      mean.global_writes = avg([](const BenchRow& b) { return b.global_writes; });
      mean.payload_bytes = avg([](const BenchRow& b) { return b.payload_bytes; });
      mean.transactions = avg_opt([](const BenchRow& b) { return b.transactions; });
      mean.bytes_moved = avg_opt([](const BenchRow& b) { return b.bytes_moved; });
      mean.divergence_events = avg_opt([](const BenchRow& b) { return b.divergence_events; });
      mean.sm_span_transactions = avg_opt([](const BenchRow& b) { return b.sm_span_transactions; });
      mean.max_sublist = avg_opt([](const BenchRow& b) { return b.max_sublist; });
      mean.mean_sublist = avg_opt([](const BenchRow& b) { return b.mean_sublist; });
      mean.wall_ms = avg_opt([](const BenchRow& b) { return b.wall_ms; });
      if (mean.wall_ms) {
        double ss = 0;
        for (const auto& b : batch) ss += (*b.wall_ms - *mean.wall_ms) * (*b.wall_ms - *mean.wall_ms);
        mean.wall_ms_stddev =
            batch.size() > 1 ? std::sqrt(ss / static_cast<double>(batch.size() - 1)) : 0.0;
      }
      mean.status = "ok";
      for (const auto& b : batch) {
        if (b.status != "ok") mean.status = "fail";
      }
      for (auto& b : batch) rows.push_back(std::move(b));
      rows.push_back(std::move(mean));
    }
  }
  return rows;
}

VerifyReport verify(const BenchConfig& c) {
  c.validate();
  VerifyReport rep;
  if (c.sizes.empty() && !c.input) {
    rep.warnings.push_back("no sizes given; nothing to verify");
    return rep;
  }
  for (std::uint32_t size : sweep_sizes(c)) {
    for (std::uint32_t r = 0; r < c.repetitions; ++r) {
      const Instance in = make_instance(c, size, instance_seed(c.seed, size, r));
      const auto want = oracle(c, in);
      for (const Geometry& g : geometries(c, in.n)) {
        RunOutcome o = run_once(c, in, g, instance_seed(c.seed, size, r) ^ 0x5a5a5a5aULL);
        if (c.inject_fault) corrupt(o.result);
        ++rep.runs;
        if (auto bad = first_mismatch(o.result, want)) {
          rep.passed = false;
          rep.failures.push_back(std::string(to_string(c.algorithm)) + " n=" +
                                 std::to_string(in.n) + " rep=" + std::to_string(r) + " p=" +
                                 std::to_string(g.threads) + ": " +
                                 describe_mismatch(c, *bad, o.result, want));
        }
      }
    }
  }
  return rep;
}

}  // namespace pramlab::bench
