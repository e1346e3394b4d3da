#include "pramlab/vkm/machine.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <string>

#include "pramlab/core/types.hpp"
#include "pramlab/vkm/arbitrary.hpp"

namespace pramlab::vkm {

namespace {

constexpr std::uint64_t kEmptySlot = ~std::uint64_t{0};
constexpr std::uint32_t kManyReaders = ~std::uint32_t{0};

}  // namespace

std::string_view to_string(Backend backend) {
  return backend == Backend::simulated ? "simulated" : "threaded";
}

Backend parse_backend(std::string_view text) {
  if (text == "simulated" || text == "sim") return Backend::simulated;
  if (text == "threaded" || text == "omp") return Backend::threaded;
  throw std::invalid_argument("unknown backend '" + std::string(text) + "'");
}

void GridConfig::validate() const {
  if (threads == 0) throw std::invalid_argument("grid needs at least one thread");
  if (block_size == 0 || block_size > max_block_size) {
    throw std::invalid_argument("block size " + std::to_string(block_size) +
                                " outside [1," + std::to_string(max_block_size) + "]");
  }
}

GridConfig GridConfig::from_blocks(std::uint32_t threads, std::uint32_t blocks) {
  if (blocks == 0) throw std::invalid_argument("block count must be positive");
  GridConfig grid;
  grid.threads = threads;
  grid.block_size = std::max<std::uint32_t>(1, (threads + blocks - 1) / blocks);
  return grid;
}

struct Machine::ArrayRecord {
  std::string name;
  std::uint32_t elem_size = 0;
  std::size_t size = 0;
  void* data = nullptr;
  ArrayMode mode = ArrayMode::plain;
  std::shared_ptr<void> storage;

  std::vector<std::uint64_t> pending;  // (key << 32) | value, arbitrary mode only
  std::atomic<bool> touched{false};

  // Simulated-backend conflict shadow, allocated on first use.
  std::vector<std::uint32_t> write_stamp, write_tid, read_stamp, read_tid;

  void ensure_shadow() {
    if (write_stamp.empty() && size > 0) {
      write_stamp.assign(size, 0);
      write_tid.assign(size, 0);
      read_stamp.assign(size, 0);
      read_tid.assign(size, 0);
    }
  }
};

// ---------------------------------------------------------------------------
// Simulated backend: runs one warp at a time, then replays the lanes' traces
// in lock step to count transactions per half-warp and divergent branches.

class Simulator {
 public:
  Simulator(Machine& machine, const GridConfig& grid, WorkerState& worker)
      : machine_(machine), grid_(grid), worker_(worker), block_transactions_(grid.blocks(), 0) {}

  void begin_phase(std::uint32_t phase) {
    phase_ = phase;
    stamp_ = static_cast<std::uint32_t>((machine_.epoch_ << 8) | phase);
  }

  void begin_warp() { lanes_used_ = 0; }

  void begin_lane(std::uint32_t tid) {
    Lane& lane = lanes_[lanes_used_++];
    lane.tid = tid;
    lane.accesses.clear();
    lane.branches.clear();
    lane.step = lane.seq = lane.bseq = 0;
    cur_ = &lane;
  }

  void end_warp(std::uint32_t block);

  std::uint64_t divergence() const { return divergence_; }
  const std::vector<std::uint64_t>& block_transactions() const { return block_transactions_; }

  void on_read(std::uint32_t slot, std::size_t index);
  void on_write(std::uint32_t slot, std::size_t index, bool changes_value);
  void on_offer(std::uint32_t slot, std::size_t index);
  void on_branch(bool taken) { cur_->branches.push_back({cur_->step, cur_->bseq++, taken}); }
  void on_step() {
    ++cur_->step;
    cur_->seq = 0;
    cur_->bseq = 0;
  }

 private:
  struct Access {
    std::uint32_t step, seq, slot;
    std::uint64_t index;
    AccessKind kind;
  };
  struct Branch {
    std::uint32_t step, seq;
    bool taken;
  };
  struct Lane {
    std::uint32_t tid = 0;
    std::vector<Access> accesses;
    std::vector<Branch> branches;
    std::uint32_t step = 0, seq = 0, bseq = 0;
  };

  Machine::ArrayRecord& record(std::uint32_t slot, std::size_t index) {
    auto& rec = *machine_.arrays_[slot];
    if (index >= rec.size) {
      throw std::out_of_range("thread " + std::to_string(cur_->tid) + " accessed " + rec.name +
                              "[" + std::to_string(index) + "] beyond size " +
                              std::to_string(rec.size));
    }
    return rec;
  }

  bool conflicts(std::uint32_t stamp, std::uint32_t other_tid) const {
    if ((stamp >> 8) != (stamp_ >> 8)) return false;  // earlier kernel
    if (other_tid == cur_->tid) return false;
    if (stamp == stamp_) return true;  // same phase, no sync in between
    if (other_tid == kManyReaders) return true;
    return other_tid / grid_.block_size != cur_->tid / grid_.block_size;
  }

  [[noreturn]] void race(const Machine::ArrayRecord& rec, std::size_t index, const char* what,
                         std::uint32_t other) const {
    throw RaceError(std::string(what) + " on " + rec.name + "[" + std::to_string(index) +
                    "] between thread " + std::to_string(cur_->tid) + " and " +
                    (other == kManyReaders ? std::string("several threads")
                                           : "thread " + std::to_string(other)));
  }

  void analyze_half_warp(std::size_t first, std::size_t last, std::uint32_t block);
  void analyze_divergence();

  Machine& machine_;
  const GridConfig& grid_;
  WorkerState& worker_;
  std::array<Lane, GridConfig::warp_size> lanes_;
  std::size_t lanes_used_ = 0;
  Lane* cur_ = nullptr;
  std::uint32_t phase_ = 0;
  std::uint32_t stamp_ = 0;
  std::uint64_t divergence_ = 0;
  std::vector<std::uint64_t> block_transactions_;
};

void Simulator::on_read(std::uint32_t slot, std::size_t index) {
  auto& rec = record(slot, index);
  {
    rec.ensure_shadow();
    if (conflicts(rec.write_stamp[index], rec.write_tid[index])) {
      race(rec, index, "read-after-write", rec.write_tid[index]);
    }
    if (rec.read_stamp[index] == stamp_) {
      if (rec.read_tid[index] != cur_->tid) rec.read_tid[index] = kManyReaders;
    } else {
      rec.read_stamp[index] = stamp_;
      rec.read_tid[index] = cur_->tid;
    }
  }
  cur_->accesses.push_back({cur_->step, cur_->seq++, slot, index, AccessKind::read});
}

void Simulator::on_write(std::uint32_t slot, std::size_t index, bool changes_value) {
  auto& rec = record(slot, index);
  if (changes_value) {
    // Silent stores (value already present) cannot change what anyone reads.
    rec.ensure_shadow();
    if (conflicts(rec.write_stamp[index], rec.write_tid[index])) {
      race(rec, index, "write-after-write", rec.write_tid[index]);
    }
    if (conflicts(rec.read_stamp[index], rec.read_tid[index])) {
      race(rec, index, "write-after-read", rec.read_tid[index]);
    }
    rec.write_stamp[index] = stamp_;
    rec.write_tid[index] = cur_->tid;
  }
  cur_->accesses.push_back({cur_->step, cur_->seq++, slot, index, AccessKind::write});
}

void Simulator::on_offer(std::uint32_t slot, std::size_t index) {
  record(slot, index);
  cur_->accesses.push_back({cur_->step, cur_->seq++, slot, index, AccessKind::write});
}

void Simulator::end_warp(std::uint32_t block) {
  const std::size_t half = GridConfig::half_warp;
  for (std::size_t first = 0; first < lanes_used_; first += half) {
    analyze_half_warp(first, std::min(lanes_used_, first + half), block);
  }
  analyze_divergence();
  if (machine_.options_.capture_trace) {
    for (std::size_t l = 0; l < lanes_used_; ++l) {
      for (const Access& a : lanes_[l].accesses) {
        machine_.trace_.push_back({lanes_[l].tid, phase_, a.step, a.slot, a.index, a.kind});
      }
    }
  }
}

void Simulator::analyze_half_warp(std::size_t first, std::size_t last, std::uint32_t block) {
  std::array<std::size_t, GridConfig::half_warp> pos{};
  std::array<std::uint64_t, GridConfig::half_warp> addresses{};
  std::array<bool, GridConfig::half_warp> pending{};

  for (;;) {
    // Next lock-step instruction: the smallest (step, seq) any lane still has.
    bool any = false;
    std::uint64_t key = 0;
    for (std::size_t l = first; l < last; ++l) {
      const auto& acc = lanes_[l].accesses;
      if (pos[l - first] >= acc.size()) continue;
      const Access& a = acc[pos[l - first]];
      const std::uint64_t k = (std::uint64_t{a.step} << 32) | a.seq;
      if (!any || k < key) key = k;
      any = true;
    }
    if (!any) break;

    for (std::size_t l = first; l < last; ++l) {
      const auto& acc = lanes_[l].accesses;
      const std::size_t i = l - first;
      pending[i] = false;
      if (pos[i] >= acc.size()) continue;
      const Access& a = acc[pos[i]];
      pending[i] = ((std::uint64_t{a.step} << 32) | a.seq) == key;
    }
    // Lanes at the same instruction normally hit the same array; diverged
    // lanes may not, so coalesce per (array, kind).
    for (;;) {
      std::size_t lead = last;
      for (std::size_t l = first; l < last; ++l) {
        if (pending[l - first]) {
          lead = l;
          break;
        }
      }
      if (lead == last) break;
      const Access& ref = lanes_[lead].accesses[pos[lead - first]];
      const auto& rec = *machine_.arrays_[ref.slot];
      std::size_t count = 0;
      for (std::size_t l = lead; l < last; ++l) {
        const std::size_t i = l - first;
        if (!pending[i]) continue;
        const Access& a = lanes_[l].accesses[pos[i]];
        if (a.slot != ref.slot || a.kind != ref.kind) continue;
        addresses[count++] = a.index * rec.elem_size;
        pending[i] = false;
        ++pos[i];
      }
      const auto tc = count_transactions(std::span(addresses.data(), count), rec.elem_size);
      auto& c = worker_.per_array[ref.slot];
      c.transactions += tc.transactions;
      c.bytes_moved += tc.bytes;
      block_transactions_[block] += tc.transactions;
    }
  }
}

void Simulator::analyze_divergence() {
  std::array<std::size_t, GridConfig::warp_size> pos{};
  for (;;) {
    bool any = false;
    std::uint64_t key = 0;
    for (std::size_t l = 0; l < lanes_used_; ++l) {
      const auto& br = lanes_[l].branches;
      if (pos[l] >= br.size()) continue;
      const std::uint64_t k = (std::uint64_t{br[pos[l]].step} << 32) | br[pos[l]].seq;
      if (!any || k < key) key = k;
      any = true;
    }
    if (!any) break;
    bool saw_taken = false, saw_not_taken = false;
    for (std::size_t l = 0; l < lanes_used_; ++l) {
      const auto& br = lanes_[l].branches;
      if (pos[l] >= br.size()) continue;
      const Branch& b = br[pos[l]];
      if (((std::uint64_t{b.step} << 32) | b.seq) != key) continue;
      (b.taken ? saw_taken : saw_not_taken) = true;
      ++pos[l];
    }
    if (saw_taken && saw_not_taken) ++divergence_;
  }
}

// ---------------------------------------------------------------------------
// ThreadCtx slow paths

void ThreadCtx::sim_read(std::uint32_t slot, std::size_t index) { sim_->on_read(slot, index); }

void ThreadCtx::sim_write(std::uint32_t slot, std::size_t index, bool changes_value) {
  sim_->on_write(slot, index, changes_value);
}

void ThreadCtx::sim_branch(bool taken) { sim_->on_branch(taken); }

void ThreadCtx::sim_step() { sim_->on_step(); }

void ThreadCtx::offer(std::uint32_t slot, std::size_t index, std::uint32_t value) {
  if (sim_) sim_->on_offer(slot, index);
  machine_->offer(slot, index, value);
}

// ---------------------------------------------------------------------------

Machine::Machine(MachineOptions options) : options_(options) {}

Machine::~Machine() = default;

std::uint32_t Machine::register_array(std::string name, std::uint32_t elem_size, std::size_t size,
                                      void* data, ArrayMode mode, std::shared_ptr<void> storage) {
  auto rec = std::make_unique<ArrayRecord>();
  rec->name = std::move(name);
  rec->elem_size = elem_size;
  rec->size = size;
  rec->data = data;
  rec->mode = mode;
  rec->storage = std::move(storage);
  if (mode == ArrayMode::arbitrary) rec->pending.assign(size, kEmptySlot);
  arrays_.push_back(std::move(rec));
  return static_cast<std::uint32_t>(arrays_.size() - 1);
}

std::string_view Machine::array_name(std::uint32_t slot) const { return arrays_.at(slot)->name; }

void Machine::begin_round() {
  ++round_;
  ++stats_.rounds;
}

void Machine::offer(std::uint32_t slot, std::size_t index, std::uint32_t value) {
  auto& rec = *arrays_[slot];
  if (rec.mode != ArrayMode::arbitrary) {
    throw std::logic_error("concurrent write to plain array " + rec.name);
  }
  const std::uint64_t key = arbitrary_key(options_.arbitrary_seed, slot, index, epoch_, value);
  const std::uint64_t word = (key << 32) | value;
  std::atomic_ref<std::uint64_t> cell(rec.pending[index]);
  std::uint64_t seen = cell.load(std::memory_order_relaxed);
  while (word < seen && !cell.compare_exchange_weak(seen, word, std::memory_order_relaxed)) {
  }
  if (!rec.touched.load(std::memory_order_relaxed)) rec.touched.store(true, std::memory_order_relaxed);
}

void Machine::launch(std::string_view name, const GridConfig& grid, const KernelBody& body) {
  launch_phased(name, grid, 1, [&body](ThreadCtx& ctx, int) { body(ctx); });
}

void Machine::launch_phased(std::string_view name, const GridConfig& grid, int phases,
                            const PhasedBody& body) {
  grid.validate();
  if (phases < 1 || phases > 255) throw std::invalid_argument("phase count outside [1,255]");
  ++epoch_;
  trace_.clear();

  KernelCounters counters;
  counters.launches = 1;
  if (options_.backend == Backend::simulated) {
    run_simulated(grid, phases, body, counters);
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    run_threaded(grid, phases, body, counters);
    counters.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  stats_.block_syncs += static_cast<std::uint64_t>(phases - 1);
  stats_.record_launch(name, round_, counters);
}

namespace {

void merge_workers(const std::vector<WorkerState>& workers,
                   const std::vector<std::string_view>& names, KernelCounters& counters) {
  for (const auto& w : workers) {
    for (std::size_t slot = 0; slot < w.per_array.size(); ++slot) {
      const AccessCounters& a = w.per_array[slot];
      if (a == AccessCounters{}) continue;
      counters.per_array[std::string(names[slot])] += a;
    }
  }
  for (const auto& [name, a] : counters.per_array) {
    counters.reads += a.reads;
    counters.writes += a.writes;
    counters.payload_bytes += a.payload_bytes;
    counters.transactions += a.transactions;
    counters.bytes_moved += a.bytes_moved;
    counters.arbitrary_attempts += a.arbitrary_attempts;
  }
}

}  // namespace

void Machine::run_simulated(const GridConfig& grid, int phases, const PhasedBody& body,
                            KernelCounters& counters) {
  std::vector<WorkerState> workers(1);
  workers[0].per_array.assign(arrays_.size(), {});
  Simulator sim(*this, grid, workers[0]);

  const std::uint32_t blocks = grid.blocks();
  for (int phase = 0; phase < phases; ++phase) {
    sim.begin_phase(static_cast<std::uint32_t>(phase));
    for (std::uint32_t b = 0; b < blocks; ++b) {
      const std::uint32_t begin = b * grid.block_size;
      const std::uint32_t end = std::min(grid.threads, begin + grid.block_size);
      for (std::uint32_t warp = begin; warp < end; warp += GridConfig::warp_size) {
        sim.begin_warp();
        const std::uint32_t warp_end = std::min(end, warp + GridConfig::warp_size);
        for (std::uint32_t t = warp; t < warp_end; ++t) {
          sim.begin_lane(t);
          ThreadCtx ctx(this, &grid, &workers[0], &sim, t);
          body(ctx, phase);
        }
        sim.end_warp(b);
      }
    }
  }

  counters.divergence_events = sim.divergence();
  std::vector<std::uint64_t> sm_load(std::max<std::uint32_t>(1, options_.sm_count), 0);
  for (std::uint32_t b = 0; b < blocks; ++b) {
    sm_load[b % sm_load.size()] += sim.block_transactions()[b];
  }
  counters.sm_span_transactions = *std::max_element(sm_load.begin(), sm_load.end());

  commit_arbitrary(workers, counters);
}

void Machine::run_threaded(const GridConfig& grid, int phases, const PhasedBody& body,
                           KernelCounters& counters) {
  const int workers_wanted = options_.workers > 0 ? options_.workers : omp_get_max_threads();
  std::vector<WorkerState> workers(static_cast<std::size_t>(workers_wanted));
  for (auto& w : workers) w.per_array.assign(arrays_.size(), {});

  std::exception_ptr failure;
  const std::int64_t p = grid.threads;
#pragma omp parallel num_threads(workers_wanted)
  {
    WorkerState& ws = workers[static_cast<std::size_t>(omp_get_thread_num())];
    for (int phase = 0; phase < phases; ++phase) {
#pragma omp for schedule(dynamic, 32)
      for (std::int64_t t = 0; t < p; ++t) {
        try {
          ThreadCtx ctx(this, &grid, &ws, nullptr, static_cast<std::uint32_t>(t));
          body(ctx, phase);
        } catch (...) {
#pragma omp critical(pramlab_failure)
          if (!failure) failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  commit_arbitrary(workers, counters);
}

void Machine::commit_arbitrary(std::vector<WorkerState>& workers, KernelCounters& counters) {
  std::vector<std::string_view> names;
  names.reserve(arrays_.size());
  for (const auto& rec : arrays_) names.push_back(rec->name);

  for (std::size_t slot = 0; slot < arrays_.size(); ++slot) {
    auto& rec = *arrays_[slot];
    if (rec.mode != ArrayMode::arbitrary || !rec.touched.load()) continue;
    std::uint64_t plain_writes = 0;
    for (const auto& w : workers) plain_writes += w.per_array[slot].writes;
    if (plain_writes > 0) {
      throw std::logic_error("kernel mixed plain and concurrent writes on " + rec.name);
    }

    std::uint64_t committed = 0;
    const std::int64_t size = static_cast<std::int64_t>(rec.size);
    auto* pending = rec.pending.data();
    const std::uint32_t width = rec.elem_size;
    void* data = rec.data;
#pragma omp parallel for reduction(+ : committed) schedule(static) if (size > 65536)
    for (std::int64_t i = 0; i < size; ++i) {
      if (pending[i] == kEmptySlot) continue;
      const auto value = static_cast<std::uint32_t>(pending[i]);
      switch (width) {
        case 1: static_cast<std::uint8_t*>(data)[i] = static_cast<std::uint8_t>(value); break;
        case 2: static_cast<std::uint16_t*>(data)[i] = static_cast<std::uint16_t>(value); break;
        default: static_cast<std::uint32_t*>(data)[i] = value; break;
      }
      pending[i] = kEmptySlot;
      ++committed;
    }
    rec.touched.store(false);
    workers[0].per_array[slot].writes += committed;
  }
  merge_workers(workers, names, counters);
}

const ExecStats& run_kernel_sequence(Machine& machine, std::span<const KernelRun> kernels) {
  for (const KernelRun& k : kernels) machine.launch(k.name, k.grid, k.body);
  return machine.stats();
}

bool synthetic_or(Machine& machine, std::span<const std::uint8_t> flags,
                  const DeviceArray<std::uint32_t>& cell, std::uint32_t block_size) {
  if (flags.empty()) return false;
  cell[0] = 0;
  GridConfig grid;
  grid.threads = static_cast<std::uint32_t>(flags.size());
  grid.block_size = std::min(block_size, grid.threads);
  machine.launch("synthetic_or", grid, [&](ThreadCtx& ctx) {
    if (ctx.branch(flags[ctx.thread()] != 0)) ctx.store_arbitrary(cell, 0, std::uint32_t{1});
  });
  return cell[0] != 0;
}

}  // namespace pramlab::vkm
