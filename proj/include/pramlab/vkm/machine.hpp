#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "pramlab/core/exec_stats.hpp"
#include "pramlab/vkm/coalescing.hpp"
#include "pramlab/vkm/grid.hpp"

namespace pramlab::vkm {

class Machine;
class ThreadCtx;
class Simulator;

/// Handle to an array living in the machine's global memory. Handles are
/// cheap views; the machine owns the storage.
template <class T>
class DeviceArray {
  static_assert(std::is_unsigned_v<T> && sizeof(T) <= 8);

 public:
  DeviceArray() = default;

  std::size_t size() const { return size_; }
  std::uint32_t slot() const { return slot_; }

  // Host-side view, for uploads and copy-back between kernels.
  T* data() const { return data_; }
  std::span<T> host() const { return {data_, size_}; }
  T& operator[](std::size_t i) const { return data_[i]; }

  friend void swap(DeviceArray& a, DeviceArray& b) noexcept {
    std::swap(a.data_, b.data_);
    std::swap(a.size_, b.size_);
    std::swap(a.slot_, b.slot_);
  }

 private:
  friend class Machine;
  friend class ThreadCtx;

  T* data_ = nullptr;
  std::size_t size_ = 0;
  std::uint32_t slot_ = 0;
};

enum class ArrayMode {
  plain,      // disjoint writes only
  arbitrary,  // may also take concurrent writes, committed at the barrier
};

struct MachineOptions {
  Backend backend = Backend::threaded;
  std::uint64_t arbitrary_seed = 0x5eed;
  int workers = 0;                  // threaded backend; 0 = OpenMP default
  std::uint32_t sm_count = 27;      // blocks are dealt round-robin onto SMs
  bool capture_trace = false;       // simulated backend: keep the last kernel's accesses
};

/// One recorded access of the last kernel (simulated backend, capture_trace on).
struct CapturedAccess {
  std::uint32_t thread;
  std::uint32_t phase;
  std::uint32_t step;
  std::uint32_t array;
  std::uint64_t index;
  AccessKind kind;
};

/// Per-worker accumulation, merged at the barrier.
struct WorkerState {
  std::vector<AccessCounters> per_array;
};

/// What a virtual thread sees while running a kernel body.
class ThreadCtx {
 public:
  std::uint32_t thread() const { return tid_; }
  std::uint32_t threads() const { return grid_->threads; }
  std::uint32_t block() const { return tid_ / grid_->block_size; }
  std::uint32_t thread_in_block() const { return tid_ % grid_->block_size; }
  std::uint32_t block_size() const { return grid_->block_size; }
  std::uint32_t blocks() const { return grid_->blocks(); }

  template <class T>
  T load(const DeviceArray<T>& a, std::size_t i) {
    auto& c = worker_->per_array[a.slot_];
    ++c.reads;
    c.payload_bytes += sizeof(T);
    if (sim_) sim_read(a.slot_, i);
    return a.data_[i];
  }

  template <class T>
  void store(const DeviceArray<T>& a, std::size_t i, T value) {
    auto& c = worker_->per_array[a.slot_];
    ++c.writes;
    c.payload_bytes += sizeof(T);
    if (sim_) sim_write(a.slot_, i, a.data_[i] != value);
    a.data_[i] = value;
  }

  /// Concurrent write: one of the values offered to a cell during this kernel
  /// is committed at the barrier. Reads in the same kernel see the old value.
  template <class T>
  void store_arbitrary(const DeviceArray<T>& a, std::size_t i, T value) {
    static_assert(sizeof(T) <= 4, "concurrent-write cells hold at most 32 bits");
    auto& c = worker_->per_array[a.slot_];
    ++c.arbitrary_attempts;
    c.payload_bytes += sizeof(T);
    offer(a.slot_, i, static_cast<std::uint32_t>(value));
  }

  /// Marks a data-dependent branch. Lanes of one warp disagreeing at the same
  /// point count as one divergence event. Bounds guards of strided loops are
  /// predicated and must not go through here.
  bool branch(bool taken) {
    if (sim_) sim_branch(taken);
    return taken;
  }

  /// Starts the next lock-step instruction group (one loop iteration).
  void step() {
    if (sim_) sim_step();
  }

  /// Striding loop: items thread(), thread()+p, ... below n.
  template <class F>
  void strided(std::size_t n, F&& body) {
    const std::size_t p = threads();
    for (std::size_t i = tid_; i < n; i += p) {
      step();
      body(i);
    }
  }

 private:
  friend class Machine;
  friend class Simulator;

  ThreadCtx(Machine* machine, const GridConfig* grid, WorkerState* worker, Simulator* sim,
            std::uint32_t tid)
      : machine_(machine), grid_(grid), worker_(worker), sim_(sim), tid_(tid) {}

  void sim_read(std::uint32_t slot, std::size_t index);
  void sim_write(std::uint32_t slot, std::size_t index, bool changes_value);
  void sim_branch(bool taken);
  void sim_step();
  void offer(std::uint32_t slot, std::size_t index, std::uint32_t value);

  Machine* machine_;
  const GridConfig* grid_;
  WorkerState* worker_;
  Simulator* sim_;
  std::uint32_t tid_;
};

using KernelBody = std::function<void(ThreadCtx&)>;
using PhasedBody = std::function<void(ThreadCtx&, int phase)>;

/// Deterministic virtual kernel machine.
///
/// Kernels are separated by grid-wide barriers. Within a kernel a thread may
/// only write locations no other thread touches, except through arrays
/// allocated with ArrayMode::arbitrary. The simulated backend runs threads
/// warp by warp on one core, checks that contract and accounts memory
/// transactions per half-warp; the threaded backend runs the same bodies on
/// OpenMP workers and only counts reads and writes.
class Machine {
 public:
  explicit Machine(MachineOptions options = {});
  ~Machine();

  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  const MachineOptions& options() const { return options_; }
  Backend backend() const { return options_.backend; }

  template <class T>
  DeviceArray<T> alloc(std::string name, std::size_t size, T fill = T{},
                       ArrayMode mode = ArrayMode::plain) {
    static_assert(std::is_unsigned_v<T> && sizeof(T) <= 8);
    if (mode == ArrayMode::arbitrary && sizeof(T) > 4) {
      throw std::invalid_argument("concurrent-write arrays hold at most 32-bit values");
    }
    auto storage = std::make_shared<std::vector<T>>(size, fill);
    DeviceArray<T> handle;
    handle.data_ = storage->data();
    handle.size_ = size;
    handle.slot_ = register_array(std::move(name), sizeof(T), size, handle.data_, mode,
                                  std::shared_ptr<void>(storage, storage.get()));
    return handle;
  }

  /// Runs one kernel over `grid`.
  void launch(std::string_view name, const GridConfig& grid, const KernelBody& body);

  /// Runs one kernel whose threads block-synchronise between phases
  /// (`__syncthreads`). Counts as a single launch.
  void launch_phased(std::string_view name, const GridConfig& grid, int phases,
                     const PhasedBody& body);

  /// Subsequent launches are attributed to a new round.
  void begin_round();
  std::uint32_t round() const { return round_; }

  const ExecStats& stats() const { return stats_; }
  ExecStats& stats() { return stats_; }

  std::string_view array_name(std::uint32_t slot) const;
  const std::vector<CapturedAccess>& last_trace() const { return trace_; }

 private:
  friend class ThreadCtx;
  friend class Simulator;

  struct ArrayRecord;

  std::uint32_t register_array(std::string name, std::uint32_t elem_size, std::size_t size,
                               void* data, ArrayMode mode, std::shared_ptr<void> storage);
  void run_simulated(const GridConfig& grid, int phases, const PhasedBody& body,
                     KernelCounters& counters);
  void run_threaded(const GridConfig& grid, int phases, const PhasedBody& body,
                    KernelCounters& counters);
  void commit_arbitrary(std::vector<WorkerState>& workers, KernelCounters& counters);
  void offer(std::uint32_t slot, std::size_t index, std::uint32_t value);

  MachineOptions options_;
  std::vector<std::unique_ptr<ArrayRecord>> arrays_;
  ExecStats stats_;
  std::uint32_t round_ = 0;
  std::uint64_t epoch_ = 0;
  std::vector<CapturedAccess> trace_;
};

/// A kernel as a value, for composing barrier-separated sequences.
struct KernelRun {
  std::string name;
  GridConfig grid;
  KernelBody body;
};

/// Launches `kernels` in order with a barrier between consecutive ones.
const ExecStats& run_kernel_sequence(Machine& machine, std::span<const KernelRun> kernels);

/// Parallel OR through a concurrent write: every thread whose flag is set
/// writes 1 into `cell[0]`. `cell` must be an arbitrary-mode array and is
/// cleared first.
bool synthetic_or(Machine& machine, std::span<const std::uint8_t> flags,
                  const DeviceArray<std::uint32_t>& cell, std::uint32_t block_size = 256);

}  // namespace pramlab::vkm
