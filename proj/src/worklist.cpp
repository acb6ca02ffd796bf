#include "llp/worklist.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <tbb/concurrent_queue.h>

#include "llp/chase_lev_deque.hpp"

namespace llp {

std::string_view to_string(WorklistKind kind) noexcept {
  switch (kind) {
    case WorklistKind::Null: return "null";
    case WorklistKind::SeqBag: return "seqbag";
    case WorklistKind::SharedBag: return "swb";
    case WorklistKind::PerThreadBag: return "ptwb";
    case WorklistKind::ChunkedFifo: return "ptcf";
    case WorklistKind::Buckets: return "buckets";
  }
  return "?";
}

bool QuiescenceToken::quiesce() const noexcept {
  if (word_.load(std::memory_order_acquire) != 0) return false;
  std::atomic_thread_fence(std::memory_order_seq_cst);
  return word_.load(std::memory_order_acquire) == 0;
}

std::size_t bucket_of(Value priority, Value delta,
                      std::size_t num_buckets) noexcept {
  return static_cast<std::size_t>((priority / delta) % num_buckets);
}

namespace {

using Injector = tbb::concurrent_queue<WorkItem>;

// ---------------------------------------------------------------- Null

class NullWorklist final : public Worklist {
  class Handle final : public WorkerQueue {
   public:
    void push(WorkItem) override {}
    void push_all(std::span<const WorkItem>) override {}
    std::optional<WorkItem> pop() override { return std::nullopt; }
  };

 public:
  WorklistKind kind() const noexcept override { return WorklistKind::Null; }
  std::size_t workers() const noexcept override { return 1; }
  void seed(std::span<const WorkItem>) override {}
  WorkerQueue& worker(std::size_t) override { return handle_; }

 private:
  Handle handle_;
};

// ---------------------------------------------------------------- SeqBag

class SeqBagWorklist final : public Worklist {
  class Handle final : public WorkerQueue {
   public:
    explicit Handle(QuiescenceToken& token) : token_(token) {}
    void push(WorkItem item) override {
      token_.add_pending(1);
      bag_.push_back(item);
    }
    void push_all(std::span<const WorkItem> items) override {
      token_.add_pending(items.size());
      bag_.insert(bag_.end(), items.begin(), items.end());
    }
    std::optional<WorkItem> pop() override {
      if (bag_.empty()) return std::nullopt;
      WorkItem item = bag_.back();
      bag_.pop_back();
      return item;
    }

   private:
    QuiescenceToken& token_;
    std::vector<WorkItem> bag_;
  };

 public:
  SeqBagWorklist() : handle_(token_) {}
  WorklistKind kind() const noexcept override { return WorklistKind::SeqBag; }
  std::size_t workers() const noexcept override { return 1; }
  void seed(std::span<const WorkItem> items) override { handle_.push_all(items); }
  WorkerQueue& worker(std::size_t) override { return handle_; }

 private:
  Handle handle_;
};

// ---------------------------------------------------------------- SWB

class SharedBagWorklist final : public Worklist {
  class Handle final : public WorkerQueue {
   public:
    Handle(Injector& injector, QuiescenceToken& token)
        : injector_(injector), token_(token) {}
    void push(WorkItem item) override {
      token_.add_pending(1);
      injector_.push(item);
    }
    void push_all(std::span<const WorkItem> items) override {
      token_.add_pending(items.size());
      for (const auto& item : items) injector_.push(item);
    }
    std::optional<WorkItem> pop() override {
      WorkItem item;
      if (injector_.try_pop(item)) return item;
      return std::nullopt;
    }

   private:
    Injector& injector_;
    QuiescenceToken& token_;
  };

 public:
  explicit SharedBagWorklist(std::size_t workers) {
    handles_.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i)
      handles_.push_back(std::make_unique<Handle>(injector_, token_));
  }
  WorklistKind kind() const noexcept override { return WorklistKind::SharedBag; }
  std::size_t workers() const noexcept override { return handles_.size(); }
  void seed(std::span<const WorkItem> items) override {
    handles_.front()->push_all(items);
  }
  WorkerQueue& worker(std::size_t id) override { return *handles_.at(id); }

 private:
  Injector injector_;
  std::vector<std::unique_ptr<Handle>> handles_;
};

// ---------------------------------------------------------------- PTWB

class PerThreadBagWorklist final : public Worklist {
  class Handle final : public WorkerQueue {
   public:
    Handle(PerThreadBagWorklist& owner, std::size_t id)
        : owner_(owner), id_(id) {}

    void push(WorkItem item) override {
      owner_.token_.add_pending(1);
      owner_.deques_[id_]->push(item);
    }

    // Highest priority value first, so the owner's LIFO pops the smallest
    // (most recent, closest) items first.
    void push_all(std::span<const WorkItem> items) override {
      owner_.token_.add_pending(items.size());
      auto& deque = *owner_.deques_[id_];
      const bool ordered = std::is_sorted(
          items.begin(), items.end(),
          [](const WorkItem& a, const WorkItem& b) { return a.priority > b.priority; });
      if (ordered) {
        for (const auto& item : items) deque.push(item);
        return;
      }
      scratch_.assign(items.begin(), items.end());
      std::stable_sort(scratch_.begin(), scratch_.end(),
                       [](const WorkItem& a, const WorkItem& b) {
                         return a.priority > b.priority;
                       });
      for (const auto& item : scratch_) deque.push(item);
    }

    std::optional<WorkItem> pop() override {
      if (auto local = owner_.deques_[id_]->take()) return local;
      WorkItem item;
      if (owner_.injector_.try_pop(item)) return item;
      const std::size_t n = owner_.deques_.size();
      for (std::size_t k = 1; k < n; ++k) {
        auto& victim = *owner_.deques_[(id_ + k) % n];
        for (;;) {
          auto stolen = victim.steal();
          if (stolen.status == ChaseLevDeque::StealStatus::Success)
            return stolen.item;
          if (stolen.status == ChaseLevDeque::StealStatus::Empty) break;
        }
      }
      return std::nullopt;
    }

   private:
    PerThreadBagWorklist& owner_;
    std::size_t id_;
    std::vector<WorkItem> scratch_;
  };

 public:
  explicit PerThreadBagWorklist(std::size_t workers) {
    for (std::size_t i = 0; i < workers; ++i) {
      deques_.push_back(std::make_unique<ChaseLevDeque>());
      handles_.push_back(std::make_unique<Handle>(*this, i));
    }
  }
  WorklistKind kind() const noexcept override {
    return WorklistKind::PerThreadBag;
  }
  std::size_t workers() const noexcept override { return handles_.size(); }
  void seed(std::span<const WorkItem> items) override {
    token_.add_pending(items.size());
    for (const auto& item : items) injector_.push(item);
  }
  WorkerQueue& worker(std::size_t id) override { return *handles_.at(id); }

 private:
  Injector injector_;
  std::vector<std::unique_ptr<ChaseLevDeque>> deques_;
  std::vector<std::unique_ptr<Handle>> handles_;
};

// ---------------------------------------------------------------- PTCF

class ChunkedFifoWorklist final : public Worklist {
  using Chunk = std::vector<WorkItem>;

  class Handle final : public WorkerQueue {
   public:
    Handle(ChunkedFifoWorklist& owner) : owner_(owner) {
      filling_.reserve(owner_.chunk_size_);
    }

    void push(WorkItem item) override {
      owner_.token_.add_pending(1);
      filling_.push_back(item);
      if (filling_.size() >= owner_.chunk_size_) seal();
    }

    std::optional<WorkItem> pop() override {
      if (cursor_ < draining_.size()) return draining_[cursor_++];
      draining_.clear();
      cursor_ = 0;
      if (owner_.pool_.try_pop(draining_) || take_own_chunk()) {
        return draining_[cursor_++];
      }
      return std::nullopt;
    }

   private:
    void seal() {
      owner_.pool_.push(std::move(filling_));
      filling_ = Chunk();
      filling_.reserve(owner_.chunk_size_);
    }
    bool take_own_chunk() {
      if (filling_.empty()) return false;
      std::swap(draining_, filling_);
      filling_.clear();
      return true;
    }

    ChunkedFifoWorklist& owner_;
    Chunk filling_;
    Chunk draining_;
    std::size_t cursor_ = 0;
  };

 public:
  ChunkedFifoWorklist(std::size_t workers, std::size_t chunk_size)
      : chunk_size_(chunk_size == 0 ? 1 : chunk_size) {
    for (std::size_t i = 0; i < workers; ++i)
      handles_.push_back(std::make_unique<Handle>(*this));
  }
  WorklistKind kind() const noexcept override {
    return WorklistKind::ChunkedFifo;
  }
  std::size_t workers() const noexcept override { return handles_.size(); }
  void seed(std::span<const WorkItem> items) override {
    token_.add_pending(items.size());
    for (std::size_t i = 0; i < items.size(); i += chunk_size_) {
      const std::size_t end = std::min(items.size(), i + chunk_size_);
      pool_.push(Chunk(items.begin() + i, items.begin() + end));
    }
  }
  WorkerQueue& worker(std::size_t id) override { return *handles_.at(id); }

 private:
  std::size_t chunk_size_;
  tbb::concurrent_queue<Chunk> pool_;
  std::vector<std::unique_ptr<Handle>> handles_;
};

// ---------------------------------------------------------------- Buckets

class BucketWorklist final : public Worklist {
  class Handle final : public WorkerQueue {
   public:
    explicit Handle(BucketWorklist& owner) : owner_(owner) {}
    void push(WorkItem item) override { owner_.insert(item); }
    std::optional<WorkItem> pop() override { return owner_.take(); }

   private:
    BucketWorklist& owner_;
  };

 public:
  BucketWorklist(std::size_t workers, const WorklistPolicy& policy)
      : num_buckets_(policy.num_buckets),
        delta_(policy.delta),
        shuffle_seed_(policy.shuffle_seed),
        buckets_(std::make_unique<Injector[]>(policy.num_buckets)),
        sizes_(std::make_unique<std::atomic<std::int64_t>[]>(policy.num_buckets)) {
    for (std::size_t i = 0; i < workers; ++i)
      handles_.push_back(std::make_unique<Handle>(*this));
  }
  WorklistKind kind() const noexcept override { return WorklistKind::Buckets; }
  std::size_t workers() const noexcept override { return handles_.size(); }
  void seed(std::span<const WorkItem> items) override {
    for (const auto& item : items) insert(item);
  }
  WorkerQueue& worker(std::size_t id) override { return *handles_.at(id); }

 private:
  std::size_t bucket_for(const WorkItem& item) const noexcept {
    if (!shuffle_seed_) return bucket_of(item.priority, delta_, num_buckets_);
    std::uint64_t z = *shuffle_seed_ ^ (item.index * 0x9E3779B97F4A7C15ULL) ^
                      (item.priority + 0xBF58476D1CE4E5B9ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return static_cast<std::size_t>((z ^ (z >> 31)) % num_buckets_);
  }

  void insert(const WorkItem& item) {
    token_.add_pending(1);
    const std::size_t b = bucket_for(item);
    sizes_[b].fetch_add(1, std::memory_order_acq_rel);
    buckets_[b].push(item);
    std::size_t hint = lowest_.load(std::memory_order_relaxed);
    while (b < hint &&
           !lowest_.compare_exchange_weak(hint, b, std::memory_order_acq_rel)) {
    }
  }

  std::optional<WorkItem> take() {
    const std::size_t start = lowest_.load(std::memory_order_acquire);
    if (auto item = scan(start, num_buckets_)) return item;
    // The hint may have skipped a bucket filled concurrently.
    return scan(0, std::min(start, num_buckets_));
  }

  std::optional<WorkItem> scan(std::size_t from, std::size_t to) {
    for (std::size_t b = from; b < to; ++b) {
      if (sizes_[b].load(std::memory_order_acquire) <= 0) continue;
      WorkItem item;
      if (buckets_[b].try_pop(item)) {
        sizes_[b].fetch_sub(1, std::memory_order_acq_rel);
        lowest_.store(b, std::memory_order_release);
        return item;
      }
    }
    return std::nullopt;
  }

  std::size_t num_buckets_;
  Value delta_;
  std::optional<std::uint64_t> shuffle_seed_;
  std::unique_ptr<Injector[]> buckets_;
  std::unique_ptr<std::atomic<std::int64_t>[]> sizes_;
  std::atomic<std::size_t> lowest_{0};
  std::vector<std::unique_ptr<Handle>> handles_;
};

}  // namespace

std::unique_ptr<Worklist> make_worklist(const WorklistPolicy& policy,
                                        std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("worklist needs at least one worker");
  switch (policy.kind) {
    case WorklistKind::Null:
    case WorklistKind::SeqBag:
      if (workers != 1)
        throw std::invalid_argument(std::string(to_string(policy.kind)) +
                                    " worklist is single-threaded");
      if (policy.kind == WorklistKind::Null) return std::make_unique<NullWorklist>();
      return std::make_unique<SeqBagWorklist>();
    case WorklistKind::SharedBag:
      return std::make_unique<SharedBagWorklist>(workers);
    case WorklistKind::PerThreadBag:
      return std::make_unique<PerThreadBagWorklist>(workers);
    case WorklistKind::ChunkedFifo:
      return std::make_unique<ChunkedFifoWorklist>(workers, policy.chunk_size);
    case WorklistKind::Buckets:
      if (policy.num_buckets == 0 || policy.delta == 0)
        throw std::invalid_argument("buckets need num_buckets >= 1 and delta >= 1");
      return std::make_unique<BucketWorklist>(workers, policy);
  }
  throw std::invalid_argument("unknown worklist kind");
}

}  // namespace llp
