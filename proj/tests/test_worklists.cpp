#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include <omp.h>

#include "doctest.h"
#include "llp/chase_lev_deque.hpp"
#include "llp/worklist.hpp"

using namespace llp;

namespace {

std::vector<WorkItem> items(std::initializer_list<std::pair<std::size_t, Value>> list) {
  std::vector<WorkItem> out;
  for (auto [i, p] : list) out.push_back({i, p});
  return out;
}

std::vector<std::size_t> drain(WorkerQueue& q) {
  std::vector<std::size_t> out;
  while (auto item = q.pop()) out.push_back(item->index);
  return out;
}

}  // namespace

TEST_CASE("bucket_of") {
  CHECK(bucket_of(0, 1, 1024) == 0);
  CHECK(bucket_of(7, 4, 1024) == 1);
  CHECK(bucket_of(1030, 1, 1024) == 6);
  CHECK(bucket_of(kInfinity, 1, 1024) == kInfinity % 1024);
}

TEST_CASE("single-worker kinds reject more workers") {
  CHECK_THROWS_AS(make_worklist({.kind = WorklistKind::SeqBag}, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_worklist({.kind = WorklistKind::Null}, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_worklist({.kind = WorklistKind::SharedBag}, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_worklist({.kind = WorklistKind::Buckets, .delta = 0}, 1),
                  std::invalid_argument);
}

TEST_CASE("null worklist drops everything") {
  auto wl = make_worklist({.kind = WorklistKind::Null}, 1);
  wl->worker(0).push({3, 0});
  CHECK_FALSE(wl->worker(0).pop().has_value());
  CHECK(wl->quiesce());
}

TEST_CASE("seqbag pops in LIFO order") {
  auto wl = make_worklist({.kind = WorklistKind::SeqBag}, 1);
  const auto seed = items({{1, 0}, {2, 0}});
  wl->seed(seed);
  wl->worker(0).push({3, 0});
  CHECK(drain(wl->worker(0)) == std::vector<std::size_t>{3, 2, 1});
}

TEST_CASE("ptwb push_all lets the owner pop the smallest priority first") {
  auto wl = make_worklist({.kind = WorklistKind::PerThreadBag}, 1);
  const auto batch = items({{10, 5}, {11, 1}, {12, 3}});
  wl->worker(0).push_all(batch);
  CHECK(drain(wl->worker(0)) == std::vector<std::size_t>{11, 12, 10});
}

TEST_CASE("buckets pop the lowest occupied bucket first") {
  auto wl = make_worklist({.kind = WorklistKind::Buckets, .delta = 10}, 1);
  wl->worker(0).push({1, 95});
  wl->worker(0).push({2, 5});
  wl->worker(0).push({3, 41});
  wl->worker(0).push({4, 0});
  const auto order = drain(wl->worker(0));
  REQUIRE(order.size() == 4);
  CHECK(std::set<std::size_t>{order[0], order[1]} == std::set<std::size_t>{2, 4});
  CHECK(order[2] == 3);
  CHECK(order[3] == 1);
}

TEST_CASE("every kind delivers each pushed item exactly once") {
  const std::vector<WorklistPolicy> policies = {
      {.kind = WorklistKind::SeqBag},
      {.kind = WorklistKind::SharedBag},
      {.kind = WorklistKind::PerThreadBag},
      {.kind = WorklistKind::ChunkedFifo, .chunk_size = 1},
      {.kind = WorklistKind::ChunkedFifo, .chunk_size = 16},
      {.kind = WorklistKind::ChunkedFifo, .chunk_size = 256},
      {.kind = WorklistKind::Buckets, .delta = 3},
      {.kind = WorklistKind::Buckets, .shuffle_seed = 99},
  };
  for (const auto& policy : policies) {
    CAPTURE(to_string(policy.kind));
    auto wl = make_worklist(policy, 1);
    std::vector<WorkItem> seed;
    for (std::size_t i = 0; i < 300; ++i) seed.push_back({i, (i * 37) % 101});
    wl->seed(seed);
    for (std::size_t i = 300; i < 700; ++i) wl->worker(0).push({i, i % 13});
    CHECK(wl->token().pending() == 700);
    auto got = drain(wl->worker(0));
    std::sort(got.begin(), got.end());
    REQUIRE(got.size() == 700);
    for (std::size_t i = 0; i < 700; ++i) REQUIRE(got[i] == i);
  }
}

TEST_CASE("quiescence token counts pending and in-flight items") {
  QuiescenceToken token;
  CHECK(token.quiesce());
  token.add_pending(2);
  CHECK(token.pending() == 2);
  CHECK_FALSE(token.quiesce());
  token.begin_item();
  CHECK(token.pending() == 1);
  CHECK(token.in_flight() == 1);
  token.begin_item();
  token.end_item();
  CHECK_FALSE(token.quiesce());
  token.end_item();
  CHECK(token.quiesce());
}

// Each item i < limit spawns children 2i+1 and 2i+2; every worker stops
// only on quiescence, so the processed count must equal the tree size.
TEST_CASE("quiescence stress: workers stop only after the whole tree is processed") {
  const std::vector<WorklistKind> kinds = {WorklistKind::SharedBag, WorklistKind::PerThreadBag,
                                           WorklistKind::ChunkedFifo, WorklistKind::Buckets};
  constexpr std::size_t kNodes = 20000;
  omp_set_dynamic(0);
  for (WorklistKind kind : kinds) {
    for (std::size_t threads : {1, 2, 4}) {
      for (int round = 0; round < 5; ++round) {
        CAPTURE(to_string(kind));
        CAPTURE(threads);
        auto wl = make_worklist({.kind = kind, .chunk_size = 8}, threads);
        const std::vector<WorkItem> root = {{0, 0}};
        wl->seed(root);
        std::vector<std::atomic<int>> seen(kNodes);
        std::atomic<std::size_t> processed{0};
#pragma omp parallel num_threads(static_cast<int>(threads))
        {
          auto& q = wl->worker(static_cast<std::size_t>(omp_get_thread_num()));
          for (;;) {
            if (auto item = q.pop()) {
              wl->token().begin_item();
              seen[item->index].fetch_add(1);
              processed.fetch_add(1);
              for (std::size_t c : {2 * item->index + 1, 2 * item->index + 2})
                if (c < kNodes) q.push({c, c % 17});
              wl->token().end_item();
            } else if (wl->quiesce()) {
              break;
            } else {
              std::this_thread::yield();
            }
          }
        }
        REQUIRE(processed.load() == kNodes);
        for (auto& s : seen) REQUIRE(s.load() == 1);
      }
    }
  }
}

TEST_CASE("chase-lev deque: owner LIFO, thieves FIFO") {
  ChaseLevDeque deque;
  for (std::size_t i = 0; i < 5; ++i) deque.push({i, 0});
  CHECK(deque.take()->index == 4);
  auto stolen = deque.steal();
  REQUIRE(stolen.status == ChaseLevDeque::StealStatus::Success);
  CHECK(stolen.item.index == 0);
  CHECK(deque.take()->index == 3);
  CHECK(deque.take()->index == 2);
  CHECK(deque.take()->index == 1);
  CHECK_FALSE(deque.take().has_value());
  CHECK(deque.steal().status == ChaseLevDeque::StealStatus::Empty);
  CHECK(deque.empty());
}

TEST_CASE("chase-lev deque under concurrent steals loses and duplicates nothing") {
  constexpr std::size_t kItems = 200000;
  ChaseLevDeque deque;
  std::vector<std::atomic<int>> hits(kItems);
  std::atomic<bool> done{false};
  auto thief = [&] {
    while (!done.load()) {
      auto r = deque.steal();
      if (r.status == ChaseLevDeque::StealStatus::Success) hits[r.item.index].fetch_add(1);
    }
    for (;;) {
      auto r = deque.steal();
      if (r.status == ChaseLevDeque::StealStatus::Success)
        hits[r.item.index].fetch_add(1);
      else if (r.status == ChaseLevDeque::StealStatus::Empty)
        break;
    }
  };
  std::thread t1(thief), t2(thief);
  for (std::size_t i = 0; i < kItems; ++i) {
    deque.push({i, 0});
    if (i % 3 == 0)
      if (auto mine = deque.take()) hits[mine->index].fetch_add(1);
  }
  while (auto mine = deque.take()) hits[mine->index].fetch_add(1);
  done.store(true);
  t1.join();
  t2.join();
  for (auto& h : hits) REQUIRE(h.load() == 1);
}
