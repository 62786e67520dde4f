#include "pampac/worker_pool.hpp"

namespace pampac {

WorkerPool::WorkerPool(std::size_t threads) {
  const std::size_t extra = threads > 1 ? threads - 1 : 0;
  workers_.reserve(extra);
  for (std::size_t i = 0; i < extra; ++i) {
    workers_.emplace_back([this](std::stop_token st) { worker_loop(st); });
  }
}

WorkerPool::~WorkerPool() {
  for (auto& w : workers_) w.request_stop();
  wake_.notify_all();
  workers_.clear();
}

void WorkerPool::drain() {
  for (;;) {
    const std::size_t i = next_.fetch_add(1, std::memory_order_relaxed);
    if (i >= count_) return;
    try {
      (*task_)(i);
    } catch (...) {
      std::lock_guard lock(error_mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
}

void WorkerPool::worker_loop(std::stop_token stop) {
  std::size_t seen = 0;
  for (;;) {
    {
      std::unique_lock lock(mutex_);
      if (!wake_.wait(lock, stop, [&] { return generation_ != seen; })) return;
      seen = generation_;
    }
    drain();
    {
      std::lock_guard lock(mutex_);
      if (--busy_ == 0) done_.notify_one();
    }
  }
}

void WorkerPool::run(std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  error_ = nullptr;
  if (workers_.empty() || count == 1) {
    task_ = &fn;
    count_ = count;
    next_.store(0, std::memory_order_relaxed);
    drain();
  } else {
    {
      std::lock_guard lock(mutex_);
      task_ = &fn;
      count_ = count;
      next_.store(0, std::memory_order_relaxed);
      busy_ = workers_.size();
      ++generation_;
    }
    wake_.notify_all();
    drain();
    std::unique_lock lock(mutex_);
    done_.wait(lock, [&] { return busy_ == 0; });
  }
  task_ = nullptr;
  if (error_) std::rethrow_exception(error_);
}

}  // namespace pampac
