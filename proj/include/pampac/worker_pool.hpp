#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pampac {

/// Fixed set of threads executing indexed batches.  The calling thread takes
/// part in every batch, so a pool of size 1 runs everything inline.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t threads);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const noexcept { return workers_.size() + 1; }

  /// Calls fn(i) for i in [0, count) and returns once every call finished.
  /// The first exception thrown by any call is rethrown here.
  void run(std::size_t count, const std::function<void(std::size_t)>& fn);

 private:
  void worker_loop(std::stop_token stop);
  void drain();

  std::mutex mutex_;
  std::condition_variable_any wake_;
  std::condition_variable done_;
  std::size_t generation_ = 0;
  std::size_t busy_ = 0;

  const std::function<void(std::size_t)>* task_ = nullptr;
  std::size_t count_ = 0;
  std::atomic<std::size_t> next_{0};
  std::exception_ptr error_;
  std::mutex error_mutex_;

  std::vector<std::jthread> workers_;
};

}  // namespace pampac
