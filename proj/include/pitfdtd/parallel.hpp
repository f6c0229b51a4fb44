#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pit {

// Persistent worker pool running index-range jobs with a fixed static partition.
// Each index is assigned to exactly one worker by the same rule regardless of
// worker count, and each worker executes its range in order, so results of
// independent per-index updates are bit-identical for any pool size.
class WorkerPool {
  public:
    explicit WorkerPool(int workers);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    int workers() const { return n_workers_; }

    // Runs fn(i) for i in [begin, end), partitioned into contiguous blocks.
    // Blocks until all workers finish (barrier between half-steps).
    void parallel_for(long begin, long end, const std::function<void(long)>& fn);

    // Default worker count: PITFDTD_WORKERS env var, else hardware concurrency.
    static int default_workers();

  private:
    struct Job {
        long begin = 0;
        long end = 0;
        const std::function<void(long)>* fn = nullptr;
    };

    void worker_loop(int id);

    int n_workers_;
    std::vector<std::thread> threads_;
    std::vector<Job> jobs_;
    std::mutex mtx_;
    std::condition_variable cv_start_;
    std::condition_variable cv_done_;
    unsigned long generation_ = 0;
    int pending_ = 0;
    bool stop_ = false;
};

} // namespace pit
