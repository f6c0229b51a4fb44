#include "pitfdtd/parallel.hpp"

#include <cstdlib>
#include <string>

namespace pit {

WorkerPool::WorkerPool(int workers) : n_workers_(workers < 1 ? 1 : workers) {
    if (n_workers_ == 1) return; // run jobs inline, no threads
    jobs_.resize(n_workers_);
    threads_.reserve(n_workers_);
    for (int i = 0; i < n_workers_; ++i)
        threads_.emplace_back([this, i] { worker_loop(i); });
}

WorkerPool::~WorkerPool() {
    if (threads_.empty()) return;
    {
        std::lock_guard lk(mtx_);
        stop_ = true;
    }
    cv_start_.notify_all();
    for (auto& t : threads_) t.join();
}

void WorkerPool::parallel_for(long begin, long end, const std::function<void(long)>& fn) {
    if (end <= begin) return;
    if (n_workers_ == 1) {
        for (long i = begin; i < end; ++i) fn(i);
        return;
    }
    const long count = end - begin;
    const long chunk = (count + n_workers_ - 1) / n_workers_;
    {
        std::lock_guard lk(mtx_);
        for (int w = 0; w < n_workers_; ++w) {
            long b = begin + w * chunk;
            long e = b + chunk < end ? b + chunk : end;
            if (b > end) b = e = end;
            jobs_[w] = Job{b, e, &fn};
        }
        pending_ = n_workers_;
        ++generation_;
    }
    cv_start_.notify_all();
    std::unique_lock lk(mtx_);
    cv_done_.wait(lk, [this] { return pending_ == 0; });
}

void WorkerPool::worker_loop(int id) {
    unsigned long seen = 0;
    for (;;) {
        Job job;
        {
            std::unique_lock lk(mtx_);
            cv_start_.wait(lk, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            job = jobs_[id];
        }
        for (long i = job.begin; i < job.end; ++i) (*job.fn)(i);
        {
            std::lock_guard lk(mtx_);
            if (--pending_ == 0) cv_done_.notify_all();
        }
    }
}

int WorkerPool::default_workers() {
    if (const char* env = std::getenv("PITFDTD_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

} // namespace pit
