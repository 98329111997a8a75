#include "reifflow/parallel.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace reifflow {

int worker_count() {
    static const int n = [] {
        if (const char* env = std::getenv("REIFFLOW_THREADS")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }();
    return n;
}

namespace {

// Persistent pool; a job is (chunked range, function). Workers grab chunks
// through an atomic cursor so the per-step dispatch cost stays in the
// microsecond range, which matters at ~1e5 solver steps per run.
class Pool {
  public:
    explicit Pool(int workers) : stop_(false), job_id_(0), pending_(0) {
        for (int i = 0; i < workers; ++i)
            threads_.emplace_back([this] { worker_loop(); });
    }

    ~Pool() {
        {
            std::lock_guard<std::mutex> lk(m_);
            stop_ = true;
        }
        cv_.notify_all();
        for (auto& t : threads_) t.join();
    }

    void run(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
        std::lock_guard<std::mutex> run_lk(run_m_);
        const std::size_t chunks = threads_.size() * 4;
        chunk_ = (n + chunks - 1) / chunks;
        if (chunk_ == 0) chunk_ = 1;
        n_ = n;
        fn_ = &fn;
        cursor_.store(0, std::memory_order_relaxed);
        {
            std::lock_guard<std::mutex> lk(m_);
            pending_ = static_cast<int>(threads_.size());
            ++job_id_;
        }
        cv_.notify_all();
        work();  // caller participates
        std::unique_lock<std::mutex> lk(m_);
        done_cv_.wait(lk, [this] { return pending_ == 0; });
        fn_ = nullptr;
    }

  private:
    void work() {
        for (;;) {
            const std::size_t begin = cursor_.fetch_add(chunk_, std::memory_order_relaxed);
            if (begin >= n_) break;
            (*fn_)(begin, std::min(begin + chunk_, n_));
        }
    }

    void worker_loop() {
        std::uint64_t seen = 0;
        for (;;) {
            {
                std::unique_lock<std::mutex> lk(m_);
                cv_.wait(lk, [&] { return stop_ || job_id_ != seen; });
                if (stop_) return;
                seen = job_id_;
            }
            work();
            {
                std::lock_guard<std::mutex> lk(m_);
                if (--pending_ == 0) done_cv_.notify_all();
            }
        }
    }

    std::vector<std::thread> threads_;
    std::mutex run_m_;
    std::mutex m_;
    std::condition_variable cv_, done_cv_;
    bool stop_;
    std::uint64_t job_id_;
    int pending_;
    std::size_t n_ = 0, chunk_ = 1;
    std::atomic<std::size_t> cursor_{0};
    const std::function<void(std::size_t, std::size_t)>* fn_ = nullptr;
};

}  // namespace

namespace {
thread_local bool in_parallel_region = false;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                  std::size_t min_parallel) {
    if (n == 0) return;
    const int workers = worker_count();
    // Nested regions run serially; the pool is not reentrant.
    if (workers <= 1 || n < min_parallel || in_parallel_region) {
        fn(0, n);
        return;
    }
    static Pool pool(worker_count() - 1);
    in_parallel_region = true;
    pool.run(n, [&fn](std::size_t b, std::size_t e) {
        in_parallel_region = true;
        fn(b, e);
    });
    in_parallel_region = false;
}

}  // namespace reifflow
