#include "hullbench/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace hullbench {

int worker_count() {
    static const int count = [] {
        int n = static_cast<int>(std::thread::hardware_concurrency());
        if (n < 1) n = 1;
        if (const char* env = std::getenv("HULLBENCH_THREADS")) {
            const int cap = std::atoi(env);
            if (cap >= 1 && cap < n) n = cap;
        }
        return n;
    }();
    return count;
}

void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    if (grain == 0) grain = 1;
    const std::size_t n_chunks = (n + grain - 1) / grain;
    const int workers = std::min<std::size_t>(worker_count(), n_chunks);

    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            body(c * grain, std::min(n, (c + 1) * grain));
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                body(c * grain, std::min(n, (c + 1) * grain));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (int i = 1; i < workers; ++i) threads.emplace_back(run);
    run();
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

double parallel_sum(std::size_t n, std::size_t grain,
                    const std::function<double(std::size_t, std::size_t)>& chunk_sum) {
    if (n == 0) return 0.0;
    if (grain == 0) grain = 1;
    const std::size_t n_chunks = (n + grain - 1) / grain;
    std::vector<double> partials(n_chunks, 0.0);
    parallel_for(n, grain, [&](std::size_t begin, std::size_t end) {
        partials[begin / grain] = chunk_sum(begin, end);
    });
    double total = 0.0;
    for (double p : partials) total += p;
    return total;
}

}  // namespace hullbench
