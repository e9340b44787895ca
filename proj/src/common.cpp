#include "kamforge/common.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace kamforge {

namespace {
int resolve_default_threads() {
    if (const char* env = std::getenv("KAMFORGE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

std::atomic<int> g_threads{0};
} // namespace

int worker_threads() {
    int n = g_threads.load(std::memory_order_relaxed);
    if (n == 0) {
        n = resolve_default_threads();
        g_threads.store(n, std::memory_order_relaxed);
    }
    return n;
}

void set_worker_threads(int n) {
    g_threads.store(n < 1 ? 1 : n, std::memory_order_relaxed);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int nt = worker_threads();
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) break;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(nt))) - 1;
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

} // namespace kamforge
