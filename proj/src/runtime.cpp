#include "vpatch/runtime.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

#ifndef VPATCH_VERSION
#define VPATCH_VERSION "0.0.0"
#endif

namespace vpatch {

namespace {

std::atomic<int> g_thread_limit{0}; // 0 = unset

int env_limit() {
    const char* s = std::getenv("VPATCH_THREADS");
    if (!s) return 0;
    int v = std::atoi(s);
    return v > 0 ? v : 0;
}

} // namespace

void set_thread_limit(int n) { g_thread_limit.store(n > 0 ? n : 0); }

int thread_limit() {
    int v = g_thread_limit.load();
    if (v == 0) v = env_limit();
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    return v == 0 ? hw : std::min(v, hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& chunk) {
    if (n == 0) return;
    std::size_t workers = static_cast<std::size_t>(thread_limit());
    workers = std::min(workers, n);
    if (workers <= 1) {
        chunk(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t per = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * per;
        std::size_t hi = std::min(n, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([&chunk, lo, hi] { chunk(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

const char* library_version() { return VPATCH_VERSION; }

} // namespace vpatch
