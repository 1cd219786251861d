#pragma once

// Deterministic chunked parallel-for. Each task writes only its own slot, so
// results are identical to sequential evaluation regardless of thread count.
// LINFTY_LAB_THREADS caps the worker count; unset or invalid means hardware
// concurrency clamped to 8.

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace linftylab {

inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    unsigned def = hw == 0 ? 1u : (hw > 8 ? 8u : hw);
    const char* env = std::getenv("LINFTY_LAB_THREADS");
    if (!env || !*env) return def;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) return def;
    return static_cast<unsigned>(v);
}

inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    unsigned workers = thread_budget();
    if (workers <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) body(k);
        return;
    }
    if (workers > count) workers = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t k = w; k < count; k += workers) body(k);
        });
    for (auto& t : pool) t.join();
}

} // namespace linftylab
