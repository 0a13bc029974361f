#include "reachkit/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace reachkit {

unsigned thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("REACHKIT_THREADS")) {
        try {
            long v = std::stol(env);
            if (v < 1) return 1;
            return std::min<unsigned>(hw, static_cast<unsigned>(v));
        } catch (...) {
            return hw;
        }
    }
    return hw;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    unsigned workers = thread_count();
    if (workers <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    auto nw = std::min<std::int64_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    std::int64_t chunk = (n + nw - 1) / nw;
    for (std::int64_t w = 0; w < nw; ++w) {
        std::int64_t b = w * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace reachkit
