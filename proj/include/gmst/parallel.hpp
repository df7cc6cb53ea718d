#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace gmst {

/// Resolves a thread-count request: 0 means "use all hardware threads".
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Runs fn(i) for i in [0, count) across up to `threads` workers.
/// Work items must be independent; each writes only to its own output slot,
/// so results do not depend on scheduling order.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    if (threads > count)
        threads = static_cast<unsigned>(count);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += threads)
                fn(i);
        });
    }
    for (auto& w : workers)
        w.join();
}

} // namespace gmst
