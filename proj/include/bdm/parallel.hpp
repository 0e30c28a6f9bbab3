#pragma once

#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace bdm {

inline constexpr const char* kThreadsEnv = "BDM_THREADS";

/// Worker count from BDM_THREADS (integer >= 1); 1 when unset.
inline int thread_count_from_env() {
    const char* raw = std::getenv(kThreadsEnv);
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024)
        throw std::invalid_argument(std::string(kThreadsEnv) + " must be an integer >= 1, got '" + raw + "'");
    return static_cast<int>(v);
}

/// Runs body(i) for i in [0,count) on `threads` workers with static striding.
/// Results must be written by index so output does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            try {
                for (std::size_t i = static_cast<std::size_t>(t); i < count; i += static_cast<std::size_t>(threads))
                    body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace bdm
