#ifndef FLAGCERT_PARALLEL_HPP
#define FLAGCERT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace flagcert
{

namespace detail
{

inline std::atomic<unsigned> &jobs_override()
{
    static std::atomic<unsigned> value{0};
    return value;
}

} // namespace detail

inline unsigned parse_jobs(const std::string &text)
{
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception &) {
        throw std::invalid_argument("job count must be a positive integer, got '" + text + "'");
    }
    if (used != text.size() || v < 1 || v > 4096) {
        throw std::invalid_argument("job count must be a positive integer, got '" + text + "'");
    }
    return static_cast<unsigned>(v);
}

// Worker cap: set_jobs() wins, then FLAGCERT_JOBS, then the hardware count.
inline unsigned job_count()
{
    if (const unsigned forced = detail::jobs_override().load()) {
        return forced;
    }
    if (const char *env = std::getenv("FLAGCERT_JOBS"); env != nullptr && *env != '\0') {
        return parse_jobs(env);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

inline void set_jobs(unsigned jobs) { detail::jobs_override().store(jobs); }

// Calls body(i) for i in [0, count) on up to job_count() threads. Results
// must be written to per-index slots; the first exception is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body body)
{
    const std::size_t workers = std::min<std::size_t>(job_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) {
        threads.emplace_back(run);
    }
    run();
    for (auto &t : threads) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace flagcert

#endif
