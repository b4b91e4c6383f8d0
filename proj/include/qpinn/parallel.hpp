#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace qpinn {

// OpenMP helpers with one hard rule: results must be bitwise identical for
// any thread count, including a serial build. Loop bodies therefore write
// disjoint slots, and reductions accumulate over a fixed block decomposition
// (block partial sums combined in block order), never via OpenMP reduction
// clauses whose combination order is unspecified.

inline constexpr std::size_t kReduceBlock = std::size_t(1) << 12;

// Minimum trip count before a loop is worth spreading across threads.
inline constexpr std::size_t kParallelGrain = std::size_t(1) << 14;

template <class Body>
void parallel_for(std::size_t n, Body&& body) {
#if defined(_OPENMP)
    if (n >= kParallelGrain) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

// Dynamic scheduling for coarse, uneven tasks (samples, shifted evaluations).
// Each task writes its own slot, so ordering never matters. A throwing task
// is captured in-region and rethrown afterwards; exceptions must not unwind
// out of an OpenMP worker.
template <class Body>
void parallel_for_tasks(std::size_t n, Body&& body) {
#if defined(_OPENMP)
    if (n > 1) {
        std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 1)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(qpinn_task_error)
                {
                    if (!err) err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

// Deterministic sum of term(i) for i in [0, n): per-block serial partials,
// then a serial combine in block order. The block grid is fixed by
// kReduceBlock, so the result does not depend on the thread count.
template <class Term>
double block_reduce_sum(std::size_t n, Term&& term) {
    const std::size_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
    if (nblocks <= 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += term(i);
        return s;
    }
    std::vector<double> partial(nblocks, 0.0);
    parallel_for(nblocks, [&](std::size_t b) {
        const std::size_t lo = b * kReduceBlock;
        const std::size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[b] = s;
    });
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace qpinn
