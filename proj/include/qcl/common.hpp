#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qcl {

/// Raised for malformed or inconsistent run configurations (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a solver fails to produce a valid state (CLI exit code 3).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sum of `values` by pairwise (tree) reduction in index order. The result
/// depends only on the contents, never on a thread schedule, so repeated runs
/// are bitwise identical.
double pairwise_sum(std::span<const double> values);

/// Runs fn(i) for i in [0, n) on `workers` threads. Work items must be
/// independent; any exception is rethrown on the calling thread (the one
/// thrown by the lowest index wins, to keep failures deterministic).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int workers);

}  // namespace qcl
