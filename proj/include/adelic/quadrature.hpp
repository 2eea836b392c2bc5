#pragma once

#include <functional>
#include <vector>

namespace adelic {

/// Pairwise (tree) summation; reduction order is fixed by the data layout,
/// independent of how values were produced.
double pairwise_sum(const std::vector<double>& values);

/// Number of worker threads: hardware concurrency capped by ADELIC_THREADS.
int thread_budget();

/// Evaluates fn(0..n-1) into a vector, fanning out across the thread budget.
std::vector<double> evaluate_nodes(int n, const std::function<double(int)>& fn);

/// Mean of g over the uniform grid theta_j = 2 pi j / nodes (periodic
/// composite trapezoid on [0, 2pi) against the normalised measure).
double circle_mean(int nodes, const std::function<double(double)>& g);

} // namespace adelic
