#include "adelic/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

namespace adelic {

double pairwise_sum(const std::vector<double>& values) {
    std::vector<double> buf = values;
    std::size_t n = buf.size();
    while (n > 1) {
        std::size_t half = n / 2;
        for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
        if (n % 2 == 1) {
            buf[half] = buf[n - 1];
            n = half + 1;
        } else {
            n = half;
        }
    }
    return n == 0 ? 0.0 : buf[0];
}

int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("ADELIC_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

std::vector<double> evaluate_nodes(int n, const std::function<double(int)>& fn) {
    std::vector<double> out(static_cast<std::size_t>(n));
    int workers = std::min(thread_budget(), n);
    if (workers <= 1 || n < 256) {
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += workers) out[static_cast<std::size_t>(i)] = fn(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

double circle_mean(int nodes, const std::function<double(double)>& g) {
    std::vector<double> vals = evaluate_nodes(nodes, [&](int j) {
        double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(nodes);
        return g(theta);
    });
    return pairwise_sum(vals) / static_cast<double>(nodes);
}

} // namespace adelic
