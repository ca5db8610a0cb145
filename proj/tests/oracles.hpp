#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the routines it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

inline double sse(const std::vector<double>& values) {
    if (values.empty()) {
        return 0.0;
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double s = 0.0;
    for (double v : values) {
        s += (v - mean) * (v - mean);
    }
    return s;
}

/// Direct sum of the array factor, (1/M)|sum_l exp(-j pi l delta)|.
inline double array_factor(double delta, int m) {
    std::complex<double> acc{0.0, 0.0};
    for (int l = 0; l < m; ++l) {
        acc += std::polar(1.0, -std::numbers::pi * l * delta);
    }
    return std::abs(acc) / m;
}

struct Cluster {
    int id;
    std::vector<double> members;
};

/// Pair with the smallest SSE increase, recomputed from the member lists.
/// Ties go to the lexicographically smallest (id, id) pair.
inline std::pair<int, int> exhaustive_ward_pair(const std::vector<Cluster>& clusters,
                                                double* cost = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    std::pair<int, int> pick{-1, -1};
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        for (std::size_t j = 0; j < clusters.size(); ++j) {
            if (clusters[i].id >= clusters[j].id) {
                continue;
            }
            auto merged = clusters[i].members;
            merged.insert(merged.end(), clusters[j].members.begin(), clusters[j].members.end());
            const double c = sse(merged) - sse(clusters[i].members) - sse(clusters[j].members);
            const std::pair<int, int> ids{clusters[i].id, clusters[j].id};
            if (c < best - 1e-13 || (std::abs(c - best) <= 1e-13 && ids < pick)) {
                best = std::min(best, c);
                pick = ids;
            }
        }
    }
    if (cost) {
        *cost = best;
    }
    return pick;
}

/// Best K-partition of scalars by exhaustive enumeration of all labelings.
inline std::vector<int> exhaustive_best_partition(const std::vector<double>& x, int k) {
    const std::size_t n = x.size();
    std::vector<int> labels(n, 0);
    std::vector<int> best;
    double best_sse = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            std::vector<std::vector<double>> groups(static_cast<std::size_t>(k));
            for (std::size_t u = 0; u < n; ++u) {
                groups[static_cast<std::size_t>(labels[u])].push_back(x[u]);
            }
            double total = 0.0;
            for (const auto& g : groups) {
                if (g.empty()) {
                    return;
                }
                total += sse(g);
            }
            if (total < best_sse) {
                best_sse = total;
                best = labels;
            }
            return;
        }
        for (int c = 0; c < k; ++c) {
            labels[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    return best;
}

/// Solves rate(beta) = target for the member at SIC position `pos` by bisection,
/// with weaker members' betas already fixed in `betas[pos+1..]`.
inline double bisect_beta(std::size_t pos, double gain, double interference, double noise,
                          double power, const std::vector<double>& betas, double target) {
    double weaker = 0.0;
    for (std::size_t j = pos + 1; j < betas.size(); ++j) {
        weaker += betas[j];
    }
    auto rate = [&](double beta) {
        const double stronger = 1.0 - weaker - beta;
        const double sinr = power * beta * gain / (power * gain * stronger + interference + noise);
        return std::log2(1.0 + sinr);
    };
    double lo = 0.0;
    double hi = 1.0 - weaker;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rate(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
