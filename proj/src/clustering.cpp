#include "mmnoma/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mmnoma {

Partition Partition::from_labels(std::span<const int> labels) {
    Partition p;
    p.assignment.resize(labels.size());
    std::vector<int> remap;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int label = labels[i];
        if (label < 0) {
            throw std::invalid_argument("Partition: negative label");
        }
        if (static_cast<std::size_t>(label) >= remap.size()) {
            remap.resize(static_cast<std::size_t>(label) + 1, -1);
        }
        auto& slot = remap[static_cast<std::size_t>(label)];
        if (slot < 0) {
            slot = p.num_clusters++;
        }
        p.assignment[i] = slot;
    }
    return p;
}

std::vector<std::vector<int>> Partition::members() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(num_clusters));
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        out[static_cast<std::size_t>(assignment[i])].push_back(static_cast<int>(i));
    }
    return out;
}

void Partition::validate(std::size_t num_users) const {
    if (assignment.size() != num_users) {
        throw std::invalid_argument("Partition: assignment length does not match user count");
    }
    std::vector<int> sizes(static_cast<std::size_t>(std::max(num_clusters, 0)), 0);
    for (int r : assignment) {
        if (r < 0 || r >= num_clusters) {
            throw std::invalid_argument("Partition: cluster index out of range");
        }
        ++sizes[static_cast<std::size_t>(r)];
    }
    if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end()) {
        throw std::invalid_argument("Partition: empty cluster");
    }
}

double centroid(std::span<const double> thetas) {
    if (thetas.empty()) {
        throw std::invalid_argument("centroid: empty cluster");
    }
    return std::accumulate(thetas.begin(), thetas.end(), 0.0) /
           static_cast<double>(thetas.size());
}

double distortion_mse(const Partition& partition, std::span<const double> thetas) {
    partition.validate(thetas.size());
    const auto k = static_cast<std::size_t>(partition.num_clusters);
    std::vector<double> sum(k, 0.0);
    std::vector<int> count(k, 0);
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const auto r = static_cast<std::size_t>(partition.assignment[i]);
        sum[r] += thetas[i];
        ++count[r];
    }
    double sse = 0.0;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const auto r = static_cast<std::size_t>(partition.assignment[i]);
        const double d = thetas[i] - sum[r] / count[r];
        sse += d * d;
    }
    return sse / static_cast<double>(thetas.size());
}

double merge_cost(int count_k, double mean_k, int count_l, double mean_l) {
    const double nk = count_k;
    const double nl = count_l;
    const double d = mean_k - mean_l;
    return nk * nl / (nk + nl) * d * d;
}

MergeHistory ahc_run(std::span<const double> thetas) {
    if (thetas.empty()) {
        throw std::invalid_argument("ahc_run: no users");
    }
    struct Cluster {
        int id;
        int count;
        double mean;
    };
    std::vector<Cluster> active;
    active.reserve(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        active.push_back({static_cast<int>(i), 1, thetas[i]});
    }

    MergeHistory history;
    history.initial_count = static_cast<int>(thetas.size());
    history.steps.reserve(thetas.size() - 1);

    // `active` stays sorted by id, so the first strict minimum is the
    // lexicographically smallest pair.
    while (active.size() > 1) {
        std::size_t best_i = 0;
        std::size_t best_j = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const double c = merge_cost(active[i].count, active[i].mean, active[j].count,
                                            active[j].mean);
                if (c < best) {
                    best = c;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        auto& k = active[best_i];
        const auto& l = active[best_j];
        history.steps.push_back({k.id, l.id, best, static_cast<int>(active.size()) - 1});
        const int n = k.count + l.count;
        k.mean = (k.count * k.mean + l.count * l.mean) / n;
        k.count = n;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_j));
    }
    return history;
}

EvaluationGraph evaluation_graph(const MergeHistory& history) {
    const int b = history.initial_count;
    if (b < 2) {
        throw std::invalid_argument("evaluation_graph: need at least two singletons");
    }
    if (history.steps.size() != static_cast<std::size_t>(b - 1)) {
        throw std::invalid_argument("evaluation_graph: incomplete merge history");
    }
    EvaluationGraph g;
    g.x = Eigen::VectorXd::LinSpaced(b - 1, 1.0, b - 1.0);
    g.y.resize(b - 1);
    for (const auto& step : history.steps) {
        g.y[step.resulting_cluster_count - 1] = step.cost;
    }
    return g;
}

double line_fit_rmse(const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y) {
    const Eigen::Index n = x.size();
    if (n == 0 || y.size() != n) {
        throw std::invalid_argument("line_fit_rmse: need matching nonempty samples");
    }
    const Eigen::ArrayXd dx = x.array() - x.mean();
    const Eigen::ArrayXd dy = y.array() - y.mean();
    const double sxx = (dx * dx).sum();
    const double slope = sxx > 0.0 ? (dx * dy).sum() / sxx : 0.0;
    const Eigen::ArrayXd residual = dy - slope * dx;
    return std::sqrt(residual.square().sum() / static_cast<double>(n));
}

KneeSelection l_method(const EvaluationGraph& graph) {
    const Eigen::Index points = graph.size();
    const int b = static_cast<int>(points) + 1;
    KneeSelection out;
    if (points < 4) {
        out.num_clusters = std::min(2, b);
        out.fallback = true;
        return out;
    }

    const double y_range = graph.y.maxCoeff() - graph.y.minCoeff();
    // Ties within rounding noise go to the smaller split; scaling the
    // tolerance with the y-range keeps the choice invariant to y scaling.
    const double tie_tolerance = 1e-12 * y_range;
    const double denom = b - 1.0;

    int best_c = 2;
    double best = std::numeric_limits<double>::infinity();
    for (int c = 2; c <= b - 3; ++c) {
        const double left = line_fit_rmse(graph.x.head(c), graph.y.head(c));
        const double right = line_fit_rmse(graph.x.tail(points - c), graph.y.tail(points - c));
        const double total = c / denom * left + (b - c) / denom * right;
        out.total_rmse.push_back(total);
        if (total < best - tie_tolerance) {
            best = total;
            best_c = c;
        }
    }
    out.num_clusters = best_c;
    return out;
}

Partition select_partition(const MergeHistory& history, int num_clusters) {
    const int b = history.initial_count;
    if (num_clusters < 1 || num_clusters > b) {
        throw std::invalid_argument("select_partition: cluster count out of range");
    }
    // Each user points at the identifier of the cluster that holds it.
    std::vector<int> owner(static_cast<std::size_t>(b));
    std::iota(owner.begin(), owner.end(), 0);
    const auto merges = static_cast<std::size_t>(b - num_clusters);
    for (std::size_t t = 0; t < merges; ++t) {
        const auto& step = history.steps.at(t);
        for (auto& o : owner) {
            if (o == step.second) {
                o = step.first;
            }
        }
    }
    return Partition::from_labels(owner);
}

namespace {

std::size_t nearest_mean(double theta, const std::vector<double>& means) {
    std::size_t best = 0;
    double best_d = std::abs(theta - means[0]);
    for (std::size_t k = 1; k < means.size(); ++k) {
        const double d = std::abs(theta - means[k]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

double raw_distortion(std::span<const double> thetas, const std::vector<int>& labels,
                      const std::vector<double>& means) {
    double sse = 0.0;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        const double d = thetas[i] - means[static_cast<std::size_t>(labels[i])];
        sse += d * d;
    }
    return sse / static_cast<double>(thetas.size());
}

}  // namespace

LloydResult lloyd_1d(std::span<const double> thetas, std::vector<double> initial_means,
                     int max_iterations) {
    const std::size_t k = initial_means.size();
    if (k == 0 || k > thetas.size()) {
        throw std::invalid_argument("lloyd_1d: need 1 <= K <= number of points");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("lloyd_1d: need at least one iteration");
    }
    LloydResult result;
    auto& means = initial_means;
    std::vector<int> labels(thetas.size(), -1);
    std::vector<int> counts(k, 0);

    for (int iter = 0; iter < max_iterations; ++iter) {
        bool changed = false;
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            const int r = static_cast<int>(nearest_mean(thetas[i], means));
            changed = changed || r != labels[i];
            labels[i] = r;
            ++counts[static_cast<std::size_t>(r)];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                continue;
            }
            // Only donors from clusters with at least two members, so no
            // cluster is emptied by the move.
            std::size_t far = thetas.size();
            double far_d = -1.0;
            for (std::size_t i = 0; i < thetas.size(); ++i) {
                const auto r = static_cast<std::size_t>(labels[i]);
                const double d = std::abs(thetas[i] - means[r]);
                if (counts[r] > 1 && d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            --counts[static_cast<std::size_t>(labels[far])];
            labels[far] = static_cast<int>(c);
            counts[c] = 1;
            means[c] = thetas[far];
            changed = true;
        }

        std::vector<double> sums(k, 0.0);
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            sums[static_cast<std::size_t>(labels[i])] += thetas[i];
        }
        for (std::size_t c = 0; c < k; ++c) {
            means[c] = sums[c] / counts[c];
        }
        result.distortion_trace.push_back(raw_distortion(thetas, labels, means));
        result.iterations = iter + 1;
        if (!changed) {
            break;
        }
    }
    result.partition = Partition::from_labels(labels);
    result.means = std::move(means);
    return result;
}

Partition kmeans_1d(std::span<const double> thetas, int num_clusters, Rng& rng,
                    const KMeansOptions& options) {
    if (num_clusters < 1 || static_cast<std::size_t>(num_clusters) > thetas.size()) {
        throw std::invalid_argument("kmeans_1d: need 1 <= K <= number of users");
    }
    std::vector<std::size_t> users(thetas.size());
    std::iota(users.begin(), users.end(), std::size_t{0});

    Partition best;
    double best_mse = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < std::max(options.restarts, 1); ++restart) {
        std::vector<std::size_t> picked;
        picked.reserve(static_cast<std::size_t>(num_clusters));
        std::sample(users.begin(), users.end(), std::back_inserter(picked),
                    num_clusters, rng);
        std::vector<double> means;
        for (auto i : picked) {
            means.push_back(thetas[i]);
        }
        auto run = lloyd_1d(thetas, std::move(means), options.max_iterations);
        const double mse = distortion_mse(run.partition, thetas);
        if (mse < best_mse) {
            best_mse = mse;
            best = std::move(run.partition);
        }
    }
    return best;
}

}  // namespace mmnoma
