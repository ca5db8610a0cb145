#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "mmnoma/random.hpp"

namespace mmnoma {

/// Assignment of users to clusters 0..num_clusters-1. Labels are canonical:
/// clusters are numbered in order of their first member.
struct Partition {
    std::vector<int> assignment;
    int num_clusters = 0;

    /// Builds a canonical partition from arbitrary non-negative labels.
    static Partition from_labels(std::span<const int> labels);

    std::vector<std::vector<int>> members() const;
    /// Throws std::invalid_argument if a cluster is empty or a label is out of range.
    void validate(std::size_t num_users) const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// One Ward merge. Clusters are identified by their smallest user index; the
/// merged cluster keeps `first`.
struct MergeStep {
    int first = 0;
    int second = 0;
    double cost = 0.0;
    int resulting_cluster_count = 0;
};

struct MergeHistory {
    std::vector<MergeStep> steps;
    int initial_count = 0;  ///< number of singletons, b
};

/// Merge cost against cluster count: x = m holds the cost of the merge that
/// left m clusters, for m = 1..b-1 (x ascending).
struct EvaluationGraph {
    Eigen::VectorXd x;
    Eigen::VectorXd y;

    Eigen::Index size() const { return x.size(); }
};

struct KneeSelection {
    int num_clusters = 0;
    bool fallback = false;          ///< too few points for a knee search
    std::vector<double> total_rmse;  ///< total_rmse[i] is RMSE(c) for c = i + 2
};

double centroid(std::span<const double> thetas);

/// Within-cluster squared error divided by the number of users.
double distortion_mse(const Partition& partition, std::span<const double> thetas);

/// Ward cost of merging two clusters given their sizes and means.
double merge_cost(int count_k, double mean_k, int count_l, double mean_l);

/// Bottom-up Ward clustering from singletons down to a single cluster. Ties in
/// the minimum cost go to the lexicographically smallest identifier pair.
MergeHistory ahc_run(std::span<const double> thetas);

EvaluationGraph evaluation_graph(const MergeHistory& history);

/// Least-squares fit of a line through (x, y); returns the RMSE of the fit.
double line_fit_rmse(const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXd>& y);

/// L-method knee of the evaluation graph. Splits at c = 2..b-3 and picks the
/// smallest c minimizing c/(b-1) RMSE(left) + (b-c)/(b-1) RMSE(right). With
/// fewer than four points it returns min(2, b) and sets `fallback`.
KneeSelection l_method(const EvaluationGraph& graph);

/// Cuts the dendrogram so that exactly `num_clusters` clusters remain.
Partition select_partition(const MergeHistory& history, int num_clusters);

struct KMeansOptions {
    int restarts = 10;
    int max_iterations = 100;
};

struct LloydResult {
    Partition partition;
    std::vector<double> means;
    std::vector<double> distortion_trace;  ///< MSE after every mean update
    int iterations = 0;
};

/// Lloyd iterations on scalars from the given initial means. Empty clusters
/// take the point farthest from its current mean.
LloydResult lloyd_1d(std::span<const double> thetas, std::vector<double> initial_means,
                     int max_iterations);

/// Best of `restarts` Lloyd runs by distortion_mse, each seeded with K
/// distinct users' directions.
Partition kmeans_1d(std::span<const double> thetas, int num_clusters, Rng& rng,
                    const KMeansOptions& options = {});

}  // namespace mmnoma
