#include "mmnoma/noma.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mmnoma {

void NomaConfig::validate() const {
    if (!(total_power > 0.0)) {
        throw std::invalid_argument("total_power must be positive");
    }
    if (!(min_rate_qos >= 0.0)) {
        throw std::invalid_argument("min_rate_qos must be non-negative");
    }
    if (!(noise_power > 0.0)) {
        throw std::invalid_argument("noise_power must be positive");
    }
}

double RateReport::min_user_rate() const {
    if (per_user_rate.empty()) {
        return 0.0;
    }
    return *std::min_element(per_user_rate.begin(), per_user_rate.end());
}

CVector beamformer(std::span<const double> cluster_thetas, int num_antennas) {
    return steering_vector(centroid(cluster_thetas), num_antennas);
}

double effective_gain(const CVector& h, const CVector& w) {
    if (h.size() != w.size()) {
        throw std::invalid_argument("effective_gain: dimension mismatch");
    }
    return std::norm(h.dot(w));
}

std::vector<double> split_inter_cluster_power(int num_clusters, double total_power) {
    if (num_clusters < 1) {
        throw std::invalid_argument("split_inter_cluster_power: need at least one cluster");
    }
    return std::vector<double>(static_cast<std::size_t>(num_clusters),
                               total_power / num_clusters);
}

double user_rate(std::size_t position, double gain, std::span<const double> betas,
                 double cluster_power, double interference, double noise) {
    const double stronger = std::accumulate(betas.begin(),
                                            betas.begin() + static_cast<std::ptrdiff_t>(position), 0.0);
    const double signal = cluster_power * betas[position] * gain;
    const double sinr = signal / (cluster_power * gain * stronger + interference + noise);
    return std::log2(1.0 + sinr);
}

ClusterAllocation allocate_cluster(std::span<const double> gains,
                                   std::span<const double> inter_interference,
                                   double cluster_power, const NomaConfig& cfg) {
    if (gains.empty() || gains.size() != inter_interference.size()) {
        throw std::invalid_argument("allocate_cluster: need one interference value per member");
    }
    if (!(cluster_power > 0.0)) {
        throw std::invalid_argument("allocate_cluster: cluster power must be positive");
    }
    const std::size_t n = gains.size();
    ClusterAllocation out;
    out.sic_order.resize(n);
    std::iota(out.sic_order.begin(), out.sic_order.end(), 0);
    std::stable_sort(out.sic_order.begin(), out.sic_order.end(),
                     [&](int a, int b) { return gains[static_cast<std::size_t>(a)] >
                                                gains[static_cast<std::size_t>(b)]; });

    const double eps = std::exp2(cfg.min_rate_qos) - 1.0;
    const double noise = cfg.noise_power;
    out.betas.assign(n, 0.0);
    bool served = true;
    double weaker = 0.0;  // sum of betas already fixed for weaker members
    for (std::size_t i = n - 1; i >= 1; --i) {
        const auto member = static_cast<std::size_t>(out.sic_order[i]);
        const double pg = cluster_power * gains[member];
        double beta = 0.0;
        if (pg > 0.0) {
            beta = eps * (pg * (1.0 - weaker) + inter_interference[member] + noise) /
                   (pg * (1.0 + eps));
        } else if (eps > 0.0) {
            served = false;
        }
        // Past the budget the drop is already lost; keep the split a valid
        // distribution so the reported rates stay finite.
        if (beta > 1.0 - weaker) {
            served = false;
            beta = std::max(0.0, 1.0 - weaker);
        }
        out.betas[i] = beta;
        weaker += beta;
    }
    out.betas[0] = 1.0 - weaker;

    const auto strongest = static_cast<std::size_t>(out.sic_order[0]);
    if (out.betas[0] <= 0.0) {
        out.betas[0] = 0.0;
        out.feasible = false;
        return out;
    }
    const double strong_rate = user_rate(0, gains[strongest], out.betas, cluster_power,
                                         inter_interference[strongest], noise);
    out.feasible = served && strong_rate >= cfg.min_rate_qos;
    return out;
}

RateReport evaluate_partition(const Scenario& scenario, std::span<const ChannelVector> channels,
                              const Partition& partition, const NomaConfig& cfg) {
    cfg.validate();
    const std::size_t num_users = scenario.users.size();
    if (channels.size() != num_users) {
        throw std::invalid_argument("evaluate_partition: one channel per user required");
    }
    partition.validate(num_users);
    const Eigen::Index m = channels.front().entries.size();
    const auto thetas = scenario.normalized_directions();
    const auto groups = partition.members();
    const auto powers = split_inter_cluster_power(partition.num_clusters, cfg.total_power);

    RateReport report;
    report.num_clusters = partition.num_clusters;
    report.per_user_rate.assign(num_users, 0.0);

    Eigen::MatrixXcd h(m, static_cast<Eigen::Index>(num_users));
    for (std::size_t u = 0; u < num_users; ++u) {
        if (channels[u].entries.size() != m) {
            throw std::invalid_argument("evaluate_partition: channel dimensions differ");
        }
        h.col(static_cast<Eigen::Index>(u)) = channels[u].entries;
    }
    Eigen::MatrixXcd w(m, partition.num_clusters);
    for (int k = 0; k < partition.num_clusters; ++k) {
        std::vector<double> member_thetas;
        for (int u : groups[static_cast<std::size_t>(k)]) {
            member_thetas.push_back(thetas[static_cast<std::size_t>(u)]);
        }
        w.col(k) = beamformer(member_thetas, static_cast<int>(m));
        report.beams.push_back({k, w.col(k), powers[static_cast<std::size_t>(k)]});
    }

    // gain(u, k) = |h_u^H w_k|^2
    const Eigen::MatrixXd gain = (h.adjoint() * w).cwiseAbs2();

    for (int k = 0; k < partition.num_clusters; ++k) {
        const auto& members = groups[static_cast<std::size_t>(k)];
        const double pk = powers[static_cast<std::size_t>(k)];
        std::vector<double> g;
        std::vector<double> interference;
        for (int u : members) {
            g.push_back(gain(u, k));
            double leak = 0.0;
            for (int q = 0; q < partition.num_clusters; ++q) {
                if (q != k) {
                    leak += powers[static_cast<std::size_t>(q)] * gain(u, q);
                }
            }
            interference.push_back(leak);
        }
        auto alloc = allocate_cluster(g, interference, pk, cfg);
        for (std::size_t i = 0; i < members.size(); ++i) {
            const auto local = static_cast<std::size_t>(alloc.sic_order[i]);
            const int u = members[local];
            report.per_user_rate[static_cast<std::size_t>(u)] =
                user_rate(i, g[local], alloc.betas, pk, interference[local], cfg.noise_power);
            alloc.sic_order[i] = u;
        }
        report.outage = report.outage || !alloc.feasible;
        report.clusters.push_back(std::move(alloc));
    }
    report.sum_rate = std::accumulate(report.per_user_rate.begin(), report.per_user_rate.end(), 0.0);
    return report;
}

}  // namespace mmnoma
