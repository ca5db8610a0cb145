#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "mmnoma/channel.hpp"
#include "mmnoma/clustering.hpp"
#include "mmnoma/scenario.hpp"

namespace mmnoma {

struct NomaConfig {
    double total_power = 0.1;     ///< watts
    double min_rate_qos = 0.02;   ///< bits/s/Hz
    double noise_power = 0.0;     ///< watts

    void validate() const;
};

struct Beam {
    int cluster_index = 0;
    CVector weights;
    double power = 0.0;
};

/// Power split inside one cluster. `sic_order` lists members strongest first
/// and `betas[i]` belongs to `sic_order[i]`.
struct ClusterAllocation {
    std::vector<int> sic_order;
    std::vector<double> betas;
    bool feasible = false;
};

struct RateReport {
    std::vector<double> per_user_rate;
    double sum_rate = 0.0;
    bool outage = false;
    int num_clusters = 0;
    std::vector<Beam> beams;
    std::vector<ClusterAllocation> clusters;  ///< sic_order holds user indices

    double min_user_rate() const;
};

/// Steering vector toward the centroid of the members' directions.
CVector beamformer(std::span<const double> cluster_thetas, int num_antennas);

/// |h^H w|^2
double effective_gain(const CVector& h, const CVector& w);
inline double effective_gain(const ChannelVector& h, const CVector& w) {
    return effective_gain(h.entries, w);
}

/// Equal share of the budget per cluster.
std::vector<double> split_inter_cluster_power(int num_clusters, double total_power);

/// Pins every non-strongest member at exactly the QoS rate, weakest first, and
/// leaves the residual fraction to the strongest member. `gains` and
/// `inter_interference` are indexed by member position.
ClusterAllocation allocate_cluster(std::span<const double> gains,
                                   std::span<const double> inter_interference,
                                   double cluster_power, const NomaConfig& cfg);

/// Rate of the member at SIC position `position` (0 = strongest). Signals of
/// stronger members are interference; weaker ones are cancelled.
double user_rate(std::size_t position, double gain, std::span<const double> betas,
                 double cluster_power, double interference, double noise);

RateReport evaluate_partition(const Scenario& scenario, std::span<const ChannelVector> channels,
                              const Partition& partition, const NomaConfig& cfg);

}  // namespace mmnoma
