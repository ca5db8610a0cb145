#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmnoma/channel.hpp"
#include "mmnoma/clustering.hpp"
#include "mmnoma/scenario.hpp"

namespace mmnoma {

enum class Method { Ahc = 0, KMeans = 1 };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

/// Raised when the output cannot be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    ScenarioConfig scenario;
    ChannelConfig channel;  ///< num_antennas is taken from `antennas`
    std::vector<int> antennas{2, 4, 8};
    double min_rate_qos = 0.02;
    double bandwidth_hz = 2e9;
    double noise_figure_db = 10.0;
    std::vector<double> power_sweep_dbm{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    std::vector<Method> methods{Method::Ahc, Method::KMeans};
    std::optional<int> kmeans_k = 2;  ///< empty: reuse the K chosen by AHC
    int num_drops = 500;
    std::uint64_t seed = 1;
    std::string output_path;  ///< empty: nothing is written
    int threads = 1;          ///< 0: one per hardware thread

    void validate() const;
};

struct ResultRow {
    int drop = 0;
    Method method = Method::Ahc;
    int antennas = 0;
    double power_dbm = 0.0;
    int k_selected = 0;
    double sum_rate = 0.0;
    bool outage = false;
    double min_user_rate = 0.0;
};

struct SummaryRow {
    Method method = Method::Ahc;
    int antennas = 0;
    double power_dbm = 0.0;
    int drops = 0;
    int feasible_drops = 0;
    std::optional<double> mean_sum_rate;  ///< over feasible drops only
    double ci95_half_width = 0.0;
    double outage_fraction = 0.0;
    double mean_k = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<SummaryRow> summary;
};

/// K picked by the L-method on the Ward evaluation graph (1 for a single user).
int ahc_cluster_count(const MergeHistory& history);

/// Every row for one drop, sorted by (method, antennas, power).
std::vector<ResultRow> simulate_drop(const ExperimentConfig& config, int drop);

/// All drops, sorted by (drop, method, antennas, power). When output_path is
/// set the file is opened before any work and the CSV is written to it.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Per (method, antennas, power) statistics. Throws on empty input.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary);

/// Parses "lo:step:hi" (inclusive) or a single value.
std::vector<double> parse_power_range(std::string_view text);

}  // namespace mmnoma
