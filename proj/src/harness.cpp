#include "mmnoma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "mmnoma/noma.hpp"

namespace mmnoma {

std::string_view to_string(Method method) {
    return method == Method::Ahc ? "ahc" : "kmeans";
}

Method parse_method(std::string_view name) {
    if (name == "ahc") {
        return Method::Ahc;
    }
    if (name == "kmeans") {
        return Method::KMeans;
    }
    throw std::invalid_argument("unknown method: " + std::string(name));
}

void ExperimentConfig::validate() const {
    scenario.validate();
    ChannelConfig probe = channel;
    if (antennas.empty()) {
        throw std::invalid_argument("at least one antenna count is required");
    }
    for (int m : antennas) {
        probe.num_antennas = m;
        probe.validate();
    }
    if (!(min_rate_qos >= 0.0)) {
        throw std::invalid_argument("QoS rate must be non-negative");
    }
    if (!(bandwidth_hz > 0.0)) {
        throw std::invalid_argument("bandwidth must be positive");
    }
    if (power_sweep_dbm.empty()) {
        throw std::invalid_argument("power sweep is empty");
    }
    for (double p : power_sweep_dbm) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument("power sweep values must be finite");
        }
    }
    if (methods.empty()) {
        throw std::invalid_argument("at least one method is required");
    }
    if (kmeans_k && (*kmeans_k < 1 || *kmeans_k > scenario.num_users)) {
        throw std::invalid_argument("kmeans K must lie in [1, users]");
    }
    if (num_drops < 1) {
        throw std::invalid_argument("num_drops must be at least 1");
    }
    if (threads < 0) {
        throw std::invalid_argument("threads must be non-negative");
    }
}

int ahc_cluster_count(const MergeHistory& history) {
    if (history.initial_count < 2) {
        return history.initial_count;
    }
    return l_method(evaluation_graph(history)).num_clusters;
}

namespace {

bool row_less(const ResultRow& a, const ResultRow& b) {
    return std::tuple(a.drop, a.method, a.antennas, a.power_dbm) <
           std::tuple(b.drop, b.method, b.antennas, b.power_dbm);
}

bool uses(const ExperimentConfig& config, Method method) {
    return std::find(config.methods.begin(), config.methods.end(), method) !=
           config.methods.end();
}

}  // namespace

std::vector<ResultRow> simulate_drop(const ExperimentConfig& config, int drop) {
    const auto d = static_cast<std::uint64_t>(drop);
    Rng scenario_rng = substream(config.seed, d, Stream::Scenario);
    const Scenario scenario = generate_scenario(config.scenario, scenario_rng);
    const auto thetas = scenario.normalized_directions();

    const bool want_ahc = uses(config, Method::Ahc);
    const bool want_kmeans = uses(config, Method::KMeans);

    struct Choice {
        Method method;
        Partition partition;
    };
    std::vector<Choice> choices;
    if (want_ahc || (want_kmeans && !config.kmeans_k)) {
        const auto history = ahc_run(thetas);
        const int k = ahc_cluster_count(history);
        if (want_ahc) {
            choices.push_back({Method::Ahc, select_partition(history, k)});
        }
        if (want_kmeans && !config.kmeans_k) {
            Rng rng = substream(config.seed, d, Stream::KMeans);
            choices.push_back({Method::KMeans, kmeans_1d(thetas, k, rng)});
        }
    }
    if (want_kmeans && config.kmeans_k) {
        Rng rng = substream(config.seed, d, Stream::KMeans);
        choices.push_back({Method::KMeans, kmeans_1d(thetas, *config.kmeans_k, rng)});
    }

    const double noise = noise_power(config.bandwidth_hz, config.noise_figure_db);
    std::vector<ResultRow> rows;
    for (int m : config.antennas) {
        ChannelConfig ch = config.channel;
        ch.num_antennas = m;
        // Same stream for every M: identical gains and scatterers across arrays.
        Rng channel_rng = substream(config.seed, d, Stream::Channel);
        std::vector<ChannelVector> channels;
        channels.reserve(scenario.users.size());
        for (const auto& user : scenario.users) {
            channels.push_back(draw_channel(user, channel_rng, ch));
        }
        for (const auto& choice : choices) {
            for (double p_dbm : config.power_sweep_dbm) {
                const NomaConfig noma{dbm_to_watts(p_dbm), config.min_rate_qos, noise};
                const auto report = evaluate_partition(scenario, channels, choice.partition, noma);
                rows.push_back({drop, choice.method, m, p_dbm, choice.partition.num_clusters,
                                report.sum_rate, report.outage, report.min_user_rate()});
            }
        }
    }
    std::sort(rows.begin(), rows.end(), row_less);
    return rows;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::ofstream file;
    if (!config.output_path.empty()) {
        file.open(config.output_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw IoError("cannot open output file: " + config.output_path);
        }
    }

    std::vector<std::vector<ResultRow>> per_drop(static_cast<std::size_t>(config.num_drops));
    const int workers = std::min(
        config.num_drops,
        config.threads > 0 ? config.threads
                           : static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (int drop = next++; drop < config.num_drops; drop = next++) {
            try {
                per_drop[static_cast<std::size_t>(drop)] = simulate_drop(config, drop);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    ExperimentResult result;
    for (auto& rows : per_drop) {
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    result.summary = summarize(result.rows);

    if (file.is_open()) {
        write_csv(file, result.rows);
        file.flush();
        if (!file) {
            throw IoError("failed writing output file: " + config.output_path);
        }
    }
    return result;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("summarize: no rows");
    }
    struct Accumulator {
        int drops = 0;
        int outages = 0;
        double k_sum = 0.0;
        std::vector<double> feasible_rates;
    };
    std::map<std::tuple<Method, int, double>, Accumulator> groups;
    for (const auto& r : rows) {
        auto& acc = groups[{r.method, r.antennas, r.power_dbm}];
        ++acc.drops;
        acc.k_sum += r.k_selected;
        if (r.outage) {
            ++acc.outages;
        } else {
            acc.feasible_rates.push_back(r.sum_rate);
        }
    }

    std::vector<SummaryRow> out;
    for (const auto& [key, acc] : groups) {
        SummaryRow s;
        std::tie(s.method, s.antennas, s.power_dbm) = key;
        s.drops = acc.drops;
        s.feasible_drops = static_cast<int>(acc.feasible_rates.size());
        s.outage_fraction = static_cast<double>(acc.outages) / acc.drops;
        s.mean_k = acc.k_sum / acc.drops;
        const auto n = acc.feasible_rates.size();
        if (n > 0) {
            const Eigen::Map<const Eigen::ArrayXd> x(acc.feasible_rates.data(),
                                                     static_cast<Eigen::Index>(n));
            const double mean = x.mean();
            s.mean_sum_rate = mean;
            if (n > 1) {
                const double var = (x - mean).square().sum() / static_cast<double>(n - 1);
                s.ci95_half_width = 1.96 * std::sqrt(var / static_cast<double>(n));
            }
        }
        out.push_back(s);
    }
    return out;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "drop,method,M,power_dbm,K_selected,sum_rate_bps_hz,outage,min_user_rate_bps_hz\n";
    out << std::setprecision(9);
    for (const auto& r : rows) {
        out << r.drop << ',' << to_string(r.method) << ',' << r.antennas << ',' << r.power_dbm
            << ',' << r.k_selected << ',' << r.sum_rate << ',' << (r.outage ? 1 : 0) << ','
            << r.min_user_rate << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
    out << "method,M,power_dbm,drops,feasible_drops,mean_sum_rate_bps_hz,ci95_half_width,"
           "outage_fraction,mean_K\n";
    out << std::setprecision(9);
    for (const auto& s : summary) {
        out << to_string(s.method) << ',' << s.antennas << ',' << s.power_dbm << ',' << s.drops
            << ',' << s.feasible_drops << ',';
        if (s.mean_sum_rate) {
            out << *s.mean_sum_rate;
        } else {
            out << "NA";
        }
        out << ',' << s.ci95_half_width << ',' << s.outage_fraction << ',' << s.mean_k << '\n';
    }
}

namespace {

double parse_double(std::string_view text) {
    // std::from_chars for double is available from GCC 11.
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("not a number: " + std::string(text));
    }
    return value;
}

}  // namespace

std::vector<double> parse_power_range(std::string_view text) {
    const auto first = text.find(':');
    if (first == std::string_view::npos) {
        return {parse_double(text)};
    }
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw std::invalid_argument("power range must look like lo:step:hi");
    }
    const double lo = parse_double(text.substr(0, first));
    const double step = parse_double(text.substr(first + 1, second - first - 1));
    const double hi = parse_double(text.substr(second + 1));
    if (!(step > 0.0) || hi < lo) {
        throw std::invalid_argument("power range needs step > 0 and hi >= lo");
    }
    const auto count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        values.push_back(lo + i * step);
    }
    return values;
}

}  // namespace mmnoma
