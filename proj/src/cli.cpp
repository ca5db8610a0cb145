#include "mmnoma/cli.hpp"

#include <algorithm>
#include <fstream>

#include "CLI11.hpp"
#include "mmnoma/harness.hpp"

namespace mmnoma {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    ExperimentConfig config;
    std::vector<int> antennas;
    std::vector<std::string> methods;
    std::string power = "0:5:30";
    std::string kmeans_k = "2";
    std::string summary_path;

    CLI::App app{"Monte Carlo sum-rate simulator for clustered mmWave-NOMA downlink"};
    app.name("mmnoma_sim");
    app.set_config("--config", "", "Flat key = value file mirroring the flags");
    app.add_option("--users", config.scenario.num_users, "Users per drop")->capture_default_str();
    app.add_option("--antennas", antennas, "BS antenna count (repeatable, default 2 4 8)");
    app.add_option("--power-dbm", power, "Transmit power sweep lo:step:hi in dBm")
        ->capture_default_str();
    app.add_option("--drops", config.num_drops, "Monte Carlo drops")->capture_default_str();
    app.add_option("--seed", config.seed, "Master seed")->capture_default_str();
    app.add_option("--method", methods, "Clustering method (repeatable: ahc | kmeans)")
        ->check(CLI::IsMember({"ahc", "kmeans"}));
    app.add_option("--kmeans-k", kmeans_k, "k-means cluster count, or from-ahc")
        ->capture_default_str();
    app.add_option("--qos", config.min_rate_qos, "Minimum per-user rate, bits/s/Hz")
        ->capture_default_str();
    app.add_option("--bandwidth-hz", config.bandwidth_hz, "Bandwidth for the noise floor")
        ->capture_default_str();
    app.add_option("--noise-figure-db", config.noise_figure_db, "Receiver noise figure")
        ->capture_default_str();
    app.add_option("--parent-radius", config.scenario.parent_disk_radius,
                   "Disk radius for cluster parents, m")
        ->capture_default_str();
    app.add_option("--cluster-radius", config.scenario.cluster_radius,
                   "Disk radius around each parent, m")
        ->capture_default_str();
    app.add_option("--expected-parents", config.scenario.expected_parent_count,
                   "Mean number of parents")
        ->capture_default_str();
    app.add_option("--nlos-paths", config.channel.num_nlos_paths, "NLOS paths (0 = LOS only)")
        ->capture_default_str();
    app.add_option("--output", config.output_path, "Per-drop results CSV");
    app.add_option("--summary", summary_path, "Also write the summary table to this CSV");
    app.add_option("--threads", config.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::FileError& e) {
        err << e.what() << '\n';
        return kExitIoFailure;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitInvalidConfig;
    }

    try {
        if (!antennas.empty()) {
            config.antennas = antennas;
        }
        if (!methods.empty()) {
            config.methods.clear();
            for (const auto& m : methods) {
                const auto method = parse_method(m);
                if (std::find(config.methods.begin(), config.methods.end(), method) ==
                    config.methods.end()) {
                    config.methods.push_back(method);
                }
            }
        }
        config.power_sweep_dbm = parse_power_range(power);
        if (kmeans_k == "from-ahc") {
            config.kmeans_k.reset();
        } else {
            std::size_t used = 0;
            const int k = std::stoi(kmeans_k, &used);
            if (used != kmeans_k.size()) {
                throw std::invalid_argument("--kmeans-k must be an integer or from-ahc");
            }
            config.kmeans_k = k;
        }
        config.scenario.seed = config.seed;
        config.validate();
    } catch (const std::exception& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    }

    std::ofstream summary_file;
    if (!summary_path.empty()) {
        summary_file.open(summary_path, std::ios::binary | std::ios::trunc);
        if (!summary_file) {
            err << "cannot open summary file: " << summary_path << '\n';
            return kExitIoFailure;
        }
    }

    try {
        const auto result = run_experiment(config);
        write_summary_csv(out, result.summary);
        if (summary_file.is_open()) {
            write_summary_csv(summary_file, result.summary);
            if (!summary_file.flush()) {
                err << "failed writing summary file: " << summary_path << '\n';
                return kExitIoFailure;
            }
        }
    } catch (const IoError& e) {
        err << e.what() << '\n';
        return kExitIoFailure;
    } catch (const std::invalid_argument& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    }
    return kExitOk;
}

}  // namespace mmnoma
