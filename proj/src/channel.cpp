#include "mmnoma/channel.hpp"

namespace mmnoma {

void ChannelConfig::validate() const {
    if (num_antennas < 1) {
        throw std::invalid_argument("num_antennas must be at least 1");
    }
    if (!(pathloss_exp_los > 0.0) || !(pathloss_exp_nlos > 0.0)) {
        throw std::invalid_argument("path-loss exponents must be positive");
    }
    if (num_nlos_paths < 0) {
        throw std::invalid_argument("num_nlos_paths must be non-negative");
    }
    if (!(gain_variance > 0.0)) {
        throw std::invalid_argument("gain_variance must be positive");
    }
}

ChannelVector los_channel(const UserGeometry& user, std::complex<double> alpha,
                          const ChannelConfig& cfg) {
    cfg.validate();
    const double m = cfg.num_antennas;
    const double attenuation = 1.0 + std::pow(user.distance, cfg.pathloss_exp_los);
    ChannelVector h;
    h.entries = (std::sqrt(m) * alpha / attenuation) *
                steering_vector(user.normalized_direction, cfg.num_antennas);
    h.theta = user.normalized_direction;
    h.gain = alpha;
    h.distance = user.distance;
    return h;
}

ChannelVector full_channel(const UserGeometry& user, std::complex<double> alpha, Rng& rng,
                           const ChannelConfig& cfg) {
    ChannelVector h = los_channel(user, alpha, cfg);
    if (cfg.num_nlos_paths == 0) {
        return h;
    }
    const double m = cfg.num_antennas;
    const double attenuation = 1.0 + std::pow(user.distance, cfg.pathloss_exp_nlos);
    std::uniform_real_distribution<double> direction(-1.0, 1.0);
    for (int l = 0; l < cfg.num_nlos_paths; ++l) {
        const auto alpha_l = draw_complex_gain(cfg.gain_variance, rng);
        const double theta_l = direction(rng);
        h.entries += (std::sqrt(m) * alpha_l / attenuation) *
                     steering_vector(theta_l, cfg.num_antennas);
    }
    return h;
}

std::complex<double> draw_complex_gain(double variance, Rng& rng) {
    std::normal_distribution<double> component(0.0, std::sqrt(variance / 2.0));
    const double re = component(rng);
    const double im = component(rng);
    return {re, im};
}

ChannelVector draw_channel(const UserGeometry& user, Rng& rng, const ChannelConfig& cfg) {
    const auto alpha = draw_complex_gain(cfg.gain_variance, rng);
    return full_channel(user, alpha, rng, cfg);
}

double noise_power(double bandwidth_hz, double noise_figure_db) {
    if (!(bandwidth_hz > 0.0)) {
        throw std::invalid_argument("bandwidth must be positive");
    }
    return dbm_to_watts(-174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
}

}  // namespace mmnoma
