#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Core>

#include "mmnoma/random.hpp"
#include "mmnoma/scenario.hpp"

namespace mmnoma {

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using CVector = ComplexVector<double>;

struct ChannelConfig {
    int num_antennas = 8;
    double pathloss_exp_los = 2.0;
    double pathloss_exp_nlos = 4.0;
    int num_nlos_paths = 0;  ///< 0 selects the LOS-only model
    double gain_variance = 1.0;

    void validate() const;
};

struct ChannelVector {
    CVector entries;
    double theta = 0.0;  ///< LOS normalized direction
    std::complex<double> gain{0.0, 0.0};
    double distance = 0.0;
};

/// ULA response toward normalized direction `theta`:
/// entry m is exp(-j*pi*m*theta) / sqrt(M). Unit norm.
template <typename Scalar>
ComplexVector<Scalar> steering_vector(Scalar theta, Eigen::Index num_antennas) {
    if (num_antennas < 1) {
        throw std::invalid_argument("steering_vector: antenna count must be positive");
    }
    const Scalar scale = Scalar(1) / std::sqrt(static_cast<Scalar>(num_antennas));
    ComplexVector<Scalar> a(num_antennas);
    for (Eigen::Index m = 0; m < num_antennas; ++m) {
        a[m] = std::polar(scale, -std::numbers::pi_v<Scalar> * static_cast<Scalar>(m) * theta);
    }
    return a;
}

/// |h_i^H h_j| / (||h_i|| ||h_j||).
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar cosine_similarity(const Eigen::MatrixBase<DerivedA>& hi,
                                                const Eigen::MatrixBase<DerivedB>& hj) {
    const auto ni = hi.norm();
    const auto nj = hj.norm();
    if (ni == 0 || nj == 0) {
        throw std::invalid_argument("cosine_similarity: zero-norm channel");
    }
    return std::abs(hi.dot(hj)) / (ni * nj);
}

inline double cosine_similarity(const ChannelVector& hi, const ChannelVector& hj) {
    return cosine_similarity(hi.entries, hj.entries);
}

/// Magnitude of the normalized Dirichlet kernel, |a(theta_i)^H a(theta_j)|.
/// Evaluates to 1 on the removable singularity (delta = 0 mod 2).
template <typename Scalar>
Scalar dirichlet_similarity(Scalar theta_i, Scalar theta_j, Eigen::Index num_antennas) {
    if (num_antennas < 1) {
        throw std::invalid_argument("dirichlet_similarity: antenna count must be positive");
    }
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar half = pi * (theta_i - theta_j) / Scalar(2);
    const Scalar den = std::sin(half);
    if (std::abs(den) < Scalar(1e-12)) {
        return Scalar(1);
    }
    const auto m = static_cast<Scalar>(num_antennas);
    return std::abs(std::sin(m * half) / den) / m;
}

/// sqrt(M) * alpha * a(theta) / (1 + d^eta_los).
ChannelVector los_channel(const UserGeometry& user, std::complex<double> alpha,
                          const ChannelConfig& cfg);

/// LOS term plus cfg.num_nlos_paths scattered paths, each with a CN(0, sigma^2)
/// gain and a direction uniform on [-1, 1]. Consumes no randomness when L = 0.
ChannelVector full_channel(const UserGeometry& user, std::complex<double> alpha, Rng& rng,
                           const ChannelConfig& cfg);

/// One CN(0, variance) draw.
std::complex<double> draw_complex_gain(double variance, Rng& rng);

/// Draws the LOS gain then the NLOS paths. The number of draws does not depend
/// on the antenna count, so one stream yields paired channels across M.
ChannelVector draw_channel(const UserGeometry& user, Rng& rng, const ChannelConfig& cfg);

/// Thermal noise in watts for (-174 + 10 log10(W) + Nf) dBm.
double noise_power(double bandwidth_hz, double noise_figure_db);

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace mmnoma
