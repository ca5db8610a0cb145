#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "mmnoma/random.hpp"

namespace mmnoma {

using Point2 = Eigen::Vector2d;

/// Poisson cluster process drop parameters. Lengths are in meters.
struct ScenarioConfig {
    int num_users = 10;
    double parent_disk_radius = 5.0;
    double cluster_radius = 1.0;
    double expected_parent_count = 3.0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct UserGeometry {
    Point2 position = Point2::Zero();
    double distance = 0.0;              ///< to the BS at the origin
    double aod = 0.0;                   ///< angle of departure, [0, 2*pi)
    double normalized_direction = 0.0;  ///< sin(aod) for half-wavelength spacing
};

struct Scenario {
    std::vector<UserGeometry> users;
    std::vector<Point2> parents;
    std::vector<int> parent_assignment;  ///< ground-truth parent per user

    std::vector<double> normalized_directions() const;
};

/// Parent points uniform on the disk around the BS. The count is
/// Poisson(expected_parent_count) conditioned on being at least one.
std::vector<Point2> sample_parent_points(const ScenarioConfig& config, Rng& rng);

/// `count` i.i.d. points uniform on the disk of `cluster_radius` around `parent`.
std::vector<Point2> sample_cluster_users(const Point2& parent, double cluster_radius,
                                         int count, Rng& rng);

/// Geometry seen from the BS. A user exactly at the origin gets aod = 0.
UserGeometry user_geometry(const Point2& position);

Scenario generate_scenario(const ScenarioConfig& config, Rng& rng);

}  // namespace mmnoma
