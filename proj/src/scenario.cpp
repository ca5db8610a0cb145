#include "mmnoma/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmnoma {

namespace {

constexpr int kMaxParentResamples = 1'000'000;

Point2 uniform_on_disk(double radius, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = radius * std::sqrt(unit(rng));
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    return {r * std::cos(angle), r * std::sin(angle)};
}

}  // namespace

void ScenarioConfig::validate() const {
    if (num_users < 1) {
        throw std::invalid_argument("num_users must be at least 1");
    }
    if (!(parent_disk_radius > 0.0) || !(cluster_radius > 0.0)) {
        throw std::invalid_argument("disk radii must be positive");
    }
    if (!(expected_parent_count > 0.0)) {
        throw std::invalid_argument("expected_parent_count must be positive");
    }
}

std::vector<double> Scenario::normalized_directions() const {
    std::vector<double> thetas;
    thetas.reserve(users.size());
    for (const auto& u : users) {
        thetas.push_back(u.normalized_direction);
    }
    return thetas;
}

std::vector<Point2> sample_parent_points(const ScenarioConfig& config, Rng& rng) {
    config.validate();
    std::poisson_distribution<int> count_dist(config.expected_parent_count);
    int count = 0;
    for (int attempt = 0; count == 0; ++attempt) {
        if (attempt == kMaxParentResamples) {
            throw std::runtime_error("parent count stayed at zero after 10^6 draws");
        }
        count = count_dist(rng);
    }

    std::vector<Point2> parents;
    parents.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        parents.push_back(uniform_on_disk(config.parent_disk_radius, rng));
    }
    return parents;
}

std::vector<Point2> sample_cluster_users(const Point2& parent, double cluster_radius,
                                         int count, Rng& rng) {
    if (count < 0) {
        throw std::invalid_argument("count must be non-negative");
    }
    if (!(cluster_radius > 0.0)) {
        throw std::invalid_argument("cluster_radius must be positive");
    }
    std::vector<Point2> users;
    users.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        users.push_back(parent + uniform_on_disk(cluster_radius, rng));
    }
    return users;
}

UserGeometry user_geometry(const Point2& position) {
    UserGeometry g;
    g.position = position;
    g.distance = position.norm();
    if (g.distance > 0.0) {
        double phi = std::atan2(position.y(), position.x());
        if (phi < 0.0) {
            phi += 2.0 * std::numbers::pi;
        }
        // atan2 can round a tiny negative angle up to exactly 2*pi.
        if (phi >= 2.0 * std::numbers::pi) {
            phi = 0.0;
        }
        g.aod = phi;
    }
    g.normalized_direction = std::sin(g.aod);
    return g;
}

Scenario generate_scenario(const ScenarioConfig& config, Rng& rng) {
    config.validate();
    Scenario s;
    s.parents = sample_parent_points(config, rng);

    const int num_parents = static_cast<int>(s.parents.size());
    std::uniform_int_distribution<int> pick(0, num_parents - 1);
    s.parent_assignment.resize(static_cast<std::size_t>(config.num_users));
    std::vector<int> per_parent(s.parents.size(), 0);
    for (auto& a : s.parent_assignment) {
        a = pick(rng);
        ++per_parent[static_cast<std::size_t>(a)];
    }

    // Offspring are drawn parent by parent, then handed out in user order.
    std::vector<std::vector<Point2>> offspring(s.parents.size());
    for (int k = 0; k < num_parents; ++k) {
        offspring[static_cast<std::size_t>(k)] =
            sample_cluster_users(s.parents[static_cast<std::size_t>(k)], config.cluster_radius,
                                 per_parent[static_cast<std::size_t>(k)], rng);
    }
    std::vector<std::size_t> cursor(s.parents.size(), 0);
    s.users.reserve(s.parent_assignment.size());
    for (int a : s.parent_assignment) {
        const auto k = static_cast<std::size_t>(a);
        s.users.push_back(user_geometry(offspring[k][cursor[k]++]));
    }
    return s;
}

}  // namespace mmnoma
