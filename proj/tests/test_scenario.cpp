#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mmnoma/scenario.hpp"

using namespace mmnoma;

TEST(SampleParentPoints, InsideParentDisk) {
    ScenarioConfig cfg;
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        for (const auto& p : sample_parent_points(cfg, rng)) {
            EXPECT_LE(p.norm(), cfg.parent_disk_radius);
        }
    }
}

TEST(SampleParentPoints, SameSeedSamePoints) {
    ScenarioConfig cfg;
    Rng a(5);
    Rng b(5);
    EXPECT_EQ(sample_parent_points(cfg, a), sample_parent_points(cfg, b));
}

TEST(SampleParentPoints, ConditionedPoissonMean) {
    // E[C | C >= 1] = 3 / (1 - e^-3) = 3.157
    ScenarioConfig cfg;
    Rng rng(2024);
    double total = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const auto parents = sample_parent_points(cfg, rng);
        ASSERT_GE(parents.size(), 1u);
        total += static_cast<double>(parents.size());
    }
    const double mean = total / draws;
    EXPECT_GE(mean, 3.10);
    EXPECT_LE(mean, 3.22);
}

TEST(SampleClusterUsers, OffsetsWithinRadius) {
    Rng rng(3);
    const Point2 parent(2.0, -1.5);
    for (const auto& p : sample_cluster_users(parent, 1.0, 5000, rng)) {
        EXPECT_LE((p - parent).norm(), 1.0);
    }
    EXPECT_TRUE(sample_cluster_users(parent, 1.0, 0, rng).empty());
}

TEST(SampleClusterUsers, RejectsBadArguments) {
    Rng rng(3);
    EXPECT_THROW(sample_cluster_users(Point2::Zero(), 1.0, -1, rng), std::invalid_argument);
    EXPECT_THROW(sample_cluster_users(Point2::Zero(), 0.0, 3, rng), std::invalid_argument);
}

TEST(SampleClusterUsers, MeanOffsetIsTwoThirdsRadius) {
    Rng rng(99);
    const auto pts = sample_cluster_users(Point2::Zero(), 1.0, 100000, rng);
    double sum = 0.0;
    for (const auto& p : pts) {
        sum += p.norm();
    }
    const double mean = sum / static_cast<double>(pts.size());
    EXPECT_GE(mean, 0.664);
    EXPECT_LE(mean, 0.670);
}

TEST(SampleClusterUsers, RadialDistributionChiSquare) {
    // Ten equal-probability annuli: r_k = R sqrt(k/10). Critical value of
    // chi-square with 9 dof at p = 0.001 is 27.877.
    Rng rng(1234);
    const int n = 100000;
    const auto pts = sample_cluster_users(Point2::Zero(), 1.0, n, rng);
    std::array<int, 10> bins{};
    for (const auto& p : pts) {
        const double r = p.norm();
        const int k = std::min(9, static_cast<int>(std::floor(r * r * 10.0)));
        ++bins[static_cast<std::size_t>(k)];
    }
    double chi2 = 0.0;
    const double expected = n / 10.0;
    for (int b : bins) {
        chi2 += (b - expected) * (b - expected) / expected;
    }
    EXPECT_LT(chi2, 27.877);
}

TEST(UserGeometry, AxisAlignedPositions) {
    const auto east = user_geometry(Point2(3.0, 0.0));
    EXPECT_DOUBLE_EQ(east.distance, 3.0);
    EXPECT_DOUBLE_EQ(east.aod, 0.0);
    EXPECT_DOUBLE_EQ(east.normalized_direction, 0.0);

    const auto north = user_geometry(Point2(0.0, 2.0));
    EXPECT_DOUBLE_EQ(north.aod, std::numbers::pi / 2);
    EXPECT_DOUBLE_EQ(north.normalized_direction, 1.0);
}

TEST(UserGeometry, Diagonal) {
    const auto g = user_geometry(Point2(1.0, 1.0));
    EXPECT_NEAR(g.distance, 1.41421, 1e-5);
    EXPECT_NEAR(g.aod, std::numbers::pi / 4, 1e-12);
    EXPECT_NEAR(g.normalized_direction, 0.70711, 1e-5);
}

TEST(UserGeometry, OriginAndLowerHalfPlane) {
    const auto origin = user_geometry(Point2::Zero());
    EXPECT_EQ(origin.aod, 0.0);
    EXPECT_EQ(origin.distance, 0.0);

    const auto south = user_geometry(Point2(0.0, -1.0));
    EXPECT_NEAR(south.aod, 1.5 * std::numbers::pi, 1e-12);
    EXPECT_NEAR(south.normalized_direction, -1.0, 1e-12);
    EXPECT_GE(south.aod, 0.0);
    EXPECT_LT(south.aod, 2 * std::numbers::pi);
}

TEST(GenerateScenario, ExactUserCountAndInvariants) {
    ScenarioConfig cfg;
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = generate_scenario(cfg, rng);
        ASSERT_EQ(s.users.size(), 10u);
        ASSERT_EQ(s.parent_assignment.size(), 10u);
        for (std::size_t u = 0; u < s.users.size(); ++u) {
            const auto& g = s.users[u];
            EXPECT_LE(g.distance, cfg.parent_disk_radius + cfg.cluster_radius);
            EXPECT_GE(g.normalized_direction, -1.0);
            EXPECT_LE(g.normalized_direction, 1.0);
            EXPECT_NEAR(g.normalized_direction, std::sin(g.aod), 1e-15);
            EXPECT_NEAR(g.distance, g.position.norm(), 1e-15);
            const int a = s.parent_assignment[u];
            ASSERT_GE(a, 0);
            ASSERT_LT(a, static_cast<int>(s.parents.size()));
            EXPECT_LE((g.position - s.parents[static_cast<std::size_t>(a)]).norm(),
                      cfg.cluster_radius + 1e-12);
        }
    }
}

TEST(GenerateScenario, SingleParentKeepsUsersTogether) {
    // A small intensity makes C = 1 the usual outcome after conditioning.
    ScenarioConfig cfg;
    cfg.expected_parent_count = 0.01;
    Rng rng(8);
    int single = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = generate_scenario(cfg, rng);
        if (s.parents.size() != 1) {
            continue;
        }
        ++single;
        for (const auto& u : s.users) {
            EXPECT_LE((u.position - s.parents[0]).norm(), cfg.cluster_radius);
        }
    }
    EXPECT_GE(single, 45);
}

TEST(GenerateScenario, DeterministicForSeed) {
    ScenarioConfig cfg;
    cfg.num_users = 25;
    Rng a(77);
    Rng b(77);
    const auto s1 = generate_scenario(cfg, a);
    const auto s2 = generate_scenario(cfg, b);
    ASSERT_EQ(s1.users.size(), s2.users.size());
    for (std::size_t u = 0; u < s1.users.size(); ++u) {
        EXPECT_EQ(s1.users[u].position, s2.users[u].position);
        EXPECT_EQ(s1.users[u].aod, s2.users[u].aod);
    }
    EXPECT_EQ(s1.parent_assignment, s2.parent_assignment);
}

TEST(ScenarioConfig, Validation) {
    ScenarioConfig cfg;
    cfg.num_users = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.cluster_radius = -1.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.expected_parent_count = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
