#include <cmath>

#include <gtest/gtest.h>

#include "wsncal/errors.hpp"
#include "wsncal/scene.hpp"

using namespace wsncal;

namespace {

double norm(const Point& p) { return std::hypot(p.x, p.y); }

void expect_separated(const std::vector<Point>& pts, double min_sep) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      EXPECT_GE(distance(pts[i], pts[j]), min_sep) << i << "," << j;
}

}  // namespace

TEST(PlacePoints, SinglePointInsideDisk) {
  RandomStream rng(11);
  const auto pts = place_points(1, 100.0, 12.0, rng);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_LE(pts[0].x * pts[0].x + pts[0].y * pts[0].y, 100.0 * 100.0);
}

TEST(PlacePoints, TwoPointsRespectSeparation) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream rng(seed);
    const auto pts = place_points(2, 100.0, 12.0, rng);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_GE(distance(pts[0], pts[1]), 12.0);
  }
}

TEST(PlacePoints, InfeasiblePackingThrowsCapacityError) {
  // Disks of radius 6 around each point must fit in a radius-16 disk, so at
  // most (16/6)^2 < 8 points can be placed; 200 is far out of reach.
  RandomStream rng(3);
  EXPECT_THROW(place_points(200, 10.0, 12.0, rng), CapacityError);
}

TEST(PlacePoints, RejectsBadArguments) {
  RandomStream rng(3);
  EXPECT_THROW(place_points(0, 10.0, 1.0, rng), ContractError);
  EXPECT_THROW(place_points(1, 0.0, 1.0, rng), ContractError);
  EXPECT_THROW(place_points(1, 10.0, -1.0, rng), ContractError);
}

TEST(PlacePoints, RoughlyUniformOverDisk) {
  // Uniform over the disk puts a quarter of the mass inside half the radius.
  RandomStream rng(5);
  const auto pts = place_points(4000, 100.0, 0.0, rng);
  int inner = 0;
  for (const auto& p : pts) inner += norm(p) < 50.0 ? 1 : 0;
  EXPECT_NEAR(inner / 4000.0, 0.25, 0.03);
}

TEST(MobilePath, WaypointCountWithinRange) {
  SceneParams params;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomStream rng(seed);
    const auto path = sample_mobile_path({0.0, 0.0}, params, rng);
    EXPECT_GE(path.waypoints.size(), 5u);
    EXPECT_LE(path.waypoints.size(), 15u);
  }
}

TEST(MobilePath, ForcedCountBoundary) {
  SceneParams params;
  RandomStream rng(9);
  const auto path = sample_mobile_path({3.0, -4.0}, params, rng, 5);
  ASSERT_EQ(path.waypoints.size(), 5u);
  for (const auto& w : path.waypoints) {
    EXPECT_TRUE(std::isfinite(w.x));
    EXPECT_TRUE(std::isfinite(w.y));
  }
}

TEST(MobilePath, WaypointsWithinCenterPlusMaxRadius) {
  SceneParams params;
  const Scene scene = generate_scene(params, 2024);
  for (const auto& path : scene.mobile_paths) {
    EXPECT_LE(norm(path.center), params.sensor_radius);
    for (const auto& w : path.waypoints) {
      const double r = distance(w, path.center);
      EXPECT_GE(r, params.waypoint_radius_min - 1e-9);
      EXPECT_LE(r, params.waypoint_radius_max + 1e-9);
      EXPECT_LE(norm(w), norm(path.center) + params.waypoint_radius_max + 1e-9);
      EXPECT_LE(norm(w), params.sensor_radius + params.waypoint_radius_max + 1e-9);
    }
  }
}

TEST(PositionAt, StaticAndCyclicMobile) {
  Scene scene;
  scene.static_sensors = {{1.0, 2.0}};
  MobilePath path;
  for (int j = 0; j < 5; ++j) path.waypoints.push_back({double(j), -double(j)});
  scene.mobile_paths = {path};

  for (std::size_t t : {0u, 7u, 8639u}) {
    EXPECT_EQ(position_at(scene, 0, SensorKind::kStatic, t), (Point{1.0, 2.0}));
  }
  EXPECT_EQ(position_at(scene, 0, SensorKind::kMobile, 0),
            position_at(scene, 0, SensorKind::kMobile, 5));
  EXPECT_EQ(position_at(scene, 0, SensorKind::kMobile, 3), path.waypoints[3]);
  EXPECT_THROW(position_at(scene, 1, SensorKind::kStatic, 0), ContractError);
  EXPECT_THROW(position_at(scene, 1, SensorKind::kMobile, 0), ContractError);
}

TEST(PositionAt, MobileIsPeriodic) {
  const Scene scene = generate_scene(SceneParams{}, 77);
  for (std::size_t j = 0; j < scene.mobile_paths.size(); ++j) {
    const std::size_t k = scene.mobile_paths[j].waypoints.size();
    for (std::size_t t = 0; t < 100; ++t) {
      EXPECT_EQ(position_at(scene, j, SensorKind::kMobile, t),
                position_at(scene, j, SensorKind::kMobile, t + k));
    }
  }
}

TEST(SensorRef, StaticThenMobile) {
  const Scene scene = generate_scene(SceneParams{}, 1);
  EXPECT_EQ(sensor_ref(scene, 0).kind, SensorKind::kStatic);
  EXPECT_EQ(sensor_ref(scene, 29).kind, SensorKind::kStatic);
  EXPECT_EQ(sensor_ref(scene, 30).kind, SensorKind::kMobile);
  EXPECT_EQ(sensor_ref(scene, 30).index, 0u);
  EXPECT_THROW(sensor_ref(scene, 40), ContractError);
}

TEST(GenerateScene, ConstraintsHoldAcrossSeeds) {
  SceneParams params;
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const Scene scene = generate_scene(params, seed);
    ASSERT_EQ(scene.sources.size(), 20u);
    ASSERT_EQ(scene.static_sensors.size(), 30u);
    ASSERT_EQ(scene.mobile_paths.size(), 10u);
    EXPECT_EQ(scene.system_radius, 100.0);
    for (const auto& p : scene.sources) EXPECT_LE(norm(p), 100.0);
    for (const auto& p : scene.static_sensors) EXPECT_LE(norm(p), 80.0);
    expect_separated(scene.sources, 12.0);
    expect_separated(scene.static_sensors, 12.0);
    std::vector<Point> centers;
    for (const auto& path : scene.mobile_paths) centers.push_back(path.center);
    expect_separated(centers, 12.0);
  }
}

TEST(GenerateScene, DeterministicAndStreamIsolated) {
  SceneParams params;
  const Scene a = generate_scene(params, 42);
  const Scene b = generate_scene(params, 42);
  EXPECT_EQ(a.sources, b.sources);
  EXPECT_EQ(a.static_sensors, b.static_sensors);
  for (std::size_t j = 0; j < a.mobile_paths.size(); ++j)
    EXPECT_EQ(a.mobile_paths[j].waypoints, b.mobile_paths[j].waypoints);

  // More static sensors must not move the sources.
  SceneParams more = params;
  more.n_static = 35;
  const Scene c = generate_scene(more, 42);
  EXPECT_EQ(a.sources, c.sources);
}
