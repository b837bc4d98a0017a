#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wsncal/random.hpp"

namespace wsncal {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

enum class SensorKind { kStatic, kMobile };

const char* to_string(SensorKind kind);

struct SceneParams {
  int n_sources = 20;
  int n_static = 30;
  int n_mobile = 10;
  double source_radius = 100.0;
  double sensor_radius = 80.0;
  double min_separation = 12.0;
  double waypoint_radius_min = 5.0;
  double waypoint_radius_max = 20.0;
  int waypoint_count_min = 5;
  int waypoint_count_max = 15;
};

struct MobilePath {
  Point center;
  std::vector<Point> waypoints;
};

struct Scene {
  // The source placement radius doubles as the system radius of the
  // dispersion model.
  double system_radius = 100.0;
  std::vector<Point> sources;
  std::vector<Point> static_sensors;
  std::vector<MobilePath> mobile_paths;

  std::size_t sensor_count() const { return static_sensors.size() + mobile_paths.size(); }
};

// Global sensor ids: static sensors first, then mobile sensors.
struct SensorRef {
  SensorKind kind = SensorKind::kStatic;
  std::size_t index = 0;
};

SensorRef sensor_ref(const Scene& scene, std::size_t sensor_id);

// Rejection sampling of `count` points uniformly over the disk of `radius`
// centered at the origin, each at least `min_separation` from all previously
// accepted points. Throws CapacityError after 10'000 consecutive rejections.
std::vector<Point> place_points(int count, double radius, double min_separation,
                                RandomStream& rng);

inline constexpr int kMaxConsecutiveRejections = 10'000;

// Waypoints on circles of independently drawn radius around `center`.
// `forced_count` overrides the drawn waypoint count.
MobilePath sample_mobile_path(const Point& center, const SceneParams& params,
                              RandomStream& rng,
                              std::optional<int> forced_count = std::nullopt);

// Mobile sensors hop to waypoint[t mod k] at every timestep.
Point position_at(const Scene& scene, std::size_t index, SensorKind kind, std::size_t t);
Point position_at(const Scene& scene, SensorRef ref, std::size_t t);

// Draws a whole scene from the named sub-streams of `master_seed`.
Scene generate_scene(const SceneParams& params, std::uint64_t master_seed);

}  // namespace wsncal
