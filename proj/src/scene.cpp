#include "wsncal/scene.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wsncal/errors.hpp"

namespace wsncal {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

const char* to_string(SensorKind kind) {
  return kind == SensorKind::kStatic ? "static" : "mobile";
}

SensorRef sensor_ref(const Scene& scene, std::size_t sensor_id) {
  if (sensor_id < scene.static_sensors.size()) return {SensorKind::kStatic, sensor_id};
  const std::size_t mobile = sensor_id - scene.static_sensors.size();
  if (mobile >= scene.mobile_paths.size())
    throw ContractError("sensor id " + std::to_string(sensor_id) + " out of range");
  return {SensorKind::kMobile, mobile};
}

std::vector<Point> place_points(int count, double radius, double min_separation,
                                RandomStream& rng) {
  if (count < 1) throw ContractError("place_points: count must be >= 1");
  if (!(radius > 0.0)) throw ContractError("place_points: radius must be > 0");
  if (!(min_separation >= 0.0)) throw ContractError("place_points: min_separation must be >= 0");

  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(count));
  int rejections = 0;
  while (static_cast<int>(points.size()) < count) {
    // sqrt of a uniform radius fraction gives uniform density over the disk.
    const double r = radius * std::sqrt(rng.uniform(0.0, 1.0));
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Point candidate{r * std::cos(theta), r * std::sin(theta)};

    bool accepted = true;
    for (const Point& p : points) {
      if (distance(p, candidate) < min_separation) {
        accepted = false;
        break;
      }
    }
    if (accepted) {
      points.push_back(candidate);
      rejections = 0;
    } else if (++rejections >= kMaxConsecutiveRejections) {
      throw CapacityError("place_points: cannot fit " + std::to_string(count) +
                          " points with separation " + std::to_string(min_separation) +
                          " in radius " + std::to_string(radius) + " (placed " +
                          std::to_string(points.size()) + ")");
    }
  }
  return points;
}

MobilePath sample_mobile_path(const Point& center, const SceneParams& params,
                              RandomStream& rng, std::optional<int> forced_count) {
  const int k = forced_count ? *forced_count
                             : rng.uniform_int(params.waypoint_count_min, params.waypoint_count_max);
  if (k < 1) throw ContractError("sample_mobile_path: waypoint count must be >= 1");

  MobilePath path;
  path.center = center;
  path.waypoints.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double r = rng.uniform(params.waypoint_radius_min, params.waypoint_radius_max);
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    path.waypoints.push_back({center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
  }
  return path;
}

Point position_at(const Scene& scene, std::size_t index, SensorKind kind, std::size_t t) {
  if (kind == SensorKind::kStatic) {
    if (index >= scene.static_sensors.size())
      throw ContractError("static sensor index " + std::to_string(index) + " out of range");
    return scene.static_sensors[index];
  }
  if (index >= scene.mobile_paths.size())
    throw ContractError("mobile sensor index " + std::to_string(index) + " out of range");
  const auto& waypoints = scene.mobile_paths[index].waypoints;
  return waypoints[t % waypoints.size()];
}

Point position_at(const Scene& scene, SensorRef ref, std::size_t t) {
  return position_at(scene, ref.index, ref.kind, t);
}

Scene generate_scene(const SceneParams& params, std::uint64_t master_seed) {
  Scene scene;
  scene.system_radius = params.source_radius;

  RandomStream source_rng(master_seed, "scene/sources");
  scene.sources = place_points(params.n_sources, params.source_radius, params.min_separation,
                               source_rng);

  if (params.n_static > 0) {
    RandomStream static_rng(master_seed, "scene/static");
    scene.static_sensors = place_points(params.n_static, params.sensor_radius,
                                        params.min_separation, static_rng);
  }

  if (params.n_mobile > 0) {
    RandomStream center_rng(master_seed, "scene/mobile-centers");
    const auto centers = place_points(params.n_mobile, params.sensor_radius,
                                      params.min_separation, center_rng);
    for (std::size_t j = 0; j < centers.size(); ++j) {
      RandomStream path_rng(master_seed, "scene/mobile-path-" + std::to_string(j));
      scene.mobile_paths.push_back(sample_mobile_path(centers[j], params, path_rng));
    }
  }
  return scene;
}

}  // namespace wsncal
