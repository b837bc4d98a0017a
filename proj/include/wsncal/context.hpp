#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsncal/dispersion.hpp"
#include "wsncal/scene.hpp"

namespace wsncal {

inline constexpr int kSectors = 8;
inline constexpr int kRings = 2;
inline constexpr int kAreas = kSectors * kRings;
inline constexpr std::size_t kContextWidth = 2 * kAreas + 3 + kSectors;

struct ContextParams {
  double neighborhood_radius = 40.0;
};

// 45-degree sector of a math-convention angle (radians, counterclockwise
// from +x); sector 0 is centered on angle 0.
int angle_sector(double radians);
int direction_sector(double degrees);

// Area = sector + 8 * ring, ring 0 for distance < R_n/2 and ring 1 for
// R_n/2 <= distance < R_n. Points at distance >= R_n are unassigned.
std::optional<int> area_index(const Point& center, const Point& other, double radius);

std::vector<std::optional<int>> partition_neighborhood(const Point& center,
                                                       std::span<const Point> others,
                                                       double radius);

struct WeatherSample {
  double temperature = 0.0;
  double humidity = 0.0;
  double wind_speed = 0.0;
  double wind_direction = 0.0;  // degrees
};

struct ContextVector {
  std::array<double, kAreas> pm25_area{};
  std::array<double, kAreas> pm10_area{};
  std::array<int, kAreas> area_count{};
  double temperature = 0.0;
  double humidity = 0.0;
  double wind_speed = 0.0;
  std::array<int, kSectors> wind_direction{};

  // Export layout: 16 PM2.5 means, 16 PM10 means, temperature, humidity,
  // wind speed, 8 wind-direction flags.
  std::array<double, kContextWidth> features() const;
};

std::vector<std::string> context_column_names();

// Context of sensor `self` given every sensor's position and drifted reading
// at one timestep. The sensor's own reading never enters its area means.
ContextVector context_vector(std::size_t self, std::span<const Point> positions,
                             std::span<const PollutantPair> drifted, const WeatherSample& weather,
                             const ContextParams& params);

}  // namespace wsncal
