#include "wsncal/context.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "wsncal/errors.hpp"

namespace wsncal {

namespace {
constexpr double kPi = std::numbers::pi;
}

int angle_sector(double radians) {
  double a = std::fmod(radians, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  const int sector = static_cast<int>(std::floor((a + kPi / 8.0) / (kPi / 4.0)));
  return sector % kSectors;
}

int direction_sector(double degrees) {
  double a = std::fmod(degrees, 360.0);
  if (a < 0.0) a += 360.0;
  const int sector = static_cast<int>(std::floor((a + 22.5) / 45.0));
  return sector % kSectors;
}

std::optional<int> area_index(const Point& center, const Point& other, double radius) {
  const double dx = other.x - center.x;
  const double dy = other.y - center.y;
  const double d = std::hypot(dx, dy);
  if (!(d < radius)) return std::nullopt;
  const int ring = d < radius / 2.0 ? 0 : 1;
  const int sector = d == 0.0 ? 0 : angle_sector(std::atan2(dy, dx));
  return sector + kSectors * ring;
}

std::vector<std::optional<int>> partition_neighborhood(const Point& center,
                                                       std::span<const Point> others,
                                                       double radius) {
  std::vector<std::optional<int>> out;
  out.reserve(others.size());
  for (const Point& p : others) out.push_back(area_index(center, p, radius));
  return out;
}

std::array<double, kContextWidth> ContextVector::features() const {
  std::array<double, kContextWidth> f{};
  std::size_t k = 0;
  for (double v : pm25_area) f[k++] = v;
  for (double v : pm10_area) f[k++] = v;
  f[k++] = temperature;
  f[k++] = humidity;
  f[k++] = wind_speed;
  for (int flag : wind_direction) f[k++] = flag;
  return f;
}

std::vector<std::string> context_column_names() {
  std::vector<std::string> names;
  char buf[32];
  for (const char* pollutant : {"pm25", "pm10"}) {
    for (int a = 0; a < kAreas; ++a) {
      std::snprintf(buf, sizeof buf, "%s_area_%02d", pollutant, a);
      names.emplace_back(buf);
    }
  }
  names.emplace_back("temperature");
  names.emplace_back("humidity");
  names.emplace_back("wind_speed");
  for (int s = 0; s < kSectors; ++s) names.push_back("wind_dir_" + std::to_string(s));
  return names;
}

ContextVector context_vector(std::size_t self, std::span<const Point> positions,
                             std::span<const PollutantPair> drifted, const WeatherSample& weather,
                             const ContextParams& params) {
  if (positions.size() != drifted.size())
    throw ContractError("context_vector: positions and readings must be aligned");
  if (self >= positions.size()) throw ContractError("context_vector: sensor index out of range");

  ContextVector ctx;
  const Point& center = positions[self];
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (j == self) continue;
    const auto area = area_index(center, positions[j], params.neighborhood_radius);
    if (!area) continue;
    ctx.pm25_area[*area] += drifted[j].pm25;
    ctx.pm10_area[*area] += drifted[j].pm10;
    ++ctx.area_count[*area];
  }
  for (int a = 0; a < kAreas; ++a) {
    if (ctx.area_count[a] > 0) {
      ctx.pm25_area[a] /= ctx.area_count[a];
      ctx.pm10_area[a] /= ctx.area_count[a];
    }
  }
  ctx.temperature = weather.temperature;
  ctx.humidity = weather.humidity;
  ctx.wind_speed = weather.wind_speed;
  ctx.wind_direction[direction_sector(weather.wind_direction)] = 1;
  return ctx;
}

}  // namespace wsncal
