#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "wsncal/context.hpp"

using namespace wsncal;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRadius = 40.0;

Point polar(const Point& c, double degrees, double r) {
  return {c.x + r * std::cos(degrees * kPi / 180.0), c.y + r * std::sin(degrees * kPi / 180.0)};
}

}  // namespace

TEST(Partition, Examples) {
  const Point c{3.0, -2.0};
  EXPECT_EQ(area_index(c, c, kRadius), 0);
  EXPECT_EQ(area_index(c, polar(c, 90.0, 0.75 * kRadius), kRadius), 2 + 8);
  EXPECT_FALSE(area_index(c, polar(c, 10.0, 2.0 * kRadius), kRadius).has_value());
  EXPECT_FALSE(area_index(c, {c.x + kRadius, c.y}, kRadius).has_value());
}

TEST(Partition, SectorsAndRings) {
  const Point c{0.0, 0.0};
  for (int s = 0; s < 8; ++s) {
    const double centre = 45.0 * s;
    EXPECT_EQ(area_index(c, polar(c, centre, 5.0), kRadius), s);
    EXPECT_EQ(area_index(c, polar(c, centre + 20.0, 25.0), kRadius), s + 8);
    EXPECT_EQ(area_index(c, polar(c, centre - 20.0, 19.9), kRadius), s);
  }
  // Sector 0 straddles angle 0.
  EXPECT_EQ(area_index(c, polar(c, -22.0, 5.0), kRadius), 0);
  EXPECT_EQ(area_index(c, polar(c, 22.0, 5.0), kRadius), 0);
  EXPECT_EQ(area_index(c, polar(c, 23.0, 5.0), kRadius), 1);
}

TEST(Partition, NeighborhoodMapping) {
  const Point c{0.0, 0.0};
  const std::vector<Point> others{polar(c, 0.0, 1.0), polar(c, 180.0, 30.0), {100.0, 0.0}};
  const auto map = partition_neighborhood(c, others, kRadius);
  ASSERT_EQ(map.size(), 3u);
  EXPECT_EQ(map[0], 0);
  EXPECT_EQ(map[1], 4 + 8);
  EXPECT_FALSE(map[2].has_value());
}

TEST(DirectionSector, MatchesSpatialSectors) {
  EXPECT_EQ(direction_sector(0.0), 0);
  EXPECT_EQ(direction_sector(359.0), 0);
  EXPECT_EQ(direction_sector(90.0), 2);
  EXPECT_EQ(direction_sector(200.0), 4);
  for (double d = 0.0; d < 360.0; d += 7.3) {
    EXPECT_EQ(direction_sector(d), angle_sector(d * kPi / 180.0));
  }
}

TEST(ContextVector, SingletonAndEmptyAreas) {
  const std::vector<Point> pos{{0.0, 0.0}, polar({0.0, 0.0}, 90.0, 30.0)};
  const std::vector<PollutantPair> x{{99.0, 98.0}, {12.5, 7.0}};
  const WeatherSample w{11.0, 75.0, 3.0, 181.0};
  const auto ctx = context_vector(0, pos, x, w, {kRadius});
  for (int a = 0; a < kAreas; ++a) {
    EXPECT_EQ(ctx.pm25_area[a], a == 10 ? 12.5 : 0.0);
    EXPECT_EQ(ctx.pm10_area[a], a == 10 ? 7.0 : 0.0);
  }
  EXPECT_EQ(ctx.temperature, 11.0);
  EXPECT_EQ(ctx.humidity, 75.0);
  EXPECT_EQ(ctx.wind_speed, 3.0);
  EXPECT_EQ(ctx.wind_direction[4], 1);
  EXPECT_EQ(std::accumulate(ctx.wind_direction.begin(), ctx.wind_direction.end(), 0), 1);
}

TEST(ContextVector, NoNeighbors) {
  const std::vector<Point> pos{{0.0, 0.0}, {500.0, 0.0}};
  const std::vector<PollutantPair> x{{1.0, 1.0}, {2.0, 2.0}};
  const auto f = context_vector(0, pos, x, {1.0, 2.0, 3.0, 10.0}, {kRadius}).features();
  ASSERT_EQ(f.size(), 43u);
  for (int i = 0; i < 32; ++i) EXPECT_EQ(f[i], 0.0);
  EXPECT_EQ(f[32], 1.0);
  EXPECT_EQ(f[33], 2.0);
  EXPECT_EQ(f[34], 3.0);
  EXPECT_EQ(f[35], 1.0);
}

TEST(ContextVector, MeanOfTwoInOneArea) {
  const Point c{0.0, 0.0};
  const std::vector<Point> pos{c, polar(c, 0.0, 3.0), polar(c, 5.0, 6.0)};
  const std::vector<PollutantPair> x{{0.0, 0.0}, {10.0, 1.0}, {20.0, 3.0}};
  const auto ctx = context_vector(0, pos, x, {}, {kRadius});
  EXPECT_DOUBLE_EQ(ctx.pm25_area[0], 15.0);
  EXPECT_DOUBLE_EQ(ctx.pm10_area[0], 2.0);
  EXPECT_EQ(ctx.area_count[0], 2);
}

TEST(ContextVector, ColumnNames) {
  const auto names = context_column_names();
  ASSERT_EQ(names.size(), kContextWidth);
  EXPECT_EQ(names.front(), "pm25_area_00");
  EXPECT_EQ(names[16], "pm10_area_00");
  EXPECT_EQ(names[32], "temperature");
  EXPECT_EQ(names.back(), "wind_dir_7");
}

TEST(ContextVector, RandomFramesReconstructSumsAndArePermutationInvariant) {
  RandomStream rng(2718);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 25;
    std::vector<Point> pos(n);
    std::vector<PollutantPair> x(n);
    for (std::size_t k = 0; k < n; ++k) {
      pos[k] = {rng.uniform(-60.0, 60.0), rng.uniform(-60.0, 60.0)};
      x[k] = {rng.uniform(0.0, 50.0), rng.uniform(0.0, 80.0)};
    }
    const WeatherSample w{rng.normal(10, 3), rng.normal(80, 5), rng.uniform(0, 9),
                          rng.uniform(0, 360)};

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    std::vector<Point> ppos(n);
    std::vector<PollutantPair> px(n);
    for (std::size_t k = 0; k < n; ++k) {
      ppos[k] = pos[perm[k]];
      px[k] = x[perm[k]];
    }

    for (std::size_t self = 0; self < n; ++self) {
      const auto ctx = context_vector(self, pos, x, w, {kRadius});

      double direct25 = 0.0, direct10 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != self && distance(pos[j], pos[self]) < kRadius) {
          direct25 += x[j].pm25;
          direct10 += x[j].pm10;
        }
      }
      double rebuilt25 = 0.0, rebuilt10 = 0.0;
      for (int a = 0; a < kAreas; ++a) {
        rebuilt25 += ctx.area_count[a] * ctx.pm25_area[a];
        rebuilt10 += ctx.area_count[a] * ctx.pm10_area[a];
      }
      EXPECT_NEAR(rebuilt25, direct25, 1e-9);
      EXPECT_NEAR(rebuilt10, direct10, 1e-9);

      const auto it = std::find(perm.begin(), perm.end(), self);
      const auto pself = static_cast<std::size_t>(it - perm.begin());
      const auto pf = context_vector(pself, ppos, px, w, {kRadius}).features();
      const auto f = ctx.features();
      for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(pf[i], f[i], 1e-12);
    }
  }
}
