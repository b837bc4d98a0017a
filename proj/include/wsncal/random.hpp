#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wsncal {

// Derives the seed of a named sub-stream from the master seed. Streams are
// addressed by name ("scene/sources", "drift/realization-3/sensor-7/pm25"),
// so adding a sensor never shifts the draws of any other stream.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view stream_name);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t master_seed, std::string_view stream_name)
      : engine_(derive_seed(master_seed, stream_name)) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal(double mean, double sd) {
    if (sd == 0.0) return mean;
    return std::normal_distribution<double>(mean, sd)(engine_);
  }
  // Inclusive on both ends.
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wsncal
