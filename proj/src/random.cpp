#include "wsncal/random.hpp"

namespace wsncal {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view stream_name) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char ch : stream_name) {
    h ^= ch;
    h *= kFnvPrime;
  }
  return splitmix64(splitmix64(master_seed) ^ h);
}

}  // namespace wsncal
