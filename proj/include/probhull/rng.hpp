#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

namespace probhull
{
// All randomness in the library flows through this splitmix64 stream so results
// are bit-identical across platforms and independent of how trials are
// partitioned. std::normal_distribution is avoided on purpose: its draw
// sequence is implementation-defined.
struct RandomStream
{
  explicit RandomStream(uint64_t seed) : m_state(seed) {}

  uint64_t NextU64()
  {
    uint64_t z = (m_state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits.
  double NextUnit() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log() argument.
  double NextOpenUnit() { return static_cast<double>((NextU64() >> 11) + 1) * 0x1.0p-53; }

  // Box-Muller pair of independent standard normals.
  std::pair<double, double> NextNormalPair();

  double NextNormal() { return NextNormalPair().first; }

private:
  uint64_t m_state;
};

uint64_t HashCombine(uint64_t a, uint64_t b);
uint64_t Fnv1a64(std::string_view s);

// Sub-seed for (seed, trial, point id): deterministic regardless of evaluation
// order or how trials are split across workers.
inline uint64_t SubSeed(uint64_t seed, uint64_t trial, std::string_view id)
{
  return HashCombine(HashCombine(seed, trial), Fnv1a64(id));
}
}  // namespace probhull
