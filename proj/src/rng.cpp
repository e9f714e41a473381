#include "srda/rng.hpp"

#include <cmath>
#include <limits>

namespace srda::rng {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Engine::uniform01() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Engine::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

std::uint64_t Engine::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
  const std::uint64_t bound = max - rem;
  std::uint64_t x = gen_();
  while (x > bound) x = gen_();  // rejection keeps the draw exactly uniform
  return x % n;
}

}  // namespace srda::rng
