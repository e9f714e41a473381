#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace srda::rng {

// splitmix64-style mixer; derives independent stream seeds from (seed, tag).
std::uint64_t mix(std::uint64_t seed, std::uint64_t tag);

// mt19937_64 with explicitly coded uniform/normal/shuffle draws, so results
// do not depend on the standard library's distribution implementations.
class Engine {
 public:
  explicit Engine(std::uint64_t seed) : gen_(seed) {}

  double uniform01();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double normal();                       // N(0, 1)
  std::uint64_t below(std::uint64_t n);  // uniform in [0, n)

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace srda::rng
