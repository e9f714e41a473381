#pragma once

#include <string>

#include "srda/discriminant.hpp"
#include "srda/running_stats.hpp"
#include "srda/stream.hpp"

namespace srda {

// Full training state: accumulator statistics plus the head and scenario
// configuration that produced them. save/load round-trips bit-exactly.
struct Checkpoint {
  StatisticsAccumulator accumulator;
  HeadConfig head_config;
  ScenarioConfig scenario;

  void save(const std::string& path) const;
  static Checkpoint load(const std::string& path);
};

}  // namespace srda
