#include "srda/memory.hpp"

#include <cstdio>
#include <stdexcept>

namespace srda {

MemoryReport memory_report(int class_count, int dimension) {
  if (class_count < 1 || dimension < 1) {
    throw std::invalid_argument("memory_report: class count and dimension must be positive");
  }
  MemoryReport r;
  r.class_count = class_count;
  r.dimension = dimension;
  const std::uint64_t C = static_cast<std::uint64_t>(class_count);
  const std::uint64_t d = static_cast<std::uint64_t>(dimension);
  const std::uint64_t b = static_cast<std::uint64_t>(r.bytes_per_scalar);
  r.class_term_bytes = C * b * (d * d + d);
  r.pooled_term_bytes = b * d * d;
  r.srda_bytes = r.class_term_bytes + r.pooled_term_bytes;
  r.slda_bytes = b * (d * d + C * d);
  r.slda_covariance_only_bytes = b * d * d;
  return r;
}

std::string human_bytes(std::uint64_t bytes) {
  char buf[48];
  const double v = static_cast<double>(bytes);
  if (bytes >= 1000000000ULL) {
    std::snprintf(buf, sizeof(buf), "%.3f GB", v / 1e9);
  } else if (bytes >= 1000000ULL) {
    std::snprintf(buf, sizeof(buf), "%.3f MB", v / 1e6);
  } else if (bytes >= 1000ULL) {
    std::snprintf(buf, sizeof(buf), "%.3f kB", v / 1e3);
  } else {
    std::snprintf(buf, sizeof(buf), "%llu bytes", static_cast<unsigned long long>(bytes));
  }
  return buf;
}

}  // namespace srda
