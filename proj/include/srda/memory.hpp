#pragma once

#include <cstdint>
#include <string>

namespace srda {

// Float32 storage cost of the two head families. The per-class head keeps a
// covariance and a mean per class plus the shared covariance; the linear
// head keeps one shared covariance plus the per-class means. The shared
// covariance alone is also reported since that figure is sometimes quoted
// on its own.
struct MemoryReport {
  int class_count = 0;
  int dimension = 0;
  int bytes_per_scalar = 4;
  std::uint64_t class_term_bytes = 0;          // C * 4 * (d^2 + d)
  std::uint64_t pooled_term_bytes = 0;         // 4 * d^2
  std::uint64_t srda_bytes = 0;                // class_term + pooled_term
  std::uint64_t slda_bytes = 0;                // 4 * (d^2 + C*d)
  std::uint64_t slda_covariance_only_bytes = 0;  // 4 * d^2
};

MemoryReport memory_report(int class_count, int dimension);

// Decimal units, three decimals: "1.051 GB", "2.048 MB", "512 bytes".
std::string human_bytes(std::uint64_t bytes);

}  // namespace srda
