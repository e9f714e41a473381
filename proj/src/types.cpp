#include "srda/types.hpp"

#include <algorithm>

namespace srda {

std::vector<std::int32_t> Dataset::distinct_labels() const {
  std::vector<std::int32_t> out(labels_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace srda
