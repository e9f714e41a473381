#pragma once

#include <string>

#include "srda/types.hpp"

namespace srda {

enum class FeatureFormat { binary, csv };

// Binary feature files ("SRDA" magic):
//   magic "SRDA" | version u16 | dimension u32 | count u64 | label_width u32 (= 4)
// followed by count records of dimension little-endian float32 values and one
// little-endian uint32 label. CSV files hold one sample per row, feature
// columns then a final integer label column; a header row is auto-detected.
Dataset load_features(const std::string& path, FeatureFormat format);
void save_features(const Dataset& data, const std::string& path, FeatureFormat format);

// .csv extension selects CSV, anything else the binary format.
FeatureFormat guess_format(const std::string& path);

}  // namespace srda
