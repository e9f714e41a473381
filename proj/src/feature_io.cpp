#include "srda/feature_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace srda {

namespace {

constexpr char kMagic[4] = {'S', 'R', 'D', 'A'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint32_t kLabelWidth = 4;

void write_bytes(std::ostream& out, const void* data, std::size_t n) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

template <typename T>
void write_le(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  using U = std::make_unsigned_t<T>;
  U bits;
  std::memcpy(&bits, &value, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<unsigned char>(bits >> (8 * i));
  }
  write_bytes(out, buf, sizeof(T));
}

void write_f32_le(std::ostream& out, float value) {
  std::uint32_t bits;
  std::memcpy(&bits, &value, 4);
  write_le(out, bits);
}

template <typename T>
bool read_le(std::istream& in, T& value) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) return false;
  using U = std::make_unsigned_t<T>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bits |= static_cast<U>(buf[i]) << (8 * i);
  }
  std::memcpy(&value, &bits, sizeof(T));
  return true;
}

bool read_f32_le(std::istream& in, float& value) {
  std::uint32_t bits;
  if (!read_le(in, bits)) return false;
  std::memcpy(&value, &bits, 4);
  return true;
}

Dataset load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open feature file: " + path);

  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("not a feature file (bad magic): " + path);
  }
  std::uint16_t version = 0;
  std::uint32_t dimension = 0;
  std::uint64_t count = 0;
  std::uint32_t label_width = 0;
  if (!read_le(in, version) || !read_le(in, dimension) || !read_le(in, count) ||
      !read_le(in, label_width)) {
    throw std::runtime_error("truncated feature file header: " + path);
  }
  if (version != kVersion) {
    throw std::runtime_error("unsupported feature file version " + std::to_string(version));
  }
  if (label_width != kLabelWidth) {
    throw std::runtime_error("unsupported label width " + std::to_string(label_width));
  }
  if (dimension == 0) throw std::runtime_error("feature file declares dimension 0: " + path);

  Dataset data(static_cast<int>(dimension), static_cast<std::int64_t>(count));
  for (std::uint64_t r = 0; r < count; ++r) {
    for (std::uint32_t j = 0; j < dimension; ++j) {
      float v = 0.0f;
      if (!read_f32_le(in, v)) {
        throw std::runtime_error("feature file truncated at record " + std::to_string(r) +
                                 " (declared " + std::to_string(count) + " records)");
      }
      if (!std::isfinite(v)) {
        throw std::runtime_error("non-finite feature at record " + std::to_string(r) +
                                 ", component " + std::to_string(j));
      }
      data.features()(static_cast<int>(j), static_cast<std::int64_t>(r)) = v;
    }
    std::uint32_t label = 0;
    if (!read_le(in, label)) {
      throw std::runtime_error("feature file truncated at record " + std::to_string(r) +
                               " (declared " + std::to_string(count) + " records)");
    }
    data.labels()[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(label);
  }
  in.peek();
  if (!in.eof()) {
    throw std::runtime_error("feature file has trailing data beyond the declared " +
                             std::to_string(count) + " records");
  }
  return data;
}

void save_binary(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open feature file for writing: " + path);
  write_bytes(out, kMagic, 4);
  write_le(out, kVersion);
  write_le(out, static_cast<std::uint32_t>(data.dimension()));
  write_le(out, static_cast<std::uint64_t>(data.size()));
  write_le(out, kLabelWidth);
  for (std::int64_t r = 0; r < data.size(); ++r) {
    for (int j = 0; j < data.dimension(); ++j) {
      write_f32_le(out, data.features()(j, r));
    }
    write_le(out, static_cast<std::uint32_t>(data.label(r)));
  }
  if (!out) throw std::runtime_error("failed writing feature file: " + path);
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream row(line);
  while (std::getline(row, cell, ',')) {
    const auto begin = cell.find_first_not_of(" \t\r");
    const auto end = cell.find_last_not_of(" \t\r");
    cells.push_back(begin == std::string::npos ? "" : cell.substr(begin, end - begin + 1));
  }
  return cells;
}

bool parse_double(const std::string& text, double& value) {
  if (text.empty()) return false;
  std::size_t used = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == text.size();
}

bool parse_label(const std::string& text, std::int32_t& value) {
  if (text.empty()) return false;
  std::size_t used = 0;
  long parsed = 0;
  try {
    parsed = std::stol(text, &used);
  } catch (const std::exception&) {
    return false;
  }
  if (used != text.size() || parsed < 0 || parsed > INT32_MAX) return false;
  value = static_cast<std::int32_t>(parsed);
  return true;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open feature file: " + path);

  std::vector<std::vector<float>> rows;
  std::vector<std::int32_t> labels;
  std::string line;
  std::size_t line_number = 0;
  std::size_t dimension = 0;
  bool first_content_row = true;

  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> cells = split_csv_row(line);
    if (cells.size() < 2) {
      throw std::runtime_error("row " + std::to_string(line_number) +
                               ": need at least one feature column and a label column");
    }

    if (first_content_row) {
      // Header rows have at least one non-numeric cell.
      bool numeric = true;
      double probe = 0.0;
      for (const std::string& cell : cells) {
        if (!parse_double(cell, probe)) {
          numeric = false;
          break;
        }
      }
      first_content_row = false;
      if (!numeric) continue;  // skip the header
    }

    const std::size_t row_dimension = cells.size() - 1;
    if (dimension == 0) {
      dimension = row_dimension;
    } else if (row_dimension != dimension) {
      throw std::runtime_error("row " + std::to_string(line_number) + ": expected " +
                               std::to_string(dimension) + " feature columns, got " +
                               std::to_string(row_dimension));
    }

    std::vector<float> features(dimension);
    for (std::size_t j = 0; j < dimension; ++j) {
      double v = 0.0;
      if (!parse_double(cells[j], v)) {
        throw std::runtime_error("row " + std::to_string(line_number) + ", column " +
                                 std::to_string(j + 1) + ": not a number: '" + cells[j] + "'");
      }
      if (!std::isfinite(v)) {
        throw std::runtime_error("row " + std::to_string(line_number) + ", column " +
                                 std::to_string(j + 1) + ": non-finite feature");
      }
      features[j] = static_cast<float>(v);
    }
    std::int32_t label = 0;
    if (!parse_label(cells[dimension], label)) {
      throw std::runtime_error("row " + std::to_string(line_number) +
                               ": label column is not a non-negative integer: '" +
                               cells[dimension] + "'");
    }
    rows.push_back(std::move(features));
    labels.push_back(label);
  }
  if (rows.empty()) throw std::runtime_error("no data rows in feature file: " + path);

  Dataset data(static_cast<int>(dimension), static_cast<std::int64_t>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < dimension; ++j) {
      data.features()(static_cast<int>(j), static_cast<std::int64_t>(r)) = rows[r][j];
    }
    data.labels()[r] = labels[r];
  }
  return data;
}

void save_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open feature file for writing: " + path);
  for (int j = 0; j < data.dimension(); ++j) out << 'f' << j << ',';
  out << "label\n";
  char buf[32];
  for (std::int64_t r = 0; r < data.size(); ++r) {
    for (int j = 0; j < data.dimension(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(data.features()(j, r)));
      out << buf << ',';
    }
    out << data.label(r) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing feature file: " + path);
}

}  // namespace

Dataset load_features(const std::string& path, FeatureFormat format) {
  return format == FeatureFormat::binary ? load_binary(path) : load_csv(path);
}

void save_features(const Dataset& data, const std::string& path, FeatureFormat format) {
  if (format == FeatureFormat::binary) {
    save_binary(data, path);
  } else {
    save_csv(data, path);
  }
}

FeatureFormat guess_format(const std::string& path) {
  const std::string suffix = ".csv";
  if (path.size() >= suffix.size() &&
      std::equal(suffix.rbegin(), suffix.rend(), path.rbegin(),
                 [](char a, char b) { return a == std::tolower(b); })) {
    return FeatureFormat::csv;
  }
  return FeatureFormat::binary;
}

}  // namespace srda
