#include "srda/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

namespace srda {

namespace {

constexpr char kMagic[4] = {'S', 'R', 'D', 'C'};
constexpr std::uint16_t kVersion = 1;

template <typename T>
void write_le(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  using U = std::make_unsigned_t<T>;
  U bits;
  std::memcpy(&bits, &value, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<unsigned char>(bits >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

void write_f64_le(std::ostream& out, double value) {
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  write_le(out, bits);
}

template <typename T>
void read_le(std::istream& in, T& value, const std::string& what) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) {
    throw std::runtime_error("checkpoint truncated while reading " + what);
  }
  using U = std::make_unsigned_t<T>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bits |= static_cast<U>(buf[i]) << (8 * i);
  }
  std::memcpy(&value, &bits, sizeof(T));
}

double read_f64_le(std::istream& in, const std::string& what) {
  std::uint64_t bits;
  read_le(in, bits, what);
  double value;
  std::memcpy(&value, &bits, 8);
  return value;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) write_f64_le(out, m(i, j));
  }
}

void read_matrix(std::istream& in, Matrix& m, const std::string& what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = read_f64_le(in, what);
  }
}

}  // namespace

void Checkpoint::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);

  out.write(kMagic, 4);
  write_le(out, kVersion);

  write_f64_le(out, head_config.alpha);
  write_f64_le(out, head_config.epsilon);
  write_le(out, static_cast<std::uint32_t>(head_config.top_k));

  write_le(out, scenario.class_order_seed);
  write_le(out, scenario.within_class_shuffle_seed);
  write_le(out, static_cast<std::uint32_t>(scenario.base_class_count));
  write_le(out, static_cast<std::uint32_t>(scenario.increment_size));
  write_le(out, static_cast<std::uint8_t>(scenario.ordering_mode));

  const int d = accumulator.dimension();
  write_le(out, static_cast<std::uint32_t>(d));
  write_le(out, static_cast<std::int32_t>(accumulator.max_classes()));
  write_le(out, accumulator.total_count());
  write_matrix(out, accumulator.pooled().scatter);

  const auto& classes = accumulator.class_statistics();
  write_le(out, static_cast<std::uint32_t>(classes.size()));
  for (const auto& [label, stats] : classes) {
    write_le(out, label);
    write_le(out, stats.count);
    for (int i = 0; i < d; ++i) write_f64_le(out, stats.mean[i]);
    write_matrix(out, stats.scatter);
  }
  if (!out) throw std::runtime_error("failed writing checkpoint: " + path);
}

Checkpoint Checkpoint::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);

  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("not a checkpoint file (bad magic): " + path);
  }
  std::uint16_t version = 0;
  read_le(in, version, "version");
  if (version != kVersion) {
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  }

  HeadConfig head;
  head.alpha = read_f64_le(in, "alpha");
  head.epsilon = read_f64_le(in, "epsilon");
  std::uint32_t top_k = 0;
  read_le(in, top_k, "top_k");
  head.top_k = static_cast<int>(top_k);

  ScenarioConfig scenario;
  read_le(in, scenario.class_order_seed, "class order seed");
  read_le(in, scenario.within_class_shuffle_seed, "shuffle seed");
  std::uint32_t base = 0, increment = 0;
  read_le(in, base, "base class count");
  read_le(in, increment, "increment size");
  scenario.base_class_count = static_cast<int>(base);
  scenario.increment_size = static_cast<int>(increment);
  std::uint8_t mode = 0;
  read_le(in, mode, "ordering mode");
  if (mode > 1) throw std::runtime_error("checkpoint has unknown ordering mode");
  scenario.ordering_mode = static_cast<OrderingMode>(mode);

  std::uint32_t dimension = 0;
  std::int32_t max_classes = 0;
  std::uint64_t total = 0;
  read_le(in, dimension, "dimension");
  read_le(in, max_classes, "max classes");
  read_le(in, total, "total count");
  if (dimension == 0) throw std::runtime_error("checkpoint declares dimension 0");
  const int d = static_cast<int>(dimension);

  PooledCovariance pooled;
  pooled.total_count = total;
  pooled.scatter.resize(d, d);
  read_matrix(in, pooled.scatter, "pooled covariance");

  std::uint32_t class_count = 0;
  read_le(in, class_count, "class count");
  std::map<std::int32_t, ClassStatistics> classes;
  for (std::uint32_t c = 0; c < class_count; ++c) {
    std::int32_t label = 0;
    read_le(in, label, "class label");
    ClassStatistics stats;
    read_le(in, stats.count, "class sample count");
    stats.mean.resize(d);
    for (int i = 0; i < d; ++i) stats.mean[i] = read_f64_le(in, "class mean");
    stats.scatter.resize(d, d);
    read_matrix(in, stats.scatter, "class covariance");
    classes.emplace(label, std::move(stats));
  }
  in.peek();
  if (!in.eof()) throw std::runtime_error("checkpoint has trailing data: " + path);

  Checkpoint out{StatisticsAccumulator::from_parts(d, max_classes, std::move(classes),
                                                   std::move(pooled)),
                 head, scenario};
  return out;
}

}  // namespace srda
