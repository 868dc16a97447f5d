#pragma once

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace test_util {

// Deterministic draws for test data, independent of the library's generator.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<double> white_noise(std::uint64_t seed, std::size_t n, double sd = 1.0) {
  TestRng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = sd * rng.normal();
  return out;
}

inline std::vector<double> simulate_ar(std::uint64_t seed, std::size_t n,
                                       const std::vector<double>& phi, double sd = 1.0,
                                       std::size_t burn = 500) {
  TestRng rng(seed);
  std::vector<double> history(phi.size(), 0.0);
  auto step = [&]() {
    double value = sd * rng.normal();
    for (std::size_t j = 0; j < phi.size(); ++j) value += phi[j] * history[j];
    for (std::size_t j = history.size(); j-- > 1;) history[j] = history[j - 1];
    if (!history.empty()) history[0] = value;
    return value;
  };
  for (std::size_t i = 0; i < burn; ++i) step();
  std::vector<double> out(n);
  for (double& v : out) v = step();
  return out;
}

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("tweetarx_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace test_util
