#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>

namespace privsprt {

// Splittable counter-based stream. The generator state is derived by hashing a
// 64-bit master seed with a path of integers, so any (master, path) pair names
// the same draw sequence no matter how many other streams exist or in which
// order they are consumed. This is the determinism contract every stochastic
// component relies on: trials are addressed by path, never by draw order.
class RngStream {
 public:
  RngStream(uint64_t master_seed, std::span<const uint64_t> path) {
    uint64_t h = mix64(master_seed + kGolden);
    for (uint64_t p : path) h = mix64(h ^ mix64(p + kGolden));
    state_ = h;
  }

  RngStream(uint64_t master_seed, std::initializer_list<uint64_t> path)
      : RngStream(master_seed, std::span<const uint64_t>(path.begin(), path.size())) {}

  uint64_t next_u64() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the spare half of each pair is cached so
  // the stream stays deterministic per call sequence.
  double next_gaussian() {
    ++gaussian_draws_;
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - next_unit();  // (0, 1]
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Laplace(0, scale) by inverse CDF.
  double next_laplace(double scale) {
    ++laplace_draws_;
    double v = next_unit();
    while (v == 0.0) v = next_unit();
    double u = v - 0.5;
    double mag = 1.0 - 2.0 * std::abs(u);  // (0, 1]
    double z = -std::log(mag);
    return u < 0 ? -scale * z : scale * z;
  }

  // Audit counters: number of variate requests served, by family.
  uint64_t gaussian_draws() const { return gaussian_draws_; }
  uint64_t laplace_draws() const { return laplace_draws_; }

 private:
  static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ull;

  static uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
  uint64_t gaussian_draws_ = 0;
  uint64_t laplace_draws_ = 0;
};

}  // namespace privsprt
