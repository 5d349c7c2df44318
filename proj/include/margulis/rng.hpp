#pragma once

// Deterministic normal variates: std::mt19937_64 (whose output sequence is
// fixed by the standard) feeding a hand-written Box-Muller transform, so
// that streams agree across standard libraries.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace margulis {

inline constexpr const char *kRngName = "mt19937_64+box-muller";

class NormalStream {
public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in (0, 1] with 53 random bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t next_u64() { return engine_(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace margulis
