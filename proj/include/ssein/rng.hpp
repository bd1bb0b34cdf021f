#pragma once

#include <cstdint>
#include <random>

namespace ssein {

// Seedable generator with platform-stable output.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Streams are derived by feeding (seed, stream index) as four 32-bit
// words through std::seed_seq, which is also fully specified. The standard
// distributions are implementation-defined, so sampling is done here.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

  // Independent generator for sub-task `index`, derived from this generator's
  // seed material only (not its current position).
  Rng stream(std::uint64_t index) const { return Rng(seed_, stream_ * 0x9E3779B97F4A7C15ull + index + 1); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n). n must be positive.
  std::uint64_t index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

} // namespace ssein
