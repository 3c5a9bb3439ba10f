#pragma once

#include <cstdint>
#include <random>

namespace jt
{
  /// Seeded source with platform-independent bounded draws (the standard
  /// distributions are implementation-defined, mt19937_64 is not).
  class random_source
  {
  public:
    explicit random_source(std::uint64_t seed) : engine_(seed) {}

    random_source(std::uint64_t seed, std::uint64_t stream)
    {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(stream),
                        static_cast<std::uint32_t>(stream >> 32)};
      engine_.seed(seq);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n)
    {
      const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
      std::uint64_t r;
      do
        r = engine_();
      while (r >= limit);
      return r % n;
    }

    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    bool chance(std::uint64_t numerator, std::uint64_t denominator)
    {
      return below(denominator) < numerator;
    }

  private:
    std::mt19937_64 engine_;
  };
}
