#ifndef GELFAND_RNG_HPP
#define GELFAND_RNG_HPP

#include <cstdint>
#include <random>

namespace gelfand {

/// Seeded generator with a platform-independent bounded draw. The standard
/// distributions are implementation-defined, so reports built on them would
/// not be byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  int uniform_int(int n) { return static_cast<int>(uniform(static_cast<std::uint64_t>(n))); }

  bool coin() { return (eng_() >> 63) != 0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gelfand

#endif  // GELFAND_RNG_HPP
