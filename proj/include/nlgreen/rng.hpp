#ifndef NLGREEN_RNG_HPP
#define NLGREEN_RNG_HPP

#include <cstdint>
#include <random>

namespace nlg {

// Seeded uniform generator. std::uniform_real_distribution is implementation
// defined, so draws are derived from the raw 64-bit stream directly; outputs
// are identical on every platform.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * unit(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nlg

#endif
