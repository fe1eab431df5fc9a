#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace uavsim {

// Deterministic seeded RNG. Gaussian draws use an explicit Box-Muller
// transform instead of std::normal_distribution, whose algorithm is
// implementation-defined; the whole stream is therefore reproducible
// for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t integer() { return gen_(); }

  // Standard normal draw.
  double gauss() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double two_pi_u2 = 2.0 * 3.14159265358979323846 * u2;
    spare_ = mag * std::sin(two_pi_u2);
    has_spare_ = true;
    return mag * std::cos(two_pi_u2);
  }

  double gauss(double mean, double sigma) { return mean + sigma * gauss(); }

  // Derives an independent stream for a named consumer (sensor id, run id...).
  Rng fork(std::uint64_t stream) {
    return Rng(splitmix64(gen_() ^ splitmix64(stream)));
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace uavsim
