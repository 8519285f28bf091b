#include "dmt/random.hpp"

#include <cmath>

namespace dmt {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // SplitMix64 applied to the (seed, index) pair; the golden-ratio
  // increment decorrelates consecutive indices.
  std::uint64_t z = seed + index * 0x9E3779B97F4A7C15ull + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Stream::Stream(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed, 0)) {}

double Stream::uniform() {
  // Top 53 bits -> [0,1), flipped to (0,1] so log() is always finite.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 1.0 - u;
}

std::complex<double> Stream::gaussian() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-std::log(u1));  // |z| for unit total variance
  const double angle = 2.0 * M_PI * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

Stream Stream::substream(std::uint64_t index) const {
  return Stream(mix_seed(seed_, 0x5555555555555555ull ^ index));
}

}  // namespace dmt
