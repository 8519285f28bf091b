#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace dmt {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a
/// master seed and a substream index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Seedable random stream: a mt19937_64 engine plus an explicit Box-Muller
/// transform, so the variate sequence is fixed by this library rather than
/// by the standard-library distribution implementation.
///
/// Substreams are derived from the *original* seed via SplitMix64, which
/// makes the family splittable: substream(i) is independent of both the
/// parent's draw position and every substream(j), j != i.
class Stream {
 public:
  explicit Stream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Uniform draw on (0, 1], 53-bit resolution.
  double uniform();

  /// One CN(0,1) draw: real and imaginary parts are independent
  /// N(0, 1/2), produced by a Box-Muller pair (real first, then imaginary).
  std::complex<double> gaussian();

  /// Independent stream derived from (seed, index).
  Stream substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dmt
