#ifndef BELLNET_RANDOM_H
#define BELLNET_RANDOM_H

#include <cstdint>
#include <random>

namespace bellnet {

/// The randomness stream threaded through every stochastic operation.
using Rng = std::mt19937_64;

/// Deterministic 64-bit seed for substream `index` of `master`.
std::uint64_t DeriveSeed (std::uint64_t master, std::uint64_t index);

inline Rng
MakeStream (std::uint64_t master, std::uint64_t index)
{
  return Rng (DeriveSeed (master, index));
}

/// Uniform draw on [0, 1).
inline double
Uniform01 (Rng &rng)
{
  return std::generate_canonical<double, 53> (rng);
}

inline bool
Bernoulli (Rng &rng, double p)
{
  return Uniform01 (rng) < p;
}

} // namespace bellnet

#endif
