#pragma once

#include <cstdint>
#include <random>

namespace phiid {

/// All sampling in this library draws from an explicitly passed engine;
/// there is no hidden global generator state.
using Rng = std::mt19937_64;

/// SplitMix64 step, used to expand seeds into engine state.
std::uint64_t splitmix64(std::uint64_t& state);

/// Engine seeded from a single 64-bit value (mixed through SplitMix64 so
/// that nearby seeds give unrelated streams).
Rng make_rng(std::uint64_t seed);

/// Engine for stream `stream_index` of a root seed. Chunked Monte Carlo
/// runs give each chunk its own stream; results then depend only on the
/// (root seed, chunk plan) pair, never on thread scheduling.
Rng make_stream(std::uint64_t root_seed, std::uint64_t stream_index);

/// Uniform draw on the open interval (0, 1): (k + 0.5) * 2^-53.
/// Never returns 0 or 1, so logs of draws are always finite.
double uniform01(Rng& rng);

/// Exponential with mean 1.
double exponential1(Rng& rng);

/// Standard normal via Box-Muller (two uniforms per draw, no cached twin,
/// so the stream position after a draw is input-independent).
double normal01(Rng& rng);

/// Gamma with the given shape and unit scale, Marsaglia-Tsang squeeze
/// method; shape < 1 is boosted through the shape+1 sampler.
double gamma_shape(Rng& rng, double shape);

/// Poisson draw. Knuth inversion below mean 10, Hormann's PTRD
/// transformed rejection above; both are exact (no normal approximation).
std::uint64_t poisson(Rng& rng, double mean);

}  // namespace phiid
