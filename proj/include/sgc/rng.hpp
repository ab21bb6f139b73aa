#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace sgc {

using Rng = std::mt19937_64;

// Seeds an engine from (seed, stream) so independent restarts get unrelated streams.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

std::uint64_t splitmix64(std::uint64_t x);

// Distribution helpers with fixed algorithms, so draws do not depend on the
// standard library implementation.
double uniform01(Rng& rng);
std::size_t uniform_index(Rng& rng, std::size_t n);
double standard_normal(Rng& rng);

}  // namespace sgc
