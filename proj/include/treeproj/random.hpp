#pragma once

#include <cstdint>
#include <vector>

namespace treeproj {

/// Standard Gaussian vector from a seed. Uses a fixed Box-Muller transform
/// over std::mt19937_64 so the sequence is identical across platforms and
/// standard libraries.
std::vector<double> gaussian_signal(std::uint64_t seed, std::int64_t n);

/// splitmix64 step, used to derive per-record seeds from a base seed and
/// cell coordinates.
std::uint64_t mix64(std::uint64_t x);

}  // namespace treeproj
