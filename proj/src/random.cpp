#include "treeproj/random.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace treeproj {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<double> gaussian_signal(std::uint64_t seed, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("negative signal length");
    std::mt19937_64 eng(seed);
    // 53-bit uniform on (0, 1]; never 0, so the logarithm below is finite.
    const auto unit = [&eng]() {
        return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
    };
    std::vector<double> out(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; i += 2) {
        const double radius = std::sqrt(-2.0 * std::log(unit()));
        const double angle = 2.0 * std::numbers::pi_v<double> * unit();
        out[static_cast<std::size_t>(i)] = radius * std::cos(angle);
        if (i + 1 < n) out[static_cast<std::size_t>(i + 1)] = radius * std::sin(angle);
    }
    return out;
}

}  // namespace treeproj
