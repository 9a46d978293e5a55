#pragma once

#include <cstdint>

#include "hullbench/mesh.hpp"

namespace hullbench {

/// splitmix64: tiny, portable, identical on every platform.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }
};

/// Draws n points uniformly from the mesh surface: triangles chosen with
/// probability proportional to area, positions by uniform barycentric
/// coordinates. Bit-reproducible for a fixed seed.
PointCloud sample_surface(const TriangleMesh& mesh, std::size_t n, std::uint64_t seed);

}  // namespace hullbench
