#pragma once

// Seeded draws for tests, sweeps and the CLI. Uniform variates are built from
// raw 64-bit engine output so streams are identical across standard libraries.

#include <albaxter/classical.hpp>
#include <albaxter/core.hpp>

#include <cstdint>
#include <random>
#include <string_view>

namespace albaxter {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Stream keyed by (seed, label) so independent checks do not share draws.
    static Rng derived(std::uint64_t seed, std::string_view label);

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    cplx complex_box(double half_width) { return {uniform(-half_width, half_width), uniform(-half_width, half_width)}; }
    /// |z| in [rmin, rmax], uniform phase.
    cplx complex_annulus(double rmin, double rmax);

private:
    std::mt19937_64 engine_;
};

/// Complex q, r in the box [-w, w]^2 per component, redrawn until nondegenerate.
ChainState random_state(std::size_t n, Rng& rng, double half_width = 0.4);

/// Real q, r with q in [qlo, qhi], r in [rlo, rhi].
ChainState random_real_state(std::size_t n, Rng& rng, double qlo = 0.1, double qhi = 0.5, double rlo = 0.1,
                             double rhi = 0.5);

} // namespace albaxter
