#include <albaxter/sampling.hpp>

#include <cmath>

namespace albaxter {

Rng Rng::derived(std::uint64_t seed, std::string_view label) {
    // FNV-1a over the label, mixed with the seed.
    std::uint64_t h = 1469598103934665603ull;
    for (const char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return Rng(seed * 0x9E3779B97F4A7C15ull ^ h);
}

cplx Rng::complex_annulus(double rmin, double rmax) {
    const double rad = uniform(rmin, rmax);
    const double phase = uniform(-kPi, kPi);
    return std::polar(rad, phase);
}

ChainState random_state(std::size_t n, Rng& rng, double half_width) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<cplx> q(n), r(n);
        bool ok = true;
        for (std::size_t k = 0; k < n; ++k) {
            q[k] = rng.complex_box(half_width);
            r[k] = rng.complex_box(half_width);
            if (std::abs(1.0 - q[k] * r[k]) < 1e-3) ok = false;
        }
        if (ok) return ChainState(std::move(q), std::move(r));
    }
    throw DomainError("random_state: could not draw a nondegenerate state");
}

ChainState random_real_state(std::size_t n, Rng& rng, double qlo, double qhi, double rlo, double rhi) {
    std::vector<cplx> q(n), r(n);
    for (std::size_t k = 0; k < n; ++k) {
        q[k] = rng.uniform(qlo, qhi);
        r[k] = rng.uniform(rlo, rhi);
    }
    return ChainState(std::move(q), std::move(r));
}

} // namespace albaxter
