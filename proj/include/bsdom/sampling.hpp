#pragma once

// Counter-seeded random elements: each sample index owns an independent
// generator derived from (seed, index), so reports do not depend on
// evaluation order.

#include "bsdom/spectral.hpp"

#include <random>

namespace bsdom {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace detail

inline std::mt19937_64 counter_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(detail::splitmix64(seed ^ detail::splitmix64(index)));
}

inline Element random_element(const DomainSpec& s, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec c(s.dim);
    for (int i = 0; i < s.dim; ++i) c[i] = Complex(gauss(rng), gauss(rng));
    return Element(s, std::move(c));
}

// Gaussian sample rescaled to Hermitian norm at most `scale`.
inline Element random_unit_hermitian(const DomainSpec& s, std::mt19937_64& rng,
                                     double scale = 1.0) {
    Element x = random_element(s, rng);
    double n = hermitian_norm(s, x);
    if (n == 0) return x;
    return (scale / n) * x;
}

// Gaussian sample rescaled to the requested spectral norm.
inline Element random_with_spectral_norm(const DomainSpec& s, std::mt19937_64& rng,
                                         double target) {
    if (target == 0.0) return Element::zero(s);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Element x = random_element(s, rng);
        double n = spectral_norm(s, x);
        if (n > 0) return (target / n) * x;
    }
    throw std::runtime_error("random sampling kept producing zero elements");
}

inline Element random_interior(const DomainSpec& s, std::mt19937_64& rng, double lo = 0.1,
                               double hi = 0.9) {
    std::uniform_real_distribution<double> unif(lo, hi);
    return random_with_spectral_norm(s, rng, unif(rng));
}

}  // namespace bsdom
