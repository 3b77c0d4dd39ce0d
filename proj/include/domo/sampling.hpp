#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "errors.hpp"

namespace domo {

/// Uniform variates on the open interval (0, 1) from a 64-bit Mersenne twister.
///
/// Uses the top 53 bits directly instead of std::uniform_real_distribution, whose
/// algorithm is implementation-defined, so a seed reproduces across standard libraries.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        const std::uint64_t bits = engine_() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive independent sub-seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Inverse-transform draw; the upper half goes through the inverse survival function.
template <class Dist>
double draw(const Dist& d, UniformSource& uniform) {
    const double u = uniform();
    return u <= 0.5 ? d.quantile(u) : d.isf(1.0 - u);
}

template <class Dist>
std::vector<double> sample(const Dist& d, std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw DomainError("sample size must be >= 1");
    }
    UniformSource uniform(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(draw(d, uniform));
    }
    return out;
}

} // namespace domo
