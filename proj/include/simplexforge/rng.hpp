#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "simplexforge/rational.hpp"

namespace simplexforge {

// All randomness in the project flows through this wrapper around
// std::mt19937_64 (whose output sequence is fixed by the standard), reduced
// with plain modulo so that streams are identical across platforms. Never use
// std::uniform_*_distribution here: their mappings are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform-ish integer in [0, n). Modulo bias is irrelevant for test data.
    std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : next() % n; }

    std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    bool coin() { return (next() & 1u) != 0; }

    // Random rational p/q with q in [1, max_den] and value in [0, 1].
    Rational rational01(std::uint64_t max_den = 16) {
        std::uint64_t den = in_range(1, max_den);
        std::uint64_t num = below(den + 1);
        return Rational(Integer(num), Integer(den));
    }

    // Random rational strictly inside (lo, hi); grid point of a small mesh.
    Rational rational_between(const Rational& lo, const Rational& hi, std::uint64_t mesh = 8) {
        std::uint64_t k = in_range(1, mesh - 1);
        return lo + (hi - lo) * Rational(Integer(k), Integer(mesh));
    }

    // Barycentric weights: n nonnegative rationals summing to 1.
    std::vector<Rational> simplex_weights(std::size_t n, std::uint64_t scale = 12) {
        std::vector<Rational> w(n);
        Rational total(0);
        for (auto& x : w) {
            x = Rational(Integer(in_range(0, scale)), Integer(1));
            total += x;
        }
        if (total == 0) { w[below(n)] = 1; total = 1; }
        for (auto& x : w) x /= total;
        return w;
    }

    // Strictly positive barycentric weights.
    std::vector<Rational> interior_weights(std::size_t n, std::uint64_t scale = 12) {
        std::vector<Rational> w(n);
        Rational total(0);
        for (auto& x : w) {
            x = Rational(Integer(in_range(1, scale)), Integer(1));
            total += x;
        }
        for (auto& x : w) x /= total;
        return w;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace simplexforge
