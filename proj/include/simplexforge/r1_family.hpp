#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "simplexforge/error.hpp"
#include "simplexforge/katetov.hpp"
#include "simplexforge/metric_space.hpp"
#include "simplexforge/rational.hpp"

namespace simplexforge {

struct R1Options {
    bool include_constants = true;
    bool include_sums = true;
    bool include_products = true;
};

namespace detail {

// A ring element with its exact values on the finite space plus conservative
// symbolic certificates: Lipschitz bound (sum: L1+L2, product: L1*B2+L2*B1)
// and a range interval. The certificates, not the exact values, gate the
// rescaling, per the documented generation contract.
struct RingElement {
    std::string name;
    std::vector<Rational> values;
    Rational lip_bound;
    Rational range_lo, range_hi;

    Rational abs_bound() const { return std::max(rat_abs(range_lo), rat_abs(range_hi)); }
};

inline RingElement ring_sum(const RingElement& f, const RingElement& g) {
    RingElement out;
    out.name = "(" + f.name + "+" + g.name + ")";
    out.values.resize(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = f.values[i] + g.values[i];
    out.lip_bound = f.lip_bound + g.lip_bound;
    out.range_lo = f.range_lo + g.range_lo;
    out.range_hi = f.range_hi + g.range_hi;
    return out;
}

inline RingElement ring_product(const RingElement& f, const RingElement& g) {
    RingElement out;
    out.name = "(" + f.name + "*" + g.name + ")";
    out.values.resize(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = f.values[i] * g.values[i];
    out.lip_bound = f.lip_bound * g.abs_bound() + g.lip_bound * f.abs_bound();
    Rational candidates[4] = {f.range_lo * g.range_lo, f.range_lo * g.range_hi,
                              f.range_hi * g.range_lo, f.range_hi * g.range_hi};
    out.range_lo = candidates[0];
    out.range_hi = candidates[0];
    for (const auto& c : candidates) {
        if (c < out.range_lo) out.range_lo = c;
        if (c > out.range_hi) out.range_hi = c;
    }
    return out;
}

} // namespace detail

// Deterministically generates up to `budget` elements of the ring spanned by
// rational constants and the distance functions to D-points, breadth-first
// over expression depth (constants, then distance functions, then pairwise
// sums and products). Each raw element g is rescaled to g/c + 3/4 with
// c = max(4 * lipschitz_bound(g), 1); survivors are exactly the rescaled
// functions whose values verifiably sit in [1/2, 1]. Functions failing the
// check are skipped, not repaired.
inline std::vector<PointFunction> r1_family(const FiniteMetricSpace& x,
                                            const std::vector<std::string>& d_labels,
                                            std::size_t budget,
                                            const R1Options& options = {}) {
    if (!x.unit_bounded) throw domain_error("r1_family: space must be unit-bounded");

    std::vector<detail::RingElement> gen;
    auto emit = [&](detail::RingElement e) {
        if (gen.size() >= budget) return;
        for (const auto& have : gen)
            if (have.values == e.values) return;  // dedupe by exact values
        gen.push_back(std::move(e));
    };

    if (options.include_constants) {
        static const std::pair<const char*, Rational> kConstants[] = {
            {"0", Rational(0)}, {"1", Rational(1)}, {"1/2", rat(1, 2)},
            {"1/4", rat(1, 4)}, {"3/4", rat(3, 4)}};
        for (const auto& [name, q] : kConstants)
            emit({std::string("c(") + name + ")", std::vector<Rational>(x.size(), q),
                  Rational(0), q, q});
    }

    for (const auto& z : d_labels) {
        std::size_t zi = x.index_of(z);
        emit({"d(.," + z + ")", x.d[zi], Rational(1), Rational(0), Rational(1)});
    }

    if (options.include_sums || options.include_products) {
        std::size_t level_start = 0;
        while (gen.size() < budget) {
            std::size_t level_end = gen.size();
            if (level_start == level_end) break;
            for (std::size_t i = 0; i < level_end && gen.size() < budget; ++i)
                for (std::size_t j = std::max(i, level_start); j < level_end && gen.size() < budget; ++j) {
                    if (options.include_sums) emit(detail::ring_sum(gen[i], gen[j]));
                    if (options.include_products) emit(detail::ring_product(gen[i], gen[j]));
                }
            level_start = level_end;
        }
    }

    std::vector<PointFunction> out;
    Rational half = rat(1, 2);
    for (const auto& g : gen) {
        Rational scale = std::max(Rational(4) * g.lip_bound, Rational(1));
        PointFunction f;
        f.name = scale == 1 ? g.name + "+3/4" : g.name + "/" + format_rational(scale) + "+3/4";
        f.values.resize(x.size());
        bool in_range = true;
        for (std::size_t i = 0; i < x.size(); ++i) {
            f.values[i] = g.values[i] / scale + rat(3, 4);
            if (f.values[i] < half || f.values[i] > 1) { in_range = false; break; }
        }
        if (!in_range) continue;

        bool lipschitz = true;
        for (std::size_t i = 0; i < x.size() && lipschitz; ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j)
                if (rat_abs(f.values[i] - f.values[j]) > x.d[i][j]) { lipschitz = false; break; }
        if (!lipschitz) continue;  // symbolic certificate makes this unreachable
        f.lipschitz_cert = true;

        bool dup = false;
        for (const auto& have : out)
            if (have.values == f.values) { dup = true; break; }
        if (!dup) out.push_back(std::move(f));
    }
    return out;
}

// The family d_X D of distance functions to the points of D, the default
// function family of every stage.
inline std::vector<PointFunction> distance_family(const FiniteMetricSpace& x,
                                                  const std::vector<std::string>& d_labels) {
    if (!x.unit_bounded) throw domain_error("distance_family: space must be unit-bounded");
    std::vector<PointFunction> out;
    out.reserve(d_labels.size());
    for (const auto& z : d_labels) {
        std::size_t zi = x.index_of(z);
        out.push_back({"d(.," + z + ")", x.d[zi], true});
    }
    return out;
}

} // namespace simplexforge
