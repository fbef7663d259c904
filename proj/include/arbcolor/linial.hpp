#pragma once

#include "arbcolor/coloring.hpp"
#include "arbcolor/detail/math.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbcolor {

/// Field size and polynomial length of one color-reduction step.
struct LinialParams {
    std::uint64_t q = 2; ///< prime, q > 2 * beta * d
    std::uint32_t d = 1; ///< number of base-q digits per color: max(1, ceil(log_q m))
};

namespace detail {

/// Smallest t >= 1 with q^t >= m.
inline std::uint32_t digits_needed(std::uint64_t m, std::uint64_t q) {
    std::uint32_t t = 1;
    std::uint64_t power = q;
    while (power < m) {
        power = power > m / q ? m : power * q;
        ++t;
    }
    return t;
}

inline std::uint64_t eval_color_poly(std::uint64_t color, std::uint32_t d, std::uint64_t q, std::uint64_t a) {
    std::uint64_t coeffs[64];
    for (std::uint32_t i = 0; i < d; ++i) {
        coeffs[i] = color % q;
        color /= q;
    }
    std::uint64_t value = 0;
    for (std::uint32_t i = d; i-- > 0;) {
        value = (value * a + coeffs[i]) % q;
    }
    return value;
}

} // namespace detail

/// Smallest prime q with q > 2 * beta * d(q), for an m-coloring.
inline LinialParams linial_params(std::uint64_t m, std::uint32_t beta) {
    if (m < 1) {
        throw std::invalid_argument("linial_params: palette must be positive");
    }
    for (std::uint64_t q = 2;; q = detail::next_prime_above(q)) {
        const std::uint32_t d = detail::digits_needed(m, q);
        if (q > 2ull * beta * d) {
            return {q, d};
        }
    }
}

/// One one-sided reduction step: the m-coloring `cur` becomes a q^2-coloring in
/// which every oriented edge with distinct old colors keeps distinct colors.
inline Coloring arb_linial_step(const Orientation& o, const Coloring& cur) {
    if (cur.num_nodes() != o.num_nodes()) {
        throw std::invalid_argument("arb_linial_step: coloring does not match orientation");
    }
    const auto params = linial_params(cur.palette, o.max_out_degree());
    const auto [q, d] = params;
    Coloring next;
    next.color.resize(cur.num_nodes());
    next.palette = static_cast<std::uint32_t>(q * q);
    next.scope = cur.scope;
    for (NodeId v = 0; v < o.num_nodes(); ++v) {
        const std::uint64_t cv = cur.color[v];
        for (NodeId u : o.out[v]) {
            if (cur.color[u] == cv) {
                throw std::invalid_argument("arb_linial_step: oriented edge " + std::to_string(v) + "->" +
                                            std::to_string(u) + " is monochromatic");
            }
        }
        std::optional<std::uint64_t> chosen;
        for (std::uint64_t a = 0; a < q && !chosen; ++a) {
            const std::uint64_t mine = detail::eval_color_poly(cv, d, q, a);
            bool clash = false;
            for (NodeId u : o.out[v]) {
                if (detail::eval_color_poly(cur.color[u], d, q, a) == mine) {
                    clash = true;
                    break;
                }
            }
            if (!clash) {
                chosen = a;
            }
        }
        if (!chosen) {
            throw std::logic_error("arb_linial_step: no evaluation point available");
        }
        next.color[v] = static_cast<std::uint32_t>(*chosen * q + detail::eval_color_poly(cv, d, q, *chosen));
    }
    return next;
}

struct LinialResult {
    Coloring coloring;
    std::uint32_t steps = 0;
    std::vector<std::uint64_t> palette_trace; ///< nominal palette before each step and at the end
};

/// Applies arb_linial_step while it shrinks the palette, starting from
/// `start` (node ids when absent), then trims the palette to the colors used.
inline LinialResult arb_linial_full(const Orientation& o, std::optional<Coloring> start = std::nullopt) {
    LinialResult r;
    r.coloring = start ? *std::move(start) : Coloring::from_ids(o.num_nodes());
    if (r.coloring.num_nodes() != o.num_nodes()) {
        throw std::invalid_argument("arb_linial_full: coloring does not match orientation");
    }
    r.palette_trace.push_back(r.coloring.palette);
    if (o.num_edges() == 0) {
        std::fill(r.coloring.color.begin(), r.coloring.color.end(), 0);
        r.coloring.palette = 1;
        return r;
    }
    const std::uint32_t beta = o.max_out_degree();
    while (true) {
        const auto [q, d] = linial_params(r.coloring.palette, beta);
        if (q * q >= r.coloring.palette) {
            break;
        }
        r.coloring = arb_linial_step(o, r.coloring);
        ++r.steps;
        r.palette_trace.push_back(r.coloring.palette);
    }
    r.coloring.trim_palette();
    return r;
}

/// Palette reached by the reduction recipe from an m-coloring at out-degree
/// beta, before trimming. Pure arithmetic; `steps_limit` caps the number of
/// steps (1 models a single step).
inline std::uint64_t linial_palette_bound(std::uint64_t m, std::uint32_t beta,
                                          std::uint32_t steps_limit = 0xFFFFFFFFu) {
    std::uint64_t palette = std::max<std::uint64_t>(1, m);
    for (std::uint32_t i = 0; i < steps_limit; ++i) {
        const auto [q, d] = linial_params(palette, beta);
        if (q * q >= palette) {
            break;
        }
        palette = q * q;
    }
    return palette;
}

} // namespace arbcolor
