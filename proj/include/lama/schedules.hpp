#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "lama/grid.hpp"

namespace lama {

/// Full parameter set for one training run: grid size, step horizon, the
/// data-phase schedule (a, sigma), the landmark-phase schedule (b, rho),
/// the phase-selection probability and the RNG seed.
///
/// tau_b is accepted and stored because experiment tables list it, but no
/// schedule reads it: the landmark rate's width over steps is rho_b.
struct TrainConfig {
    std::size_t kx = 0;
    std::size_t ky = 0;
    std::size_t t_max = 0;

    double a_max = 0.0;
    double a_min = 0.0;
    double tau_a = 1.0;
    double sigma_max = 1.0;
    double sigma_min = 1.0;
    double tau_sigma = 1.0;

    double b_max = 0.0;
    double b_min = 0.0;
    double tau_b = 1.0;
    double t_center = 0.0;
    double rho_b = 1.0;
    double rho_max = 1.0;
    double rho_min = 1.0;
    double tau_rho = 1.0;

    double p_th = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        auto fail = [](const std::string& msg) { throw std::invalid_argument("TrainConfig: " + msg); };
        if (kx == 0 || ky == 0) fail("kx and ky must be positive");
        if (t_max == 0) fail("t_max must be positive");
        if (!(a_min > 0.0 && a_min <= a_max && a_max < 1.0)) fail("need 0 < a_min <= a_max < 1");
        if (!(sigma_min > 0.0 && sigma_min <= sigma_max)) fail("need 0 < sigma_min <= sigma_max");
        if (!(b_min >= 0.0 && b_min <= b_max && b_max < 1.0)) fail("need 0 <= b_min <= b_max < 1");
        if (!(rho_min > 0.0 && rho_min <= rho_max)) fail("need 0 < rho_min <= rho_max");
        if (!(tau_a > 0.0)) fail("tau_a must be positive");
        if (!(tau_sigma > 0.0)) fail("tau_sigma must be positive");
        if (!(tau_b > 0.0)) fail("tau_b must be positive");
        if (!(tau_rho > 0.0)) fail("tau_rho must be positive");
        if (!(rho_b > 0.0)) fail("rho_b must be positive");
        if (!(p_th >= 0.0 && p_th < 1.0)) fail("need 0 <= p_th < 1");
    }

    friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

namespace detail {
/// max + (min - max) style exponential decay written as a convex blend so the
/// endpoints are exact: at t=0 the result is exactly vmax, and it tends to
/// vmin as t grows.
inline double exp_decay(double t, double vmax, double vmin, double tau) {
    const double e = std::exp(-t / tau);
    return vmax * e + vmin * (1.0 - e);
}
}  // namespace detail

/// Data-phase learning-rate ceiling a(t): exponential decay from a_max to a_min.
inline double rate_a(std::size_t t, const TrainConfig& cfg) {
    return detail::exp_decay(static_cast<double>(t), cfg.a_max, cfg.a_min, cfg.tau_a);
}

/// Data-phase neighborhood spread sigma(t), in grid units.
inline double spread_sigma(std::size_t t, const TrainConfig& cfg) {
    return detail::exp_decay(static_cast<double>(t), cfg.sigma_max, cfg.sigma_min, cfg.tau_sigma);
}

/// Landmark-phase learning-rate ceiling b(t): Gaussian bump over steps,
/// peaking at exactly b_max when t = t_center, width rho_b.
inline double rate_b(std::size_t t, const TrainConfig& cfg) {
    const double dt = static_cast<double>(t) - cfg.t_center;
    const double e = std::exp(-(dt * dt) / (2.0 * cfg.rho_b * cfg.rho_b));
    return cfg.b_max * e + cfg.b_min * (1.0 - e);
}

/// Landmark-phase neighborhood spread rho(t), in grid units.
inline double spread_rho(std::size_t t, const TrainConfig& cfg) {
    return detail::exp_decay(static_cast<double>(t), cfg.rho_max, cfg.rho_min, cfg.tau_rho);
}

/// Data-phase neighborhood factor alpha_k(t): a(t) scaled by a Gaussian in the
/// output-space distance from the winner node. Exactly a(t) at the winner.
inline double neigh_a(std::size_t winner_node, std::size_t k, std::size_t t,
                      const TrainConfig& cfg, const NodeGrid& grid) {
    const double s = spread_sigma(t, cfg);
    const double d2 = grid.squared_node_distance(winner_node, k);
    return rate_a(t, cfg) * std::exp(-d2 / (2.0 * s * s));
}

/// Landmark-phase neighborhood factor beta_k(t): b(t) scaled by a Gaussian in
/// the output-space distance from the landmark node. Exactly b(t) at that node.
inline double neigh_b(std::size_t landmark_node, std::size_t k, std::size_t t,
                      const TrainConfig& cfg, const NodeGrid& grid) {
    const double r = spread_rho(t, cfg);
    const double d2 = grid.squared_node_distance(landmark_node, k);
    return rate_b(t, cfg) * std::exp(-d2 / (2.0 * r * r));
}

}  // namespace lama
