#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lama/grid.hpp"
#include "lama/matrix.hpp"
#include "lama/metrics.hpp"
#include "lama/model.hpp"
#include "lama/rng.hpp"
#include "lama/schedules.hpp"

namespace lama {

enum class Phase { data_driven, landmark_driven };

/// Error indices recorded after the update at step `step`.
struct TraceCheckpoint {
    std::size_t step = 0;
    double qed = 0.0;
    std::optional<double> qel;
    double ste = 0.0;
};

struct TrainTrace {
    std::vector<TraceCheckpoint> checkpoints;
    std::vector<std::pair<std::size_t, Codebook>> snapshots;
};

struct TrainOptions {
    /// Keep a codebook copy at every checkpoint step.
    bool record_snapshots = false;
    /// Override the default checkpoint steps (must be strictly increasing,
    /// all below t_max).
    std::vector<std::size_t> checkpoints;
    /// Called after every step with the step index and the updated codebook.
    std::function<void(std::size_t, const Codebook&)> on_step;
};

struct TrainResult {
    Codebook codebook;
    TrainTrace trace;
};

/// Fresh codebook with every entry drawn uniform on [0,1), row-major draw order.
inline Codebook init_codebook(Rng& rng, std::size_t nodes, std::size_t dim) {
    if (nodes == 0 || dim == 0)
        throw std::invalid_argument("init_codebook: nodes and dim must be positive");
    Matrix w(nodes, dim);
    double* p = w.data();
    for (std::size_t i = 0; i < nodes * dim; ++i) p[i] = rng.uniform01();
    return Codebook{std::move(w)};
}

/// One phase draw: landmark-driven iff p < p_th (strict) and landmarks exist.
/// Consumes exactly one uniform01 draw regardless of the outcome.
inline Phase select_phase(Rng& rng, double p_th, std::size_t landmark_count) {
    const double p = rng.uniform01();
    return (p < p_th && landmark_count > 0) ? Phase::landmark_driven : Phase::data_driven;
}

namespace detail {
/// Shared update kernel: every row moves toward x by
/// rate * exp(-||v_center - v_k||^2 / (2 spread^2)). No row is skipped.
inline void kernel_update(Codebook& codebook, std::span<const double> x, std::size_t center,
                          double rate, double spread, const NodeGrid& grid) {
    const double denom = 2.0 * spread * spread;
    const std::size_t dim = codebook.dim();
    double* w = codebook.weights.data();
    for (std::size_t k = 0; k < codebook.nodes(); ++k, w += dim) {
        const double f = rate * std::exp(-grid.squared_node_distance(center, k) / denom);
        for (std::size_t i = 0; i < dim; ++i) w[i] += f * (x[i] - w[i]);
    }
}
}  // namespace detail

/// Data-driven update: find the winner for x, then move every codebook vector
/// toward x weighted by the data-phase neighborhood factor. Landmark nodes
/// participate like any other node.
inline Codebook data_step(Codebook codebook, std::span<const double> x, std::size_t t,
                          const TrainConfig& cfg, const NodeGrid& grid) {
    require_same_dim(x.size(), codebook.dim(), "data_step");
    const std::size_t winner_node = winner(codebook, x);
    detail::kernel_update(codebook, x, winner_node, rate_a(t, cfg), spread_sigma(t, cfg), grid);
    return codebook;
}

/// Landmark-driven update: the landmark's own node is the winner regardless of
/// distance; every codebook vector moves toward the landmark datum weighted by
/// the landmark-phase neighborhood factor.
inline Codebook landmark_step(Codebook codebook, std::span<const double> landmark_x,
                              std::size_t landmark_node, std::size_t t, const TrainConfig& cfg,
                              const NodeGrid& grid) {
    require_same_dim(landmark_x.size(), codebook.dim(), "landmark_step");
    if (landmark_node >= codebook.nodes())
        throw std::out_of_range("landmark_step: node " + std::to_string(landmark_node) +
                                " outside codebook of " + std::to_string(codebook.nodes()) +
                                " nodes");
    detail::kernel_update(codebook, landmark_x, landmark_node, rate_b(t, cfg),
                          spread_rho(t, cfg), grid);
    return codebook;
}

/// Checkpoint steps: the canonical seven for the 60000-step horizon, otherwise
/// eight evenly spaced steps. The last step is always included.
inline std::vector<std::size_t> default_checkpoints(std::size_t t_max) {
    std::vector<std::size_t> steps;
    if (t_max == 60000) {
        steps = {0, 9999, 19999, 29999, 39999, 49999, 59999};
    } else {
        for (std::size_t i = 0; i <= 7; ++i) steps.push_back((t_max - 1) * i / 7);
        steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    }
    return steps;
}

/// Run the alternating update method for cfg.t_max steps.
///
/// Per-step draw order is fixed: (1) one phase draw, (2) one sample-index
/// draw from the chosen pool. Together with the seeded codebook
/// initialization this makes traces bit-reproducible for equal seeds.
inline TrainResult train(const Dataset& data, const LandmarkSet& landmarks,
                         const TrainConfig& cfg, const NodeGrid& grid,
                         const TrainOptions& options = {}) {
    cfg.validate();
    data.validate();
    landmarks.validate(grid.size(), data.dim());
    if (grid.kx() != cfg.kx || grid.ky() != cfg.ky)
        throw std::invalid_argument("train: grid does not match config (kx, ky)");
    if (cfg.p_th > 0.0 && landmarks.size() == 0)
        throw std::invalid_argument("train: p_th > 0 requires at least one landmark");

    std::vector<std::size_t> checkpoints =
        options.checkpoints.empty() ? default_checkpoints(cfg.t_max) : options.checkpoints;
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] >= cfg.t_max || (i > 0 && checkpoints[i] <= checkpoints[i - 1]))
            throw std::invalid_argument("train: checkpoints must be strictly increasing and below t_max");
    }

    Rng rng(cfg.seed);
    Codebook codebook = init_codebook(rng, grid.size(), data.dim());

    TrainResult result;
    auto next_checkpoint = checkpoints.begin();
    for (std::size_t t = 0; t < cfg.t_max; ++t) {
        if (select_phase(rng, cfg.p_th, landmarks.size()) == Phase::landmark_driven) {
            const std::size_t m = rng.below(landmarks.size());
            codebook = landmark_step(std::move(codebook), landmarks.data.row(m),
                                     landmarks.labels[m], t, cfg, grid);
        } else {
            const std::size_t n = rng.below(data.size());
            codebook = data_step(std::move(codebook), data.rows.row(n), t, cfg, grid);
        }

        if (options.on_step) options.on_step(t, codebook);

        if (next_checkpoint != checkpoints.end() && *next_checkpoint == t) {
            TraceCheckpoint cp;
            cp.step = t;
            cp.qed = qed(codebook, data);
            if (landmarks.size() > 0) cp.qel = qel(codebook, landmarks);
            cp.ste = ste(codebook, data, grid);
            result.trace.checkpoints.push_back(std::move(cp));
            if (options.record_snapshots) result.trace.snapshots.emplace_back(t, codebook);
            ++next_checkpoint;
        }
    }

    result.codebook = std::move(codebook);
    return result;
}

}  // namespace lama
