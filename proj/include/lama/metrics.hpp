#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "lama/grid.hpp"
#include "lama/matrix.hpp"
#include "lama/model.hpp"

namespace lama {

/// Lattice spacing used by the topographic error test (D_TE).
inline constexpr double te_unit_distance = 1.0;
/// Diagonal spacing used by the square topographic error test (D_STE).
inline constexpr double ste_unit_distance = std::numbers::sqrt2 * te_unit_distance;
/// Margin added to both distance thresholds.
inline constexpr double te_margin = 0.01;

/// Quantization error of data: mean (unsquared) distance from each data row
/// to its winner node's codebook vector.
inline double qed(const Codebook& codebook, const Dataset& data) {
    if (data.size() == 0)
        throw std::invalid_argument("qed: empty dataset has no mean");
    require_same_dim(data.dim(), codebook.dim(), "qed");
    double sum = 0.0;
    for (std::size_t n = 0; n < data.size(); ++n) {
        const auto x = data.rows.row(n);
        sum += distance(x, codebook.weights.row(winner(codebook, x)));
    }
    return sum / static_cast<double>(data.size());
}

/// Quantization error of landmarks: mean distance from each landmark datum to
/// the codebook vector of its assigned node (no winner search).
inline double qel(const Codebook& codebook, const LandmarkSet& landmarks) {
    if (landmarks.size() == 0)
        throw std::invalid_argument("qel: no landmarks");
    landmarks.validate(codebook.nodes(), codebook.dim());
    double sum = 0.0;
    for (std::size_t m = 0; m < landmarks.size(); ++m)
        sum += distance(landmarks.data.row(m), codebook.weights.row(landmarks.labels[m]));
    return sum / static_cast<double>(landmarks.size());
}

namespace detail {
inline double topographic_error(const Codebook& codebook, const Dataset& data,
                                const NodeGrid& grid, double threshold) {
    if (codebook.nodes() < 2)
        throw std::invalid_argument("topographic error: at least two nodes required");
    require_same_dim(data.dim(), codebook.dim(), "topographic error");
    if (data.size() == 0)
        throw std::invalid_argument("topographic error: empty dataset");
    std::size_t violations = 0;
    for (std::size_t n = 0; n < data.size(); ++n) {
        const auto [first, second] = winner_pair(codebook, data.rows.row(n));
        if (grid.node_distance(first, second) > threshold) ++violations;
    }
    return static_cast<double>(violations) / static_cast<double>(data.size());
}
}  // namespace detail

/// Topographic error: fraction of data whose two best nodes are farther apart
/// than one lattice step (plus margin).
inline double te(const Codebook& codebook, const Dataset& data, const NodeGrid& grid) {
    return detail::topographic_error(codebook, data, grid, te_unit_distance + te_margin);
}

/// Square topographic error: like te but the eight-neighborhood is accepted,
/// so only node pairs beyond the diagonal spacing (plus margin) count.
inline double ste(const Codebook& codebook, const Dataset& data, const NodeGrid& grid) {
    return detail::topographic_error(codebook, data, grid, ste_unit_distance + te_margin);
}

/// All four indices for one trained map; qel only when landmarks exist.
struct ErrorReport {
    double qed = 0.0;
    std::optional<double> qel;
    double te = 0.0;
    double ste = 0.0;
};

inline ErrorReport evaluate(const Codebook& codebook, const Dataset& data,
                            const LandmarkSet& landmarks, const NodeGrid& grid) {
    ErrorReport report;
    report.qed = qed(codebook, data);
    if (landmarks.size() > 0) report.qel = qel(codebook, landmarks);
    report.te = te(codebook, data, grid);
    report.ste = ste(codebook, data, grid);
    return report;
}

}  // namespace lama
