#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lama/grid.hpp"
#include "lama/matrix.hpp"
#include "lama/model.hpp"

namespace lama {

/// Simplified U-matrix: per node, the sum of squared distances to its
/// lattice 4-neighborhood. Stored image-style: values(y, x) belongs to the
/// node at grid location (x, y).
struct UMatrix {
    Matrix values;  // ky rows, kx cols

    std::size_t kx() const { return values.cols(); }
    std::size_t ky() const { return values.rows(); }
};

inline UMatrix umatrix(const Codebook& codebook, const NodeGrid& grid) {
    if (codebook.nodes() != grid.size())
        throw std::invalid_argument("umatrix: codebook does not match grid");
    UMatrix out{Matrix(grid.ky(), grid.kx())};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const std::size_t x = k % grid.kx(), y = k / grid.kx();
        double sum = 0.0;
        if (x > 0) sum += squared_distance(codebook.weights.row(k), codebook.weights.row(k - 1));
        if (x + 1 < grid.kx())
            sum += squared_distance(codebook.weights.row(k), codebook.weights.row(k + 1));
        if (y > 0)
            sum += squared_distance(codebook.weights.row(k), codebook.weights.row(k - grid.kx()));
        if (y + 1 < grid.ky())
            sum += squared_distance(codebook.weights.row(k), codebook.weights.row(k + grid.kx()));
        out.values(y, x) = sum;
    }
    return out;
}

/// Labels gathered per node for rendering on top of the map. Data labels and
/// landmark labels are kept apart so the renderer can style landmarks
/// distinctly; nodes holding several labels get a marker dot.
struct OverlayPlacement {
    std::size_t node = 0;
    std::vector<std::string> names;
    std::vector<std::string> landmark_names;

    bool is_landmark() const { return !landmark_names.empty(); }
    bool multi() const { return names.size() + landmark_names.size() > 1; }
};

struct LabelOverlay {
    std::vector<OverlayPlacement> placements;  // ordered by node index
};

inline LabelOverlay label_overlay(const std::vector<std::size_t>& projections,
                                  const std::vector<std::string>& names,
                                  const std::vector<std::size_t>& landmark_nodes = {},
                                  const std::vector<std::string>& landmark_names = {}) {
    if (projections.size() != names.size())
        throw std::invalid_argument("label_overlay: projections and names differ in length");
    if (landmark_nodes.size() != landmark_names.size())
        throw std::invalid_argument("label_overlay: landmark nodes and names differ in length");

    std::map<std::size_t, OverlayPlacement> by_node;
    for (std::size_t i = 0; i < projections.size(); ++i) {
        OverlayPlacement& p = by_node[projections[i]];
        p.node = projections[i];
        p.names.push_back(names[i]);
    }
    for (std::size_t m = 0; m < landmark_nodes.size(); ++m) {
        OverlayPlacement& p = by_node[landmark_nodes[m]];
        p.node = landmark_nodes[m];
        p.landmark_names.push_back(landmark_names[m]);
    }

    LabelOverlay overlay;
    overlay.placements.reserve(by_node.size());
    for (auto& [node, placement] : by_node) overlay.placements.push_back(std::move(placement));
    return overlay;
}

/// All unordered lattice edges at grid distance exactly 1, lower index first,
/// sorted. Count is kx*(ky-1) + ky*(kx-1).
inline std::vector<std::pair<std::size_t, std::size_t>> mesh_edges(const NodeGrid& grid) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(grid.kx() * (grid.ky() - 1) + grid.ky() * (grid.kx() - 1));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const std::size_t x = k % grid.kx(), y = k / grid.kx();
        if (x + 1 < grid.kx()) edges.emplace_back(k, k + 1);
        if (y + 1 < grid.ky()) edges.emplace_back(k, k + grid.kx());
    }
    return edges;
}

}  // namespace lama
