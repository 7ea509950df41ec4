#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lama {

/// Fixed square lattice of output-space nodes.
///
/// Node k sits at location (k mod kx, k div kx) in row-major order, so
/// neighboring nodes are exactly one unit apart along each axis. Locations
/// are unitless grid coordinates; the lattice never changes after
/// construction.
class NodeGrid {
public:
    NodeGrid(std::size_t kx, std::size_t ky) : kx_(kx), ky_(ky) {
        if (kx == 0 || ky == 0)
            throw std::invalid_argument("NodeGrid: kx and ky must be positive");
        locations_.reserve(kx * ky);
        for (std::size_t k = 0; k < kx * ky; ++k)
            locations_.push_back({static_cast<double>(k % kx), static_cast<double>(k / kx)});
    }

    std::size_t kx() const { return kx_; }
    std::size_t ky() const { return ky_; }
    std::size_t size() const { return kx_ * ky_; }

    std::array<double, 2> location(std::size_t k) const {
        check_index(k);
        return locations_[k];
    }

    const std::vector<std::array<double, 2>>& locations() const { return locations_; }

    /// Squared Euclidean distance between node locations in the output space.
    double squared_node_distance(std::size_t j, std::size_t k) const {
        check_index(j);
        check_index(k);
        const double dx = locations_[j][0] - locations_[k][0];
        const double dy = locations_[j][1] - locations_[k][1];
        return dx * dx + dy * dy;
    }

    double node_distance(std::size_t j, std::size_t k) const {
        return std::sqrt(squared_node_distance(j, k));
    }

    /// Chebyshev (max-axis) distance between node locations, in whole cells.
    std::size_t chebyshev_distance(std::size_t j, std::size_t k) const {
        check_index(j);
        check_index(k);
        const std::size_t jx = j % kx_, jy = j / kx_;
        const std::size_t kxx = k % kx_, kyy = k / kx_;
        const std::size_t dx = jx > kxx ? jx - kxx : kxx - jx;
        const std::size_t dy = jy > kyy ? jy - kyy : kyy - jy;
        return dx > dy ? dx : dy;
    }

private:
    void check_index(std::size_t k) const {
        if (k >= size())
            throw std::out_of_range("NodeGrid: node index " + std::to_string(k) +
                                    " outside grid of " + std::to_string(size()) + " nodes");
    }

    std::size_t kx_;
    std::size_t ky_;
    std::vector<std::array<double, 2>> locations_;
};

/// Location vector of node k (row-major layout; node 15 of a 4x4 grid is at (3,3)).
inline std::array<double, 2> node_location(std::size_t k, const NodeGrid& grid) {
    return grid.location(k);
}

}  // namespace lama
