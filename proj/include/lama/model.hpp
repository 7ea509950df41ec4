#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lama/grid.hpp"
#include "lama/matrix.hpp"

namespace lama {

/// Trainable codebook: one input-space vector per grid node, K rows by D columns.
struct Codebook {
    Matrix weights;

    Codebook() = default;
    explicit Codebook(Matrix w) : weights(std::move(w)) {}

    std::size_t nodes() const { return weights.rows(); }
    std::size_t dim() const { return weights.cols(); }

    friend bool operator==(const Codebook&, const Codebook&) = default;
};

/// Input data: N rows of D features, with optional per-row names.
/// Names, when present, align with rows by index.
struct Dataset {
    Matrix rows;
    std::vector<std::string> names;

    std::size_t size() const { return rows.rows(); }
    std::size_t dim() const { return rows.cols(); }
    bool has_names() const { return !names.empty(); }

    void validate() const {
        if (rows.rows() == 0)
            throw std::invalid_argument("Dataset: at least one row required");
        if (!rows.all_finite())
            throw std::invalid_argument("Dataset: non-finite entry");
        if (has_names() && names.size() != rows.rows())
            throw std::invalid_argument("Dataset: names/rows length mismatch");
    }
};

/// Landmark pairs: data points in input space and the node each one is
/// pinned to. Labels must be distinct and within the grid.
struct LandmarkSet {
    Matrix data;
    std::vector<std::size_t> labels;

    std::size_t size() const { return labels.size(); }

    void validate(std::size_t node_count, std::size_t dim) const {
        if (data.rows() != labels.size())
            throw std::invalid_argument("LandmarkSet: data/labels length mismatch");
        if (size() > 0 && data.cols() != dim)
            throw std::invalid_argument("LandmarkSet: data dimension mismatch");
        for (std::size_t m = 0; m < labels.size(); ++m) {
            if (labels[m] >= node_count)
                throw std::out_of_range("LandmarkSet: label " + std::to_string(labels[m]) +
                                        " outside grid of " + std::to_string(node_count) +
                                        " nodes");
            for (std::size_t j = m + 1; j < labels.size(); ++j)
                if (labels[j] == labels[m])
                    throw std::invalid_argument("LandmarkSet: duplicate node label " +
                                                std::to_string(labels[m]));
        }
    }
};

/// Index of the node whose codebook vector is nearest to x (squared Euclidean
/// metric, ties broken toward the lowest node index).
inline std::size_t winner(const Codebook& codebook, std::span<const double> x) {
    if (codebook.nodes() == 0)
        throw std::invalid_argument("winner: empty codebook");
    require_same_dim(x.size(), codebook.dim(), "winner");

    const std::size_t dim = codebook.dim();
    const double* w = codebook.weights.data();
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < codebook.nodes(); ++k, w += dim) {
        double d = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double diff = x[i] - w[i];
            d += diff * diff;
        }
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    return best;
}

/// First- and second-place winner nodes for x, both under the lowest-index
/// tie-break. The two indices are always distinct.
inline std::pair<std::size_t, std::size_t> winner_pair(const Codebook& codebook,
                                                       std::span<const double> x) {
    if (codebook.nodes() < 2)
        throw std::invalid_argument("winner_pair: at least two nodes required");
    require_same_dim(x.size(), codebook.dim(), "winner_pair");

    const std::size_t dim = codebook.dim();
    const double* w = codebook.weights.data();
    std::size_t k1 = 0, k2 = 0;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < codebook.nodes(); ++k, w += dim) {
        double d = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double diff = x[i] - w[i];
            d += diff * diff;
        }
        if (d < d1) {
            d2 = d1;
            k2 = k1;
            d1 = d;
            k1 = k;
        } else if (d < d2) {
            d2 = d;
            k2 = k;
        }
    }
    return {k1, k2};
}

/// Winner node of every dataset row, in row order.
inline std::vector<std::size_t> project_all(const Codebook& codebook, const Dataset& data) {
    require_same_dim(data.dim(), codebook.dim(), "project_all");
    std::vector<std::size_t> nodes;
    nodes.reserve(data.size());
    for (std::size_t n = 0; n < data.size(); ++n)
        nodes.push_back(winner(codebook, data.rows.row(n)));
    return nodes;
}

}  // namespace lama
