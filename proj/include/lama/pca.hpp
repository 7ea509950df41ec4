#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "lama/matrix.hpp"
#include "lama/model.hpp"

namespace lama {

namespace detail {

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues and matching eigenvectors (columns of `vectors`),
/// unsorted. Plenty for the small covariance matrices handled here.
struct SymmetricEigen {
    std::vector<double> values;
    Matrix vectors;
};

inline SymmetricEigen jacobi_eigen(Matrix a) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n) throw std::invalid_argument("jacobi_eigen: square matrix required");

    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off <= 1e-24 * n * n) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    SymmetricEigen out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
    out.vectors = std::move(v);
    return out;
}

}  // namespace detail

/// Top-3 principal directions of the data, with both the data and the
/// codebook projected onto them. For D < 3 the missing components are
/// zero rows and `effective_components` says how many are real.
struct PcaProjection {
    Matrix components;  // 3 x D, orthonormal rows (zero rows beyond effective_components)
    std::vector<double> mean;
    std::vector<double> explained_variance;  // length 3, nonincreasing
    Matrix codebook_coords;                  // K x 3
    Matrix data_coords;                      // N x 3
    std::size_t effective_components = 0;
};

/// Fit on the mean-centered data rows (covariance normalized by N-1), then
/// project data and codebook alike. Sign convention: each component's
/// largest-magnitude coordinate is made positive, so renders are stable.
inline PcaProjection pca_fit_project(const Codebook& codebook, const Dataset& data) {
    if (data.size() < 2)
        throw std::invalid_argument("pca_fit_project: need at least 2 rows for a covariance");
    require_same_dim(codebook.dim(), data.dim(), "pca_fit_project");

    const std::size_t n = data.size();
    const std::size_t d = data.dim();

    PcaProjection out;
    out.mean.assign(d, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) out.mean[c] += data.rows(r, c);
    for (double& m : out.mean) m /= static_cast<double>(n);

    Matrix cov(d, d);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            const double xi = data.rows(r, i) - out.mean[i];
            for (std::size_t j = i; j < d; ++j)
                cov(i, j) += xi * (data.rows(r, j) - out.mean[j]);
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            cov(i, j) /= static_cast<double>(n - 1);
            cov(j, i) = cov(i, j);
        }

    detail::SymmetricEigen eig = detail::jacobi_eigen(std::move(cov));
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return eig.values[a] > eig.values[b]; });

    out.effective_components = std::min<std::size_t>(3, d);
    out.components = Matrix(3, d);
    out.explained_variance.assign(3, 0.0);
    for (std::size_t c = 0; c < out.effective_components; ++c) {
        const std::size_t src = order[c];
        out.explained_variance[c] = std::max(0.0, eig.values[src]);
        std::size_t peak = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (std::abs(eig.vectors(i, src)) > std::abs(eig.vectors(peak, src))) peak = i;
        const double sign = eig.vectors(peak, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < d; ++i) out.components(c, i) = sign * eig.vectors(i, src);
    }

    auto project = [&](const Matrix& rows) {
        Matrix coords(rows.rows(), 3);
        for (std::size_t r = 0; r < rows.rows(); ++r)
            for (std::size_t c = 0; c < out.effective_components; ++c) {
                double dot = 0.0;
                for (std::size_t i = 0; i < d; ++i)
                    dot += (rows(r, i) - out.mean[i]) * out.components(c, i);
                coords(r, c) = dot;
            }
        return coords;
    };
    out.data_coords = project(data.rows);
    out.codebook_coords = project(codebook.weights);
    return out;
}

}  // namespace lama
