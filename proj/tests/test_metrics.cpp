#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lama/metrics.hpp"
#include "lama/rng.hpp"

using lama::Codebook;
using lama::Dataset;
using lama::LandmarkSet;
using lama::Matrix;
using lama::NodeGrid;

namespace {

Matrix random_matrix(lama::Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform01();
    return m;
}

// Brute-force recomputations, deliberately structured differently from the
// library code (full distance tables, explicit sorting of candidates).
double oracle_qed(const Matrix& w, const Matrix& x) {
    double total = 0.0;
    for (std::size_t n = 0; n < x.rows(); ++n) {
        double best = 1e300;
        for (std::size_t k = 0; k < w.rows(); ++k) {
            double d = 0.0;
            for (std::size_t i = 0; i < x.cols(); ++i)
                d += (x(n, i) - w(k, i)) * (x(n, i) - w(k, i));
            best = std::min(best, d);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(x.rows());
}

double oracle_topographic(const Matrix& w, const Matrix& x, std::size_t kx, double threshold) {
    std::size_t bad = 0;
    for (std::size_t n = 0; n < x.rows(); ++n) {
        std::size_t k1 = 0, k2 = 0;
        double d1 = 1e300, d2 = 1e300;
        for (std::size_t k = 0; k < w.rows(); ++k) {
            double d = 0.0;
            for (std::size_t i = 0; i < x.cols(); ++i)
                d += (x(n, i) - w(k, i)) * (x(n, i) - w(k, i));
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
        const double gx = static_cast<double>(k1 % kx) - static_cast<double>(k2 % kx);
        const double gy = static_cast<double>(k1 / kx) - static_cast<double>(k2 / kx);
        if (std::sqrt(gx * gx + gy * gy) > threshold) ++bad;
    }
    return static_cast<double>(bad) / static_cast<double>(x.rows());
}

}  // namespace

TEST_CASE("qed hand values") {
    // Every data row appears among the codebook rows: zero error.
    Matrix w = Matrix::from_rows({{0.1, 0.1}, {0.5, 0.5}, {0.9, 0.9}});
    CHECK(lama::qed(Codebook{w}, Dataset{w, {}}) == 0.0);

    // Single datum 0.5 away from the nearest row.
    Matrix one = Matrix::from_rows({{0.5, 0.5}});
    Matrix data = Matrix::from_rows({{0.5, 1.0}});
    CHECK(lama::qed(Codebook{one}, Dataset{data, {}}) == Catch::Approx(0.5).epsilon(1e-15));

    CHECK_THROWS_AS(lama::qed(Codebook{one}, Dataset{}), std::invalid_argument);
}

TEST_CASE("qed matches the brute-force oracle on random instances") {
    lama::Rng rng(314);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + rng.below(16);
        const std::size_t n = 1 + rng.below(20);
        const std::size_t d = 1 + rng.below(5);
        const Matrix w = random_matrix(rng, k, d);
        const Matrix x = random_matrix(rng, n, d);
        CHECK(lama::qed(Codebook{w}, Dataset{x, {}}) ==
              Catch::Approx(oracle_qed(w, x)).margin(1e-12));
    }
}

TEST_CASE("qel hand values and oracle") {
    // Landmark rows equal their nodes' codebook rows: zero error.
    Matrix w = Matrix::from_rows({{0.1, 0.1}, {0.5, 0.5}, {0.9, 0.9}, {0.3, 0.7}});
    LandmarkSet exact{Matrix::from_rows({{0.5, 0.5}, {0.3, 0.7}}), {1, 3}};
    CHECK(lama::qel(Codebook{w}, exact) == 0.0);

    // One landmark exactly 2 away from its assigned node's row (no search:
    // row 0 is nearer but node 2 is what counts).
    Matrix w2 = Matrix::from_rows({{2.0, 1.0}, {9.0, 9.0}, {2.0, 3.0}});
    LandmarkSet far{Matrix::from_rows({{2.0, 1.0}}), {2}};
    CHECK(lama::qel(Codebook{w2}, far) == 2.0);

    CHECK_THROWS_AS(lama::qel(Codebook{w}, LandmarkSet{}), std::invalid_argument);

    lama::Rng rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 3 + rng.below(8);
        const Matrix cw = random_matrix(rng, k, 4);
        const Matrix lx = random_matrix(rng, 3, 4);
        const std::vector<std::size_t> labels{rng.below(k - 2), k - 2, k - 1};
        double expect = 0.0;
        for (std::size_t m = 0; m < 3; ++m) {
            double d = 0.0;
            for (std::size_t i = 0; i < 4; ++i)
                d += (lx(m, i) - cw(labels[m], i)) * (lx(m, i) - cw(labels[m], i));
            expect += std::sqrt(d);
        }
        expect /= 3.0;
        CHECK(lama::qel(Codebook{cw}, LandmarkSet{lx, labels}) ==
              Catch::Approx(expect).margin(1e-12));
    }
}

TEST_CASE("te and ste adjacency hand cases") {
    const NodeGrid grid22(2, 2);

    // Winners are always the diagonal pair (0, 3): TE counts it, STE does not.
    Matrix diag = Matrix::from_rows({{0.5, 0.5}, {9.0, 9.0}, {-9.0, -9.0}, {0.5, 0.6}});
    Matrix near = Matrix::from_rows({{0.5, 0.52}, {0.5, 0.48}});
    CHECK(lama::te(Codebook{diag}, Dataset{near, {}}, grid22) == 1.0);
    CHECK(lama::ste(Codebook{diag}, Dataset{near, {}}, grid22) == 0.0);

    // Winners lattice-adjacent (distance 1): neither counts it.
    Matrix adj = Matrix::from_rows({{0.5, 0.5}, {0.5, 0.6}, {9.0, 9.0}, {-9.0, -9.0}});
    CHECK(lama::te(Codebook{adj}, Dataset{near, {}}, grid22) == 0.0);
    CHECK(lama::ste(Codebook{adj}, Dataset{near, {}}, grid22) == 0.0);

    // Winners two lattice steps apart on a 3x1 grid: both count it.
    const NodeGrid grid31(3, 1);
    Matrix gap = Matrix::from_rows({{0.5}, {9.0}, {0.6}});
    Matrix x1 = Matrix::from_rows({{0.55}});
    CHECK(lama::te(Codebook{gap}, Dataset{x1, {}}, grid31) == 1.0);
    CHECK(lama::ste(Codebook{gap}, Dataset{x1, {}}, grid31) == 1.0);

    // A single node cannot have a second winner.
    CHECK_THROWS_AS(lama::te(Codebook{Matrix(1, 1, 0.5)}, Dataset{x1, {}}, NodeGrid(1, 1)),
                    std::invalid_argument);
}

TEST_CASE("te and ste match the brute-force oracle and obey ste <= te") {
    lama::Rng rng(271);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t kx = 2 + rng.below(3);
        const std::size_t ky = 2 + rng.below(3);
        const std::size_t n = 1 + rng.below(20);
        const std::size_t d = 1 + rng.below(5);
        const NodeGrid grid(kx, ky);
        const Matrix w = random_matrix(rng, kx * ky, d);
        const Matrix x = random_matrix(rng, n, d);
        const Codebook cb{w};
        const Dataset data{x, {}};

        const double te_v = lama::te(cb, data, grid);
        const double ste_v = lama::ste(cb, data, grid);
        CHECK(te_v == Catch::Approx(oracle_topographic(w, x, kx, 1.01)).margin(1e-12));
        CHECK(ste_v ==
              Catch::Approx(oracle_topographic(w, x, kx, std::sqrt(2.0) + 0.01)).margin(1e-12));
        CHECK(ste_v <= te_v);
        CHECK((te_v >= 0.0 && te_v <= 1.0));
    }
}

TEST_CASE("qed and qel are translation invariant") {
    lama::Rng rng(161);
    const Matrix w = random_matrix(rng, 9, 3);
    const Matrix x = random_matrix(rng, 12, 3);
    const std::vector<std::size_t> labels{2, 5};
    const Matrix lx = random_matrix(rng, 2, 3);

    Matrix w_shift = w, x_shift = x, lx_shift = lx;
    const double shift[3] = {1.5, -2.0, 0.25};
    for (std::size_t r = 0; r < w.rows(); ++r)
        for (std::size_t c = 0; c < 3; ++c) w_shift(r, c) += shift[c];
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < 3; ++c) x_shift(r, c) += shift[c];
    for (std::size_t r = 0; r < lx.rows(); ++r)
        for (std::size_t c = 0; c < 3; ++c) lx_shift(r, c) += shift[c];

    CHECK(lama::qed(Codebook{w_shift}, Dataset{x_shift, {}}) ==
          Catch::Approx(lama::qed(Codebook{w}, Dataset{x, {}})).margin(1e-12));
    CHECK(lama::qel(Codebook{w_shift}, LandmarkSet{lx_shift, labels}) ==
          Catch::Approx(lama::qel(Codebook{w}, LandmarkSet{lx, labels})).margin(1e-12));
}

TEST_CASE("te and ste are invariant under uniform positive scaling") {
    lama::Rng rng(828);
    const NodeGrid grid(3, 3);
    const Matrix w = random_matrix(rng, 9, 4);
    const Matrix x = random_matrix(rng, 15, 4);

    // Doubling is exact in binary floating point, so orderings are unchanged.
    Matrix w2 = w, x2 = x;
    for (std::size_t r = 0; r < w.rows(); ++r)
        for (std::size_t c = 0; c < 4; ++c) w2(r, c) *= 2.0;
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < 4; ++c) x2(r, c) *= 2.0;

    CHECK(lama::te(Codebook{w2}, Dataset{x2, {}}, grid) ==
          lama::te(Codebook{w}, Dataset{x, {}}, grid));
    CHECK(lama::ste(Codebook{w2}, Dataset{x2, {}}, grid) ==
          lama::ste(Codebook{w}, Dataset{x, {}}, grid));
}

TEST_CASE("evaluate gathers all four indices") {
    lama::Rng rng(20);
    const NodeGrid grid(3, 3);
    const Codebook cb{random_matrix(rng, 9, 2)};
    const Dataset data{random_matrix(rng, 10, 2), {}};
    const LandmarkSet landmarks{random_matrix(rng, 2, 2), {0, 8}};

    const lama::ErrorReport with = lama::evaluate(cb, data, landmarks, grid);
    CHECK(with.qed == lama::qed(cb, data));
    CHECK(with.qel.value() == lama::qel(cb, landmarks));
    CHECK(with.te == lama::te(cb, data, grid));
    CHECK(with.ste == lama::ste(cb, data, grid));
    CHECK(with.ste <= with.te);

    const lama::ErrorReport bare = lama::evaluate(cb, data, LandmarkSet{}, grid);
    CHECK_FALSE(bare.qel.has_value());
}
