#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lama/grid.hpp"

using lama::NodeGrid;

TEST_CASE("node locations follow row-major layout") {
    const NodeGrid grid(4, 4);
    CHECK(grid.location(0) == std::array<double, 2>{0.0, 0.0});
    CHECK(grid.location(15) == std::array<double, 2>{3.0, 3.0});
    CHECK(grid.location(5) == std::array<double, 2>{1.0, 1.0});
    CHECK(lama::node_location(15, grid) == std::array<double, 2>{3.0, 3.0});

    const NodeGrid zoo(25, 25);
    CHECK(zoo.location(312) == std::array<double, 2>{12.0, 12.0});
    CHECK(zoo.location(24) == std::array<double, 2>{24.0, 0.0});
    CHECK(zoo.location(600) == std::array<double, 2>{0.0, 24.0});
}

TEST_CASE("locations are distinct and unit-spaced along each axis") {
    const NodeGrid grid(5, 3);
    std::set<std::pair<double, double>> seen;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto loc = grid.location(k);
        seen.insert({loc[0], loc[1]});
        if (k % 5 != 4) {
            CHECK(grid.location(k + 1)[0] - loc[0] == 1.0);
            CHECK(grid.location(k + 1)[1] == loc[1]);
        }
        if (k + 5 < grid.size()) CHECK(grid.location(k + 5)[1] - loc[1] == 1.0);
    }
    CHECK(seen.size() == grid.size());
}

TEST_CASE("node distances match coordinate arithmetic") {
    const NodeGrid grid(4, 4);
    CHECK(grid.squared_node_distance(0, 15) == 18.0);  // (3,3) away
    CHECK(grid.squared_node_distance(0, 1) == 1.0);
    CHECK(grid.squared_node_distance(0, 5) == 2.0);  // diagonal
    CHECK(grid.node_distance(0, 5) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(grid.squared_node_distance(7, 7) == 0.0);
    CHECK(grid.squared_node_distance(2, 9) == grid.squared_node_distance(9, 2));

    CHECK(grid.chebyshev_distance(0, 15) == 3);
    CHECK(grid.chebyshev_distance(0, 1) == 1);
    CHECK(grid.chebyshev_distance(3, 12) == 3);
    CHECK(grid.chebyshev_distance(6, 6) == 0);
}

TEST_CASE("grid construction and index errors") {
    CHECK_THROWS_AS(NodeGrid(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(NodeGrid(3, 0), std::invalid_argument);
    const NodeGrid grid(3, 2);
    CHECK(grid.size() == 6);
    CHECK_THROWS_AS(grid.location(6), std::out_of_range);
    CHECK_THROWS_AS(grid.squared_node_distance(0, 6), std::out_of_range);
}
