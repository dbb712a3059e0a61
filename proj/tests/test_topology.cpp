#include <doctest.h>

#include <cmath>
#include <set>

#include "rsom/error.hpp"
#include "rsom/topology.hpp"

using namespace rsom;

TEST_CASE("grid coordinates and L1 distances") {
    MapGrid grid{3, 4};
    CHECK(grid.units() == 12);
    CHECK(grid.row_of(7) == 1);
    CHECK(grid.col_of(7) == 3);
    CHECK(grid.unit_at(1, 3) == 7);
    CHECK(grid.l1_distance(0, 7) == 4);
    CHECK(grid.whole_grid_radius() == 7);
}

TEST_CASE("kernel at the unit itself is 1 for any radius") {
    MapGrid grid{10, 10};
    for (auto kind : {KernelKind::Hard, KernelKind::Gaussian}) {
        NeighborhoodKernel kernel{kind};
        CHECK(kernel_value(grid, kernel, 37, 37, 5.0) == 1.0);
        CHECK(kernel_value(grid, kernel, 37, 37, 0.0) == 1.0);
    }
}

TEST_CASE("hard kernel at radius 0 restricts to the unit itself") {
    MapGrid grid{10, 10};
    NeighborhoodKernel kernel{KernelKind::Hard};
    CHECK(kernel_value(grid, kernel, 0, 1, 0.0) == 0.0);
    CHECK(kernel_value(grid, kernel, 0, 10, 0.0) == 0.0);
}

TEST_CASE("hard kernel with whole-grid radius covers every pair") {
    MapGrid grid{10, 10};
    NeighborhoodKernel kernel{KernelKind::Hard};
    for (int u = 0; u < grid.units(); u += 13)
        for (int v = 0; v < grid.units(); v += 7)
            CHECK(kernel_value(grid, kernel, u, v, 20.0) == 1.0);
}

TEST_CASE("kernels are symmetric and bounded") {
    MapGrid grid{6, 9};
    for (auto kind : {KernelKind::Hard, KernelKind::Gaussian}) {
        NeighborhoodKernel kernel{kind};
        for (int u = 0; u < grid.units(); u += 5)
            for (int v = 0; v < grid.units(); v += 3)
                for (double radius : {0.0, 1.0, 4.0}) {
                    double kuv = kernel_value(grid, kernel, u, v, radius);
                    CHECK(kuv == kernel_value(grid, kernel, v, u, radius));
                    CHECK(kuv >= 0.0);
                    CHECK(kuv <= 1.0);
                }
    }
}

TEST_CASE("standard schedule endpoints") {
    MapGrid grid{10, 10};
    auto s = TrainingSchedule::standard(grid, 2500, 0.5, 5);
    auto [alpha1, radius1] = s.at(1);
    auto [alphaT, radiusT] = s.at(2500);
    CHECK(radius1 == 20.0);  // rows + cols covers any L1 distance
    CHECK(radiusT == 0.0);
    CHECK(alphaT == doctest::Approx(0.05).epsilon(1e-12));  // alpha0 / 10
    CHECK(alpha1 <= 0.5);
    CHECK(alpha1 > 0.0);
}

TEST_CASE("alpha decays strictly and the radius staircase is non-increasing") {
    MapGrid grid{4, 6};
    auto s = TrainingSchedule::standard(grid, 1000, 0.3, 5);
    for (int t = 2; t <= 1000; ++t) {
        CHECK(s.alphas[t - 1] < s.alphas[t - 2]);
        CHECK(s.radii[t - 1] <= s.radii[t - 2]);
    }
}

TEST_CASE("plateaus partition the iterations into equal segments") {
    MapGrid grid{5, 5};
    int T = 1003, plateaus = 5;
    auto s = TrainingSchedule::standard(grid, T, 0.5, plateaus);
    std::vector<int> lengths;
    double current = s.radii[0];
    int count = 0;
    for (int t = 1; t <= T; ++t) {
        if (s.radii[t - 1] == current) {
            ++count;
        } else {
            lengths.push_back(count);
            current = s.radii[t - 1];
            count = 1;
        }
    }
    lengths.push_back(count);
    CHECK(lengths.size() == static_cast<std::size_t>(plateaus));
    for (int len : lengths) CHECK(std::abs(len - T / plateaus) <= 1);

    // plateau radii fall linearly from the whole grid to zero
    CHECK(s.radii[0] == grid.whole_grid_radius());
    CHECK(s.radii[T - 1] == 0.0);
}

TEST_CASE("alpha times kernel stays within (0, 1]") {
    MapGrid grid{10, 10};
    NeighborhoodKernel kernel;
    auto s = TrainingSchedule::standard(grid, 500, 1.0, 5);
    for (int t = 1; t <= 500; ++t) {
        auto [alpha, radius] = s.at(t);
        double kv = kernel_value(grid, kernel, 0, 0, radius);
        CHECK(alpha * kv > 0.0);
        CHECK(alpha * kv <= 1.0);
    }
}

TEST_CASE("schedule_at rejects out-of-range iterations") {
    MapGrid grid{3, 3};
    auto s = TrainingSchedule::standard(grid, 10);
    try {
        s.at(0);
        FAIL("expected IterationOutOfRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IterationOutOfRange);
    }
    CHECK_THROWS_AS(s.at(11), Error);
}

TEST_CASE("batch schedule steps the radius down once per epoch, then refines at zero") {
    MapGrid grid{10, 10};
    auto s = TrainingSchedule::batch(grid, 20);
    CHECK(s.radii[0] == 5.0);  // half the larger grid side
    CHECK(s.radii[1] == 4.0);
    CHECK(s.radii[5] == 0.0);
    CHECK(s.radii[19] == 0.0);
    for (int e = 2; e <= 20; ++e) CHECK(s.radii[e - 1] <= s.radii[e - 2]);

    // never starts at the whole grid: that would equalize all rows exactly
    CHECK(s.radii[0] < (grid.rows - 1) + (grid.cols - 1));
}

TEST_CASE("schedule factory validates its arguments") {
    MapGrid grid{3, 3};
    CHECK_THROWS_AS(TrainingSchedule::standard(grid, 10, 1.5), Error);
    CHECK_THROWS_AS(TrainingSchedule::standard(grid, 10, 0.0), Error);
    CHECK_THROWS_AS(TrainingSchedule::standard(grid, 10, 0.5, -1), Error);
    CHECK_THROWS_AS(TrainingSchedule::standard(grid, -1), Error);
}

TEST_CASE("plateaus 0 selects a step-1 radius staircase") {
    MapGrid grid{4, 4};  // whole-grid radius 8
    auto s = TrainingSchedule::standard(grid, 900, 0.5, 0);
    CHECK(s.plateaus == 9);
    std::set<double> levels(s.radii.begin(), s.radii.end());
    CHECK(levels.size() == 9);
    CHECK(*levels.begin() == 0.0);
    CHECK(*levels.rbegin() == 8.0);
}
