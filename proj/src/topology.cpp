#include "rsom/topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsom/error.hpp"

namespace rsom {

double kernel_value(const MapGrid& grid, const NeighborhoodKernel& kernel,
                    int u, int v, double radius) {
    int d = grid.l1_distance(u, v);
    if (kernel.kind == KernelKind::Hard)
        return d <= radius ? 1.0 : 0.0;
    double r = std::max(radius, 0.5);
    return std::exp(-(static_cast<double>(d) * d) / (2.0 * r * r));
}

namespace {

TrainingSchedule staircase(int iterations, double alpha0, int plateaus, int start_radius) {
    if (iterations < 0)
        throw Error(ErrorKind::InvalidArgument, "iteration count must be >= 0");
    if (alpha0 <= 0.0 || alpha0 > 1.0)
        throw Error(ErrorKind::InvalidArgument,
                    "alpha0 must lie in (0, 1] to keep updates on the simplex");
    if (plateaus < 1)
        throw Error(ErrorKind::InvalidArgument, "need at least one plateau");
    if (iterations > 0) plateaus = std::min(plateaus, iterations);

    TrainingSchedule s;
    s.iterations = iterations;
    s.alpha0 = alpha0;
    s.plateaus = plateaus;
    s.alphas.resize(iterations);
    s.radii.resize(iterations);
    for (int t = 1; t <= iterations; ++t) {
        // alpha(T) = alpha0 / 10.
        s.alphas[t - 1] = alpha0 / (1.0 + 9.0 * static_cast<double>(t) / iterations);
        int plateau = static_cast<int>((static_cast<long>(t) - 1) * plateaus / iterations);
        double radius = plateaus == 1
                            ? 0.0
                            : std::round(static_cast<double>(start_radius) *
                                         (plateaus - 1 - plateau) / (plateaus - 1));
        s.radii[t - 1] = radius;
    }
    return s;
}

} // namespace

TrainingSchedule TrainingSchedule::standard(const MapGrid& grid, int iterations,
                                            double alpha0, int plateaus) {
    if (plateaus == 0) plateaus = grid.whole_grid_radius() + 1;  // step-1 staircase
    return staircase(iterations, alpha0, plateaus, grid.whole_grid_radius());
}

TrainingSchedule TrainingSchedule::batch(const MapGrid& grid, int epochs, double alpha0) {
    if (epochs < 0)
        throw Error(ErrorKind::InvalidArgument, "epoch count must be >= 0");
    if (alpha0 <= 0.0 || alpha0 > 1.0)
        throw Error(ErrorKind::InvalidArgument, "alpha0 must lie in (0, 1]");
    int start = std::max(1, (std::max(grid.rows, grid.cols) + 1) / 2);
    TrainingSchedule s;
    s.iterations = epochs;
    s.alpha0 = alpha0;
    s.plateaus = start + 1;
    s.alphas.resize(epochs);
    s.radii.resize(epochs);
    for (int e = 1; e <= epochs; ++e) {
        s.alphas[e - 1] = alpha0 / (1.0 + 9.0 * static_cast<double>(e) / epochs);
        // one radius level per epoch, then refinement at radius 0
        s.radii[e - 1] = std::max(0, start - (e - 1));
    }
    return s;
}

std::pair<double, double> TrainingSchedule::at(int t) const {
    if (t < 1 || t > iterations)
        throw Error(ErrorKind::IterationOutOfRange,
                    "t = " + std::to_string(t) + " outside [1, " +
                        std::to_string(iterations) + "]");
    return {alphas[t - 1], radii[t - 1]};
}

} // namespace rsom
