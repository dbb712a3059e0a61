#pragma once

#include <utility>
#include <vector>

namespace rsom {

// Rectangular map of rows x cols units. Unit u sits at
// (u / cols, u % cols); grid distances are L1 on those coordinates.
struct MapGrid {
    int rows = 1;
    int cols = 1;

    int units() const { return rows * cols; }
    int row_of(int u) const { return u / cols; }
    int col_of(int u) const { return u % cols; }
    int unit_at(int r, int c) const { return r * cols + c; }

    int l1_distance(int u, int v) const {
        int dr = row_of(u) - row_of(v);
        int dc = col_of(u) - col_of(v);
        return (dr < 0 ? -dr : dr) + (dc < 0 ? -dc : dc);
    }

    // Radius that covers every pair; the largest L1 distance on the grid is
    // (rows-1)+(cols-1).
    int whole_grid_radius() const { return rows + cols; }
};

enum class KernelKind { Hard, Gaussian };

struct NeighborhoodKernel {
    KernelKind kind = KernelKind::Hard;
};

// Neighborhood weight between units u and v at the given radius.
// Hard: 1 when the grid distance is <= radius, else 0.
// Gaussian: exp(-d^2 / (2 max(radius, 0.5)^2)).
double kernel_value(const MapGrid& grid, const NeighborhoodKernel& kernel,
                    int u, int v, double radius);

// Annealing curves for one training run. alpha decays as
// alpha0 / (1 + 9 t / T) so that alpha(T) = alpha0 / 10; the radius is a
// staircase of `plateaus` equal-length plateaus falling linearly from the
// whole-grid radius to 0. Passing plateaus = 0 selects one plateau per
// integer radius level, a step-1 staircase. Both curves are precomputed so
// tests and experiments can also construct custom ones directly.
struct TrainingSchedule {
    int iterations = 0;   // T
    double alpha0 = 0.5;
    int plateaus = 1;
    std::vector<double> alphas;  // size T, entry t-1 is alpha(t)
    std::vector<double> radii;   // size T, entry t-1 is radius(t)

    static TrainingSchedule standard(const MapGrid& grid, int iterations,
                                     double alpha0 = 0.5, int plateaus = 0);

    // Per-epoch radius curve for the batch trainers. The staircase starts at
    // half the larger grid side instead of the whole grid: a whole-grid
    // epoch would set every coefficient row to the same kernel average and
    // the deterministic tie-break would then collapse the map into unit 0.
    static TrainingSchedule batch(const MapGrid& grid, int epochs, double alpha0 = 0.5);

    // (alpha, radius) at iteration t, 1-based. Throws IterationOutOfRange.
    std::pair<double, double> at(int t) const;
};

} // namespace rsom
