#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rsom/dissimilarity.hpp"
#include "rsom/evaluation.hpp"
#include "rsom/topology.hpp"

namespace rsom {

// 2D data points, prototype dots, and lattice edges between grid-adjacent
// prototypes. Throws DimensionNot2D for other dimensions. All emitters
// return deterministic SVG text (fixed formatting, no timestamps).
std::string grid_plot_svg(const PointCloud& points, const std::vector<double>& prototypes_2d,
                          const MapGrid& grid, const std::string& title = "");

// One panel per snapshot, laid out in two rows.
std::string grid_snapshots_svg(const PointCloud& points,
                               const std::vector<std::pair<int, std::vector<double>>>& snapshots,
                               const MapGrid& grid);

// Per-cell polygon whose vertex toward each neighbor moves linearly from the
// cell edge (distance 0) to the cell center (largest observed distance).
// Undefined neighbor pairs sit at the cell edge and are marked with a dashed
// stroke.
std::string polygon_distance_plot_svg(const NeighborDistanceMap& ndm);

// Per-cell stacked bars of the label distribution inside each unit.
std::string label_distribution_svg(const std::vector<int>& assignments,
                                   const std::vector<std::string>& labels,
                                   const MapGrid& grid);

// Number of lattice-edge pairs that intersect in data space, excluding pairs
// sharing a prototype. The organization proxy used by the experiments.
int count_lattice_crossings(const std::vector<double>& prototypes_2d, const MapGrid& grid);

// Exposed for the geometric unit tests.
bool segments_intersect(double ax, double ay, double bx, double by,
                        double cx, double cy, double dx, double dy);

} // namespace rsom
