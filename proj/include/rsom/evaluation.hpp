#pragma once

#include <string>
#include <vector>

#include "rsom/dissimilarity.hpp"
#include "rsom/som.hpp"
#include "rsom/topology.hpp"

namespace rsom {

struct MapReport {
    int n = 0;
    int units = 0;
    // Mean (implicit) distance from each observation to its assigned
    // prototype.
    double quantization_error = 0.0;
    // Fraction of observations whose best and second-best units are not
    // grid-adjacent (L1 distance 1).
    double topographic_error = 0.0;
    std::vector<int> cluster_sizes;  // per unit, sums to n
    int empty_unit_count = 0;

    bool has_labels = false;
    double purity = 0.0;                           // size-weighted mean over non-empty units
    std::vector<double> unit_purity;               // -1 for empty units
    std::vector<std::string> unit_majority_label;  // "" for empty units
};

// Mean dissimilarity between the member sets of grid-adjacent units.
// Pairs where either cluster is empty are flagged undefined.
struct NeighborDistanceMap {
    MapGrid grid;
    struct Entry {
        int u = 0;
        int v = 0;  // u < v, L1 grid distance 1
        double mean_dissimilarity = 0.0;
        bool defined = false;
    };
    std::vector<Entry> entries;  // ordered by (u, v)

    const Entry* find(int u, int v) const;
};

MapReport map_report(const DissimilarityMatrix& D, const TrainedMap& map,
                     const std::vector<std::string>* labels = nullptr);

// Coordinate-space variant for Euclidean-online maps, which carry explicit
// prototypes instead of coefficient rows.
MapReport map_report(const PointCloud& points, const TrainedMap& map,
                     const std::vector<std::string>* labels = nullptr);

NeighborDistanceMap neighbor_cell_distances(const DissimilarityMatrix& D,
                                            const TrainedMap& map);

// Variant-dispatching wrappers over the som.hpp best_two_units overloads.
std::vector<BestPair> best_two_units(const DissimilarityMatrix& D, const TrainedMap& map);
std::vector<BestPair> best_two_units(const PointCloud& points, const TrainedMap& map);

} // namespace rsom
