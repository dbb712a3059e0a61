#include "rsom/evaluation.hpp"

#include <algorithm>
#include <map>

#include "rsom/error.hpp"

namespace rsom {

namespace {

MapReport build_report(const std::vector<BestPair>& pairs, const MapGrid& grid,
                       const std::vector<std::string>* labels) {
    int n = static_cast<int>(pairs.size());
    int units = grid.units();

    MapReport report;
    report.n = n;
    report.units = units;

    double qe = 0.0;
    int errors = 0;
    report.cluster_sizes.assign(units, 0);
    for (const auto& p : pairs) {
        qe += p.best_distance;
        if (grid.l1_distance(p.best, p.second) != 1) ++errors;
        ++report.cluster_sizes[p.best];
    }
    report.quantization_error = n > 0 ? qe / n : 0.0;
    report.topographic_error = (units > 1 && n > 0) ? static_cast<double>(errors) / n : 0.0;
    report.empty_unit_count =
        static_cast<int>(std::count(report.cluster_sizes.begin(), report.cluster_sizes.end(), 0));

    if (labels != nullptr) {
        if (labels->size() != static_cast<std::size_t>(n))
            throw Error(ErrorKind::DimensionMismatch, "label count does not match observations");
        report.has_labels = true;
        report.unit_purity.assign(units, -1.0);
        report.unit_majority_label.assign(units, "");
        double weighted = 0.0;
        for (int u = 0; u < units; ++u) {
            if (report.cluster_sizes[u] == 0) continue;
            std::map<std::string, int> counts;
            for (int i = 0; i < n; ++i)
                if (pairs[i].best == u) ++counts[(*labels)[i]];
            int best_count = 0;
            std::string best_label;
            for (const auto& [label, count] : counts) {
                if (count > best_count) {
                    best_count = count;
                    best_label = label;
                }
            }
            double purity = static_cast<double>(best_count) / report.cluster_sizes[u];
            report.unit_purity[u] = purity;
            report.unit_majority_label[u] = best_label;
            weighted += purity * report.cluster_sizes[u];
        }
        report.purity = n > 0 ? weighted / n : 0.0;
    }
    return report;
}

} // namespace

const NeighborDistanceMap::Entry* NeighborDistanceMap::find(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (const auto& e : entries)
        if (e.u == u && e.v == v) return &e;
    return nullptr;
}

std::vector<BestPair> best_two_units(const DissimilarityMatrix& D, const TrainedMap& map) {
    switch (map.variant) {
        case MapVariant::OnlineRelational:
        case MapVariant::BatchRelational:
            return best_two_units(D, map.coefficients);
        case MapVariant::BatchMedian:
            return best_two_units(D, map.medoids);
        case MapVariant::EuclideanOnline:
            throw Error(ErrorKind::InvalidArgument,
                        "Euclidean maps are evaluated against their point cloud");
    }
    throw Error(ErrorKind::InvalidArgument, "unknown variant");
}

std::vector<BestPair> best_two_units(const PointCloud& points, const TrainedMap& map) {
    if (map.variant != MapVariant::EuclideanOnline)
        throw Error(ErrorKind::InvalidArgument,
                    "coordinate-space evaluation needs a euclidean-online map");
    return best_two_units(points, map.prototypes, map.grid.units());
}

MapReport map_report(const DissimilarityMatrix& D, const TrainedMap& map,
                     const std::vector<std::string>* labels) {
    return build_report(best_two_units(D, map), map.grid, labels);
}

MapReport map_report(const PointCloud& points, const TrainedMap& map,
                     const std::vector<std::string>* labels) {
    return build_report(best_two_units(points, map), map.grid, labels);
}

NeighborDistanceMap neighbor_cell_distances(const DissimilarityMatrix& D,
                                            const TrainedMap& map) {
    const MapGrid& grid = map.grid;
    if (static_cast<int>(map.assignments.size()) != D.n)
        throw Error(ErrorKind::DimensionMismatch, "assignments do not match matrix order");

    std::vector<std::vector<int>> members(grid.units());
    for (int i = 0; i < D.n; ++i) members[map.assignments[i]].push_back(i);

    NeighborDistanceMap ndm;
    ndm.grid = grid;
    for (int u = 0; u < grid.units(); ++u) {
        int r = grid.row_of(u), c = grid.col_of(u);
        // right and down neighbors enumerate each adjacent pair once
        int candidates[2] = {c + 1 < grid.cols ? grid.unit_at(r, c + 1) : -1,
                             r + 1 < grid.rows ? grid.unit_at(r + 1, c) : -1};
        for (int v : candidates) {
            if (v < 0) continue;
            NeighborDistanceMap::Entry entry;
            entry.u = u;
            entry.v = v;
            if (!members[u].empty() && !members[v].empty()) {
                double sum = 0.0;
                for (int i : members[u])
                    for (int j : members[v]) sum += D.at(i, j);
                entry.mean_dissimilarity =
                    sum / (static_cast<double>(members[u].size()) * members[v].size());
                entry.defined = true;
            }
            ndm.entries.push_back(entry);
        }
    }
    return ndm;
}

} // namespace rsom
