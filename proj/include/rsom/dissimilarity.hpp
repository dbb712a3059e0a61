#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rsom {

// Validated n x n dissimilarity matrix: non-negative, bit-exactly symmetric,
// zero diagonal, all entries finite. Construct through validate() or one of
// the builders below; those guarantee the invariants.
struct DissimilarityMatrix {
    int n = 0;
    std::vector<double> values;       // row-major n*n
    std::vector<std::string> labels;  // optional, size n when present

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
    const double* row(int i) const { return values.data() + static_cast<std::size_t>(i) * n; }
};

struct PointCloud {
    int n = 0;
    int dim = 0;
    std::vector<double> coords;  // row-major n*dim

    double at(int i, int d) const { return coords[static_cast<std::size_t>(i) * dim + d]; }
    const double* point(int i) const { return coords.data() + static_cast<std::size_t>(i) * dim; }
};

// Undirected, unweighted simple graph. Edges are stored once with u < v.
struct SimpleGraph {
    int num_nodes = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels;  // optional
};

// Aligned DNA sequences over {a,c,g,t}; any other symbol is kept as '-'
// (gap/unknown) and excluded from pairwise site counts.
struct DnaSequenceSet {
    std::vector<std::string> ids;
    std::vector<std::string> sequences;  // all of identical length

    int size() const { return static_cast<int>(sequences.size()); }
    int length() const { return sequences.empty() ? 0 : static_cast<int>(sequences[0].size()); }
};

// Checks a raw square array and returns the validated matrix. Asymmetries
// within 1e-9 relative are averaged away; diagonal entries with magnitude
// <= 1e-12 are forced to exact zero. Anything worse throws.
DissimilarityMatrix validate(std::vector<double> raw, int n,
                             std::vector<std::string> labels = {});

// Builds a simple graph, rejecting self-loops, duplicate edges and
// out-of-range endpoints.
SimpleGraph make_graph(int num_nodes, std::vector<std::pair<int, int>> edges,
                       std::vector<std::string> labels = {});

// Normalizes sequences to lowercase, maps unknown symbols to '-', and
// enforces equal lengths.
DnaSequenceSet make_sequence_set(std::vector<std::string> ids,
                                 std::vector<std::string> sequences);

// delta_ij = squared Euclidean distance between points i and j.
DissimilarityMatrix squared_euclidean(const PointCloud& points);

// K-rule neighbor graph (edge when either endpoint ranks the other among its
// k nearest, ties by lower index), plain Euclidean edge weights, then
// all-pairs shortest paths. Throws DisconnectedNeighborGraph with component
// sizes when the graph does not connect.
DissimilarityMatrix geodesic_dissimilarity(const PointCloud& points, int k,
                                           int num_threads = 1);

// Hop-count shortest paths on an unweighted graph.
DissimilarityMatrix graph_shortest_path_dissimilarity(const SimpleGraph& g);

// Kimura two-parameter distance on aligned sequences:
//   d = -1/2 ln((1 - 2P - 2Q) * sqrt(1 - 2Q))
// with P/Q the transition/transversion proportions over comparable sites.
DissimilarityMatrix kimura2p_dissimilarity(const DnaSequenceSet& seqs);

} // namespace rsom
