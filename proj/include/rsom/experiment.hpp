#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rsom/evaluation.hpp"
#include "rsom/som.hpp"

namespace rsom {

enum class InputSource {
    PointsCsv,
    MatrixCsv,
    EdgeList,
    Fasta,
    GeneratorUniformSquare,
    GeneratorSwissRoll,
};

enum class DissimMethod {
    None,
    SquaredEuclidean,
    Geodesic,
    GeodesicSquared,  // squared shortest-path lengths: the relational analogue
                      // of the squared-Euclidean convention on the manifold
    ShortestPath,
    Kimura2P,
};

// One experiment end to end: ingest or generate data, build the
// dissimilarity, train, evaluate, and write every artifact into out_dir.
struct ExperimentConfig {
    InputSource source = InputSource::GeneratorUniformSquare;
    std::filesystem::path input_path;  // for file-backed sources
    bool csv_header = false;
    bool one_based = false;
    std::filesystem::path labels_path;  // optional
    int generator_n = 500;
    std::uint64_t generator_seed = 1;

    DissimMethod dissim = DissimMethod::None;
    int geodesic_k = 10;

    MapVariant variant = MapVariant::OnlineRelational;
    int grid_rows = 10;
    int grid_cols = 10;
    KernelKind kernel = KernelKind::Hard;
    int iterations = 2500;  // online iterations or batch epochs
    double alpha0 = 0.5;
    int plateaus = 0;  // 0 = one plateau per radius level
    InitMode init = InitMode::RandomConvex;
    std::uint64_t seed = 1;
    std::vector<int> snapshot_iterations;  // empty selects the defaults
    bool epoch_shuffle = false;

    std::filesystem::path out_dir;
};

struct ExperimentResult {
    TrainedMap map;
    MapReport report;
    NeighborDistanceMap neighbor_distances;
    std::vector<std::filesystem::path> written_files;
};

// Default snapshot checkpoints: six panels from 0 to T. A 20-epoch batch run
// uses the canonical {0, 5, 9, 13, 17, 20} sequence.
std::vector<int> default_snapshot_iterations(MapVariant variant, int iterations);

ExperimentResult run_experiment(const ExperimentConfig& config);

} // namespace rsom
