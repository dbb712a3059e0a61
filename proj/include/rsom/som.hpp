#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rsom/dissimilarity.hpp"
#include "rsom/rng.hpp"
#include "rsom/topology.hpp"

namespace rsom {

// Row-stochastic U x n matrix; row u holds prototype u's convex-combination
// weights over the observations.
struct PrototypeCoefficients {
    int units = 0;
    int n = 0;
    std::vector<double> data;  // row-major units*n

    double* row(int u) { return data.data() + static_cast<std::size_t>(u) * n; }
    const double* row(int u) const { return data.data() + static_cast<std::size_t>(u) * n; }
    std::span<const double> row_span(int u) const { return {row(u), static_cast<std::size_t>(n)}; }
};

enum class InitMode { OneHotSample, RandomConvex };

// one-hot-sample: U observation indices drawn uniformly (without replacement
// while U <= n) and turned into indicator rows. random-convex: iid uniform
// entries normalized to sum 1. Consumes a fixed number of draws per mode so
// different trainers can share an Rng stream.
PrototypeCoefficients init_coefficients(int n, int units, InitMode mode, Rng& rng);
PrototypeCoefficients init_coefficients(int n, int units, InitMode mode, std::uint64_t seed);

// ||x_i - p_u||^2 written in terms of D and the coefficient row:
// (D beta)_i - 1/2 beta^T D beta. May be negative for non-Euclidean D;
// only comparisons are meaningful there.
double implicit_distance(const DissimilarityMatrix& D, std::span<const double> beta, int i);

enum class MapVariant { OnlineRelational, BatchRelational, EuclideanOnline, BatchMedian };

const char* variant_name(MapVariant v);
MapVariant variant_from_name(const std::string& name);

struct HistoryPoint {
    int iteration = 0;
    double quantization_error = 0.0;
};

struct Snapshot {
    int iteration = 0;
    // Coefficient rows (relational), prototype rows (Euclidean) or medoid
    // indices cast to double (median), depending on the variant.
    std::vector<double> state;
};

struct TrainedMap {
    MapVariant variant = MapVariant::OnlineRelational;
    MapGrid grid;
    std::uint64_t seed = 0;
    int iterations = 0;  // T for online runs, epochs performed for batch runs
    double alpha0 = 0.0;
    int plateaus = 0;

    PrototypeCoefficients coefficients;  // relational variants
    std::vector<double> prototypes;      // Euclidean: units x prototype_dim
    int prototype_dim = 0;
    std::vector<int> medoids;            // median: unit -> observation index

    std::vector<int> assignments;        // recomputed with the final state
    std::vector<HistoryPoint> history;
    std::vector<Snapshot> snapshots;

    // Online variants: per-iteration sampled observation and winning unit.
    std::vector<int> sampled_trace;
    std::vector<int> winner_trace;

    // How often the implicit distance came out negative during assignment
    // scans; possible for non-Euclidean dissimilarities, where only the
    // ordering is meaningful.
    long negative_distance_count = 0;
    long distance_evaluations = 0;
};

struct TrainOptions {
    InitMode init = InitMode::RandomConvex;
    // Iteration/epoch indices at which to record a state snapshot (0 = the
    // initial state). Empty means no snapshots.
    std::vector<int> snapshot_iterations;
    // Quantization-error checkpoints. Empty selects a default: six evenly
    // spaced checkpoints for online runs, every epoch for batch runs.
    std::vector<int> history_iterations;
    bool record_trace = true;
    // Verify the simplex invariant on every updated row after each step.
    bool check_simplex = false;
    // Worker threads for the per-observation argmin in batch epochs. Results
    // are bit-identical to the sequential order for any value.
    int batch_threads = 1;
    // Draw observations from a reshuffled pass over the data instead of
    // uniformly with replacement.
    bool epoch_shuffle = false;
    // When set, receives the wall time of each iteration (online) or epoch
    // (batch), bookkeeping excluded. Used by the benchmark harness.
    std::vector<double>* step_seconds = nullptr;
};

// Algorithm: repeat T times, draw one observation, assign it to the unit
// with minimal implicit distance (ties to the lowest index), then pull every
// row within the neighborhood toward the drawn indicator vector by
// alpha^t K^t. Per-unit quadratic terms are cached and recomputed in O(n^2)
// for rows touched by the update.
TrainedMap train_online_relational(const DissimilarityMatrix& D, const MapGrid& grid,
                                   const NeighborhoodKernel& kernel,
                                   const TrainingSchedule& schedule,
                                   const TrainOptions& options, std::uint64_t seed);

// Classical online SOM in coordinate space. Prototypes start at
// sum_i beta0_ui x_i from the same coefficient draw as the relational
// trainer, and the observation sampling order matches seed for seed.
TrainedMap train_online_euclidean(const PointCloud& points, const MapGrid& grid,
                                  const NeighborhoodKernel& kernel,
                                  const TrainingSchedule& schedule,
                                  const TrainOptions& options, std::uint64_t seed);

// Batch relational SOM: assign everything, then set each row to the
// kernel-weighted indicator of its neighborhood's members,
// beta_ui = K(f(x_i),u) / sum_j K(f(x_j),u). Rows with zero kernel mass are
// left unchanged for that epoch. Stops early when assignments repeat.
TrainedMap train_batch_relational(const DissimilarityMatrix& D, const MapGrid& grid,
                                  const NeighborhoodKernel& kernel,
                                  const TrainingSchedule& schedule,
                                  const TrainOptions& options, std::uint64_t seed);

// Batch median SOM: prototypes are observation indices; each epoch assigns
// by delta(i, m_u) and moves each medoid to the dataset element minimizing
// the kernel-weighted sum of dissimilarities.
TrainedMap train_batch_median(const DissimilarityMatrix& D, const MapGrid& grid,
                              const NeighborhoodKernel& kernel,
                              const TrainingSchedule& schedule,
                              const TrainOptions& options, std::uint64_t seed);

// Per-observation argmin with lowest-index tie-break.
std::vector<int> assign_all(const DissimilarityMatrix& D, const PrototypeCoefficients& beta);
std::vector<int> assign_all(const DissimilarityMatrix& D, const std::vector<int>& medoids);
std::vector<int> assign_all(const PointCloud& points, const std::vector<double>& prototypes,
                            int units);

// Best and second-best unit per observation (same tie-break), plus the best
// distance; shared by assignment, quantization error and map evaluation.
struct BestPair {
    int best = 0;
    int second = 0;
    double best_distance = 0.0;
};
std::vector<BestPair> best_two_units(const DissimilarityMatrix& D,
                                     const PrototypeCoefficients& beta);
std::vector<BestPair> best_two_units(const DissimilarityMatrix& D,
                                     const std::vector<int>& medoids);
std::vector<BestPair> best_two_units(const PointCloud& points,
                                     const std::vector<double>& prototypes, int units);

// Prototype positions in data space, for plotting and the Euclidean oracle:
// relational rows map through p_u = sum_i beta_ui x_i, medoids to their
// observation's coordinates, Euclidean prototypes pass through.
std::vector<double> prototype_positions(const TrainedMap& map, const PointCloud& points);

} // namespace rsom
