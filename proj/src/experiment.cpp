#include "rsom/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "rsom/error.hpp"
#include "rsom/generators.hpp"
#include "rsom/io.hpp"
#include "rsom/svg_plots.hpp"

namespace rsom {

namespace {

int worker_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 4u));
}

std::vector<double> snapshot_positions(const TrainedMap& map, const Snapshot& snapshot,
                                       const PointCloud& points) {
    int units = map.grid.units();
    std::vector<double> out(static_cast<std::size_t>(units) * 2, 0.0);
    switch (map.variant) {
        case MapVariant::OnlineRelational:
        case MapVariant::BatchRelational:
            for (int u = 0; u < units; ++u) {
                const double* row = snapshot.state.data() + static_cast<std::size_t>(u) * points.n;
                for (int i = 0; i < points.n; ++i) {
                    out[2 * u] += row[i] * points.at(i, 0);
                    out[2 * u + 1] += row[i] * points.at(i, 1);
                }
            }
            break;
        case MapVariant::EuclideanOnline:
            out = snapshot.state;
            break;
        case MapVariant::BatchMedian:
            for (int u = 0; u < units; ++u) {
                int m = static_cast<int>(snapshot.state[u]);
                out[2 * u] = points.at(m, 0);
                out[2 * u + 1] = points.at(m, 1);
            }
            break;
    }
    return out;
}

} // namespace

std::vector<int> default_snapshot_iterations(MapVariant variant, int iterations) {
    bool batch = variant == MapVariant::BatchRelational || variant == MapVariant::BatchMedian;
    if (batch && iterations == 20) return {0, 5, 9, 13, 17, 20};
    std::vector<int> out;
    for (int k = 0; k <= 5; ++k)
        out.push_back(static_cast<int>(std::lround(static_cast<double>(iterations) * k / 5)));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.out_dir.empty())
        throw Error(ErrorKind::InvalidArgument, "experiment needs an output directory");

    // Input acquisition.
    PointCloud points;
    bool have_points = false;
    DissimilarityMatrix D;
    bool have_matrix = false;
    std::vector<std::string> labels;

    switch (config.source) {
        case InputSource::PointsCsv:
            points = load_points_csv(config.input_path, config.csv_header);
            have_points = true;
            break;
        case InputSource::MatrixCsv:
            D = load_matrix_csv(config.input_path);
            have_matrix = true;
            break;
        case InputSource::EdgeList: {
            SimpleGraph g = load_edge_list(config.input_path, config.one_based);
            if (config.dissim != DissimMethod::None && config.dissim != DissimMethod::ShortestPath)
                throw Error(ErrorKind::InvalidArgument,
                            "edge-list input pairs with the shortest-path dissimilarity");
            D = graph_shortest_path_dissimilarity(g);
            have_matrix = true;
            break;
        }
        case InputSource::Fasta: {
            DnaSequenceSet seqs = load_fasta(config.input_path);
            if (config.dissim != DissimMethod::None && config.dissim != DissimMethod::Kimura2P)
                throw Error(ErrorKind::InvalidArgument,
                            "FASTA input pairs with the Kimura-2P dissimilarity");
            D = kimura2p_dissimilarity(seqs);
            have_matrix = true;
            break;
        }
        case InputSource::GeneratorUniformSquare:
            points = generate_uniform_square(config.generator_n, config.generator_seed);
            have_points = true;
            break;
        case InputSource::GeneratorSwissRoll:
            points = generate_swiss_roll(config.generator_n, config.generator_seed);
            have_points = true;
            // The roll carries its own natural labels.
            labels = quartile_labels(swiss_roll_parameter(points));
            break;
    }

    if (have_points && config.variant != MapVariant::EuclideanOnline) {
        DissimMethod method =
            config.dissim == DissimMethod::None ? DissimMethod::SquaredEuclidean : config.dissim;
        switch (method) {
            case DissimMethod::SquaredEuclidean:
                D = squared_euclidean(points);
                break;
            case DissimMethod::Geodesic:
                D = geodesic_dissimilarity(points, config.geodesic_k, worker_threads());
                break;
            case DissimMethod::GeodesicSquared:
                D = geodesic_dissimilarity(points, config.geodesic_k, worker_threads());
                for (auto& v : D.values) v = v * v;
                break;
            default:
                throw Error(ErrorKind::InvalidArgument,
                            "point input pairs with squared-euclidean, geodesic or "
                            "geodesic-squared");
        }
        have_matrix = true;
    }
    if (config.variant == MapVariant::EuclideanOnline && !have_points)
        throw Error(ErrorKind::InvalidArgument,
                    "the euclidean-online variant needs point or generator input");

    int n = have_matrix ? D.n : points.n;
    if (!config.labels_path.empty())
        labels = load_labels_csv(config.labels_path, n, config.one_based);
    else if (labels.empty() && have_matrix && !D.labels.empty())
        labels = D.labels;

    // Training.
    MapGrid grid{config.grid_rows, config.grid_cols};
    NeighborhoodKernel kernel{config.kernel};
    bool batch_variant = config.variant == MapVariant::BatchRelational ||
                         config.variant == MapVariant::BatchMedian;
    TrainingSchedule schedule =
        batch_variant
            ? TrainingSchedule::batch(grid, config.iterations, config.alpha0)
            : TrainingSchedule::standard(grid, config.iterations, config.alpha0, config.plateaus);
    TrainOptions options;
    options.init = config.init;
    options.snapshot_iterations = config.snapshot_iterations.empty()
                                      ? default_snapshot_iterations(config.variant, config.iterations)
                                      : config.snapshot_iterations;
    options.batch_threads = worker_threads();
    options.epoch_shuffle = config.epoch_shuffle;

    ExperimentResult result;
    switch (config.variant) {
        case MapVariant::OnlineRelational:
            result.map = train_online_relational(D, grid, kernel, schedule, options, config.seed);
            break;
        case MapVariant::BatchRelational:
            result.map = train_batch_relational(D, grid, kernel, schedule, options, config.seed);
            break;
        case MapVariant::BatchMedian:
            result.map = train_batch_median(D, grid, kernel, schedule, options, config.seed);
            break;
        case MapVariant::EuclideanOnline:
            result.map =
                train_online_euclidean(points, grid, kernel, schedule, options, config.seed);
            break;
    }

    // Evaluation. Euclidean runs are scored in coordinate space but still get
    // a dissimilarity matrix for the neighbor-distance plot.
    const std::vector<std::string>* label_ptr = labels.empty() ? nullptr : &labels;
    if (config.variant == MapVariant::EuclideanOnline) {
        result.report = map_report(points, result.map, label_ptr);
        if (!have_matrix) {
            D = squared_euclidean(points);
            have_matrix = true;
        }
    } else {
        result.report = map_report(D, result.map, label_ptr);
    }
    result.neighbor_distances = neighbor_cell_distances(D, result.map);

    // Artifacts.
    write_trained_map(config.out_dir, result.map);
    result.written_files = {config.out_dir / "assignments.csv", config.out_dir / "history.csv",
                            config.out_dir / "meta.json"};
    write_report(config.out_dir, result.report, grid);
    result.written_files.push_back(config.out_dir / "report.txt");
    result.written_files.push_back(config.out_dir / "report_units.csv");
    write_neighbor_distances(config.out_dir / "neighbor_distances.csv",
                             result.neighbor_distances);
    result.written_files.push_back(config.out_dir / "neighbor_distances.csv");

    write_text_file(config.out_dir / "polygons.svg",
                    polygon_distance_plot_svg(result.neighbor_distances));
    result.written_files.push_back(config.out_dir / "polygons.svg");

    if (have_points && points.dim == 2) {
        std::vector<std::pair<int, std::vector<double>>> frames;
        for (const auto& snapshot : result.map.snapshots)
            frames.push_back({snapshot.iteration, snapshot_positions(result.map, snapshot, points)});
        if (!frames.empty()) {
            write_text_file(config.out_dir / "grid_snapshots.svg",
                            grid_snapshots_svg(points, frames, grid));
            result.written_files.push_back(config.out_dir / "grid_snapshots.svg");
        }
        write_text_file(config.out_dir / "grid_plot.svg",
                        grid_plot_svg(points, prototype_positions(result.map, points), grid));
        result.written_files.push_back(config.out_dir / "grid_plot.svg");
    }
    if (label_ptr != nullptr) {
        write_text_file(config.out_dir / "labels_grid.svg",
                        label_distribution_svg(result.map.assignments, labels, grid));
        result.written_files.push_back(config.out_dir / "labels_grid.svg");
    }
    return result;
}

} // namespace rsom
