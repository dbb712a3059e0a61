// Command-line driver: dissimilarity builders, the four SOM trainers,
// evaluation, SVG plots, and the scaling benchmark.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsom/bench.hpp"
#include "rsom/error.hpp"
#include "rsom/experiment.hpp"
#include "rsom/generators.hpp"
#include "rsom/io.hpp"
#include "rsom/svg_plots.hpp"

namespace {

using namespace rsom;

InitMode init_from_name(const std::string& name) {
    if (name == "one-hot-sample") return InitMode::OneHotSample;
    if (name == "random-convex") return InitMode::RandomConvex;
    throw Error(ErrorKind::InvalidArgument, "unknown init mode '" + name + "'");
}

KernelKind kernel_from_name(const std::string& name) {
    if (name == "hard") return KernelKind::Hard;
    if (name == "gaussian") return KernelKind::Gaussian;
    throw Error(ErrorKind::InvalidArgument, "unknown kernel '" + name + "'");
}

DissimMethod dissim_from_name(const std::string& name) {
    if (name.empty()) return DissimMethod::None;
    if (name == "squared-euclidean") return DissimMethod::SquaredEuclidean;
    if (name == "geodesic") return DissimMethod::Geodesic;
    if (name == "geodesic-squared") return DissimMethod::GeodesicSquared;
    if (name == "shortest-path") return DissimMethod::ShortestPath;
    if (name == "kimura2p") return DissimMethod::Kimura2P;
    throw Error(ErrorKind::InvalidArgument, "unknown dissimilarity method '" + name + "'");
}

struct CommonInput {
    std::string points, matrix, edge_list, fasta, generator;
    bool header = false;
    bool one_based = false;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--points", points, "point cloud CSV, one row per point");
        cmd->add_option("--matrix", matrix, "dissimilarity matrix CSV");
        cmd->add_option("--edge-list", edge_list, "graph edge list, one 'src dst' per line");
        cmd->add_option("--fasta", fasta, "aligned sequences in FASTA format");
        cmd->add_option("--generator", generator,
                        "synthetic input: uniform-square or swiss-roll");
        cmd->add_flag("--header", header, "skip one header line in point CSVs");
        cmd->add_flag("--one-based", one_based, "edge lists and label files use 1-based ids");
    }

    int sources_given() const {
        return !points.empty() + !matrix.empty() + !edge_list.empty() + !fasta.empty() +
               !generator.empty();
    }
};

int run_gen(const std::string& kind, int n, std::uint64_t seed, const std::string& out) {
    PointCloud cloud;
    if (kind == "uniform-square")
        cloud = generate_uniform_square(n, seed);
    else if (kind == "swiss-roll")
        cloud = generate_swiss_roll(n, seed);
    else
        throw Error(ErrorKind::InvalidArgument, "unknown generator '" + kind + "'");
    write_points_csv(out, cloud);
    std::cout << "wrote " << cloud.n << " points (dim " << cloud.dim << ") to " << out << "\n";
    return 0;
}

int run_dissim(const CommonInput& input, const std::string& method_name, int k,
               const std::string& out) {
    if (input.sources_given() != 1)
        throw Error(ErrorKind::InvalidArgument, "give exactly one input source");
    DissimMethod method = dissim_from_name(method_name);

    DissimilarityMatrix D;
    if (!input.matrix.empty()) {
        D = load_matrix_csv(input.matrix);  // validation happens on load
    } else if (!input.edge_list.empty()) {
        D = graph_shortest_path_dissimilarity(load_edge_list(input.edge_list, input.one_based));
    } else if (!input.fasta.empty()) {
        D = kimura2p_dissimilarity(load_fasta(input.fasta));
    } else {
        PointCloud points = !input.points.empty()
                                ? load_points_csv(input.points, input.header)
                                : throw Error(ErrorKind::InvalidArgument,
                                              "dissim needs points, matrix, edge-list or fasta");
        if (method == DissimMethod::Geodesic) {
            D = geodesic_dissimilarity(points, k);
        } else if (method == DissimMethod::GeodesicSquared) {
            D = geodesic_dissimilarity(points, k);
            for (auto& v : D.values) v = v * v;
        } else {
            D = squared_euclidean(points);
        }
    }
    write_matrix_csv(out, D);
    std::cout << "wrote " << D.n << "x" << D.n << " matrix to " << out << "\n";
    return 0;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (!token.empty()) out.push_back(std::stoi(token));
            token.clear();
        } else {
            token += c;
        }
    }
    return out;
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Expands `--config FILE` into `--key=value` tokens inserted right after the
// subcommand name. Later command-line flags win because every option keeps
// only its last value.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty() || args.empty()) return args;

    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open config file '" + path + "'");
    std::vector<std::string> expanded;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::ParseError,
                        "expected key=value in " + path + ":" + std::to_string(line_no));
        expanded.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
    }
    args.insert(args.begin() + 1, expanded.begin(), expanded.end());
    return args;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Self-organizing maps for dissimilarity data"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate synthetic point clouds");
    std::string gen_kind = "uniform-square", gen_out;
    int gen_n = 500;
    std::uint64_t gen_seed = 1;
    gen->add_option("--kind", gen_kind, "uniform-square or swiss-roll");
    gen->add_option("--n", gen_n, "number of points");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output CSV")->required();

    // dissim
    auto* dissim = app.add_subcommand("dissim", "build or validate dissimilarity matrices");
    CommonInput dissim_input;
    dissim_input.add_options(dissim);
    std::string dissim_method;
    int dissim_k = 10;
    std::string dissim_out;
    dissim->add_option("--method", dissim_method,
                       "squared-euclidean, geodesic, shortest-path or kimura2p");
    dissim->add_option("--k", dissim_k, "neighbor count for the geodesic K-rule");
    dissim->add_option("--out", dissim_out, "output matrix CSV")->required();

    // train
    auto* train = app.add_subcommand("train", "run one experiment end to end");
    std::string config_file;
    train->add_option("--config", config_file, "flat key=value experiment file; flags override");
    CommonInput train_input;
    train_input.add_options(train);
    ExperimentConfig config;
    std::string train_variant = "online-relational", train_kernel = "hard",
                train_init = "random-convex", train_dissim, train_labels, train_outdir,
                train_snapshots;
    int gen_points = 500;
    std::uint64_t data_seed = 1;
    bool warn_indefinite = false;
    train->add_option("--gen-n", gen_points, "points to generate for generator inputs");
    train->add_option("--gen-seed", data_seed, "seed for generator inputs");
    train->add_option("--dissim", train_dissim, "dissimilarity method for point inputs");
    train->add_option("--k", config.geodesic_k, "neighbor count for the geodesic K-rule");
    train->add_option("--labels", train_labels, "label file node_id,label");
    train->add_option("--variant", train_variant,
                      "online-relational, batch-relational, euclidean-online or batch-median");
    train->add_option("--grid.rows", config.grid_rows, "grid rows");
    train->add_option("--grid.cols", config.grid_cols, "grid columns");
    train->add_option("--kernel.kind", train_kernel, "hard or gaussian");
    train->add_option("--schedule.T", config.iterations, "iterations (online) or epochs (batch)");
    train->add_option("--schedule.alpha0", config.alpha0, "initial learning rate");
    train->add_option("--schedule.plateaus", config.plateaus, "radius plateaus");
    train->add_option("--init", train_init, "one-hot-sample or random-convex");
    train->add_option("--seed", config.seed, "training seed");
    train->add_option("--snapshots", train_snapshots, "comma list of snapshot iterations");
    train->add_flag("--epoch-shuffle", config.epoch_shuffle,
                    "sample by reshuffled passes instead of with replacement");
    train->add_flag("--warn-indefinite", warn_indefinite,
                    "report how often implicit distances were negative");
    train->add_option("--outdir", train_outdir, "output directory")->required();

    // eval
    auto* eval = app.add_subcommand("eval", "re-evaluate a trained map");
    std::string eval_matrix, eval_points, eval_mapdir, eval_labels, eval_out;
    bool eval_header = false, eval_one_based = false;
    eval->add_option("--matrix", eval_matrix, "dissimilarity matrix CSV");
    eval->add_option("--points", eval_points, "point CSV (euclidean-online maps)");
    eval->add_flag("--header", eval_header, "skip one header line in point CSVs");
    eval->add_flag("--one-based", eval_one_based, "label file uses 1-based ids");
    eval->add_option("--mapdir", eval_mapdir, "directory written by train")->required();
    eval->add_option("--labels", eval_labels, "label file node_id,label");
    eval->add_option("--out", eval_out, "output directory (defaults to mapdir)");

    // plot
    auto* plot = app.add_subcommand("plot", "emit SVG plots from a trained map");
    std::string plot_kind, plot_mapdir, plot_points, plot_matrix, plot_labels, plot_out;
    bool plot_header = false, plot_one_based = false;
    plot->add_option("--kind", plot_kind, "grid, polygons or labels")->required();
    plot->add_option("--mapdir", plot_mapdir, "directory written by train")->required();
    plot->add_option("--points", plot_points, "2D point CSV (grid plots)");
    plot->add_option("--matrix", plot_matrix, "dissimilarity matrix CSV (polygon plots)");
    plot->add_option("--labels", plot_labels, "label file (label plots)");
    plot->add_flag("--header", plot_header, "skip one header line in point CSVs");
    plot->add_flag("--one-based", plot_one_based, "label file uses 1-based ids");
    plot->add_option("--out", plot_out, "output SVG path")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "per-step wall-time scaling harness");
    std::string bench_variant = "online-relational", bench_ns = "250,500,1000", bench_out;
    int bench_rows = 10, bench_cols = 10, bench_reps = 3, bench_iters = 250, bench_epochs = 3,
        bench_threads = 1;
    std::uint64_t bench_seed = 1;
    bench->add_option("--variant", bench_variant, "variant to time");
    bench->add_option("--ns", bench_ns, "comma list of dataset sizes, ascending");
    bench->add_option("--grid.rows", bench_rows, "grid rows");
    bench->add_option("--grid.cols", bench_cols, "grid columns");
    bench->add_option("--reps", bench_reps, "repetitions per size");
    bench->add_option("--iters", bench_iters, "online iterations per repetition");
    bench->add_option("--epochs", bench_epochs, "batch epochs per repetition");
    bench->add_option("--threads", bench_threads, "worker threads for batch epochs");
    bench->add_option("--seed", bench_seed, "data and training seed");
    bench->add_option("--out", bench_out, "output CSV")->required();

    try {
        for (auto* sub : app.get_subcommands({}))
            for (auto* opt : sub->get_options())
                opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        auto args = expand_config(argc, argv);
        std::vector<const char*> argv2 = {argv[0]};
        for (const auto& a : args) argv2.push_back(a.c_str());
        app.parse(static_cast<int>(argv2.size()), argv2.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // bad flags are validation failures
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_validation_error(e.kind()) ? 1 : 2;
    }

    try {
        if (gen->parsed()) return run_gen(gen_kind, gen_n, gen_seed, gen_out);
        if (dissim->parsed()) return run_dissim(dissim_input, dissim_method, dissim_k, dissim_out);

        if (train->parsed()) {
            if (train_input.sources_given() != 1)
                throw Error(ErrorKind::InvalidArgument,
                            "give exactly one input source (points, matrix, edge-list, fasta "
                            "or generator)");
            if (!train_input.points.empty()) {
                config.source = InputSource::PointsCsv;
                config.input_path = train_input.points;
            } else if (!train_input.matrix.empty()) {
                config.source = InputSource::MatrixCsv;
                config.input_path = train_input.matrix;
            } else if (!train_input.edge_list.empty()) {
                config.source = InputSource::EdgeList;
                config.input_path = train_input.edge_list;
            } else if (!train_input.fasta.empty()) {
                config.source = InputSource::Fasta;
                config.input_path = train_input.fasta;
            } else if (train_input.generator == "uniform-square") {
                config.source = InputSource::GeneratorUniformSquare;
            } else if (train_input.generator == "swiss-roll") {
                config.source = InputSource::GeneratorSwissRoll;
            } else {
                throw Error(ErrorKind::InvalidArgument,
                            "unknown generator '" + train_input.generator + "'");
            }
            config.csv_header = train_input.header;
            config.one_based = train_input.one_based;
            config.generator_n = gen_points;
            config.generator_seed = data_seed;
            config.dissim = dissim_from_name(train_dissim);
            config.variant = variant_from_name(train_variant);
            config.kernel = kernel_from_name(train_kernel);
            config.init = init_from_name(train_init);
            if (!train_labels.empty()) config.labels_path = train_labels;
            if (!train_snapshots.empty())
                config.snapshot_iterations = parse_int_list(train_snapshots);
            config.out_dir = train_outdir;

            ExperimentResult result = run_experiment(config);
            std::cout << "variant=" << variant_name(result.map.variant) << "\n"
                      << "quantization_error=" << format_double(result.report.quantization_error)
                      << "\n"
                      << "topographic_error=" << format_double(result.report.topographic_error)
                      << "\n";
            if (result.report.has_labels)
                std::cout << "purity=" << format_double(result.report.purity) << "\n";
            std::cout << "outputs=" << config.out_dir.string() << "\n";
            if (warn_indefinite && result.map.distance_evaluations > 0) {
                double share = static_cast<double>(result.map.negative_distance_count) /
                               static_cast<double>(result.map.distance_evaluations);
                std::fprintf(stderr, "warning: %ld of %ld implicit distances were negative (%.4f)\n",
                             result.map.negative_distance_count,
                             result.map.distance_evaluations, share);
            }
            return 0;
        }

        if (eval->parsed()) {
            TrainedMap map = load_trained_map(eval_mapdir);
            std::filesystem::path out = eval_out.empty() ? eval_mapdir : eval_out;
            std::vector<std::string> labels;
            DissimilarityMatrix D;
            MapReport report;
            if (map.variant == MapVariant::EuclideanOnline) {
                if (eval_points.empty())
                    throw Error(ErrorKind::InvalidArgument,
                                "euclidean-online maps need --points for evaluation");
                PointCloud points = load_points_csv(eval_points, eval_header);
                if (!eval_labels.empty())
                    labels = load_labels_csv(eval_labels, points.n, eval_one_based);
                report = map_report(points, map, labels.empty() ? nullptr : &labels);
                D = squared_euclidean(points);
            } else {
                if (eval_matrix.empty())
                    throw Error(ErrorKind::InvalidArgument, "eval needs --matrix");
                D = load_matrix_csv(eval_matrix);
                if (!eval_labels.empty())
                    labels = load_labels_csv(eval_labels, D.n, eval_one_based);
                report = map_report(D, map, labels.empty() ? nullptr : &labels);
            }
            write_report(out, report, map.grid);
            write_neighbor_distances(out / "neighbor_distances.csv",
                                     neighbor_cell_distances(D, map));
            std::cout << "quantization_error=" << format_double(report.quantization_error) << "\n"
                      << "topographic_error=" << format_double(report.topographic_error) << "\n";
            if (report.has_labels)
                std::cout << "purity=" << format_double(report.purity) << "\n";
            return 0;
        }

        if (plot->parsed()) {
            TrainedMap map = load_trained_map(plot_mapdir);
            if (plot_kind == "grid") {
                if (plot_points.empty())
                    throw Error(ErrorKind::InvalidArgument, "grid plots need --points");
                PointCloud points = load_points_csv(plot_points, plot_header);
                write_text_file(plot_out,
                                grid_plot_svg(points, prototype_positions(map, points), map.grid));
            } else if (plot_kind == "polygons") {
                if (plot_matrix.empty())
                    throw Error(ErrorKind::InvalidArgument, "polygon plots need --matrix");
                DissimilarityMatrix D = load_matrix_csv(plot_matrix);
                write_text_file(plot_out,
                                polygon_distance_plot_svg(neighbor_cell_distances(D, map)));
            } else if (plot_kind == "labels") {
                if (plot_labels.empty())
                    throw Error(ErrorKind::InvalidArgument, "label plots need --labels");
                auto labels = load_labels_csv(plot_labels,
                                              static_cast<int>(map.assignments.size()),
                                              plot_one_based);
                write_text_file(plot_out,
                                label_distribution_svg(map.assignments, labels, map.grid));
            } else {
                throw Error(ErrorKind::InvalidArgument, "unknown plot kind '" + plot_kind + "'");
            }
            std::cout << "wrote " << plot_out << "\n";
            return 0;
        }

        if (bench->parsed()) {
            auto rows = benchmark_scaling(variant_from_name(bench_variant),
                                          parse_int_list(bench_ns),
                                          MapGrid{bench_rows, bench_cols}, bench_reps, bench_seed,
                                          bench_iters, bench_epochs, bench_threads);
            write_bench_csv(bench_out, rows);
            for (const auto& r : rows)
                std::cout << r.variant << " n=" << r.n << " median_seconds_per_step="
                          << format_double(r.median_seconds) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_validation_error(e.kind()) ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
