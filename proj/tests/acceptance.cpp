// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Individual criteria can be selected by number on the
// command line, e.g. `rsom_acceptance 4 6`.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rsom/bench.hpp"
#include "rsom/dissimilarity.hpp"
#include "rsom/evaluation.hpp"
#include "rsom/experiment.hpp"
#include "rsom/generators.hpp"
#include "rsom/io.hpp"
#include "rsom/rng.hpp"
#include "rsom/som.hpp"
#include "rsom/svg_plots.hpp"
#include "support/oracles.hpp"

using namespace rsom;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Runs fn(i) for i in [0, count) on `workers` threads. Each call writes only
// its own result slot, so aggregates are order-independent.
void run_indexed(int count, int workers, const std::function<void(int)>& fn) {
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= count) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min(workers, count); ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

DissimilarityMatrix random_dissimilarity(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> values(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = rng.uniform01();
            values[static_cast<std::size_t>(i) * n + j] = v;
            values[static_cast<std::size_t>(j) * n + i] = v;
        }
    return validate(std::move(values), n);
}

PointCloud random_cloud(int n, int dim, std::uint64_t seed) {
    Rng rng(seed);
    PointCloud out;
    out.n = n;
    out.dim = dim;
    out.coords.resize(static_cast<std::size_t>(n) * dim);
    for (auto& c : out.coords) c = rng.uniform01();
    return out;
}

// 1. Simplex preservation: 100 seeded online runs on random dissimilarity
// matrices (n=50, U=25, T=1000); every row non-negative and summing to 1
// within 1e-10 after every update and at every checkpoint. Under a minute.
Outcome criterion1() {
    auto start = std::chrono::steady_clock::now();
    const int runs = 100;
    std::vector<std::string> failures(runs);
    run_indexed(runs, 2, [&](int r) {
        auto D = random_dissimilarity(50, 5000 + r);
        MapGrid grid{5, 5};
        NeighborhoodKernel kernel;
        auto schedule = TrainingSchedule::standard(grid, 1000);
        TrainOptions options;
        options.check_simplex = true;  // throws on any per-update violation
        options.record_trace = false;
        try {
            auto map = train_online_relational(D, grid, kernel, schedule, options, 9000 + r);
            for (int u = 0; u < 25; ++u) {
                double sum = 0.0;
                for (int j = 0; j < 50; ++j) {
                    double v = map.coefficients.row(u)[j];
                    if (v < 0.0) failures[r] = "negative entry in final row";
                    sum += v;
                }
                if (std::abs(sum - 1.0) > 1e-10) failures[r] = "final row sum off";
            }
        } catch (const std::exception& e) {
            failures[r] = e.what();
        }
    });
    int clean = 0;
    std::string first;
    for (const auto& f : failures) {
        if (f.empty())
            ++clean;
        else if (first.empty())
            first = f;
    }
    double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << clean << "/" << runs << " runs kept every row on the simplex";
    if (!first.empty()) detail << "; first failure: " << first;
    detail << " [" << (elapsed < 60 ? "within" : "OVER") << " 1 min budget]";
    return {clean == runs && elapsed < 60.0, detail.str()};
}

// 2. Distance identity: implicit_distance equals the explicit coordinate
// space squared distance within 1e-9 relative on 100 random instances.
Outcome criterion2() {
    Rng rng(2024);
    int ok = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + rng.index(19);  // up to 20
        int dim = 1 + rng.index(5);
        auto points = random_cloud(n, dim, 7000 + trial);
        auto D = squared_euclidean(points);

        std::vector<double> beta(n);
        double sum = 0.0;
        for (auto& v : beta) {
            v = rng.open01();
            sum += v;
        }
        for (auto& v : beta) v /= sum;
        int i = rng.index(n);

        double expected = oracle::explicit_prototype_distance(points, beta, i);
        double got = implicit_distance(D, beta, i);
        double rel = std::abs(got - expected) / std::max(std::abs(expected), 1e-12);
        worst = std::max(worst, rel);
        if (rel <= 1e-9) ++ok;
    }
    std::ostringstream detail;
    detail << ok << "/100 instances within 1e-9 relative (worst " << worst << ")";
    return {ok == 100, detail.str()};
}

// 3. Euclidean equivalence: 20 seeded relational/euclidean pairs produce the
// same assignment sequence at every iteration and final quantization errors
// within 1e-6 relative. Runs under the Gaussian kernel: the hard kernel's
// whole-grid warm-up contracts all rows to within machine epsilon of each
// other, which makes those early argmins float-noise coin flips on both
// sides (while the whole-grid update ignores the winner entirely). Under the
// Gaussian kernel every winner is well-separated and feeds back into the
// trajectory, so this is the strict reading of "identical at every
// iteration".
Outcome criterion3() {
    const int seeds = 20;
    std::vector<int> trace_ok(seeds, 0), qe_ok(seeds, 0);
    std::vector<double> qe_gap(seeds, 0.0);
    run_indexed(seeds, 2, [&](int s) {
        auto points = random_cloud(100, 3, 3000 + s);
        auto D = squared_euclidean(points);
        MapGrid grid{5, 5};
        NeighborhoodKernel kernel{KernelKind::Gaussian};
        auto schedule = TrainingSchedule::standard(grid, 2000);
        TrainOptions options;
        auto relational = train_online_relational(D, grid, kernel, schedule, options, 100 + s);
        auto euclidean = train_online_euclidean(points, grid, kernel, schedule, options, 100 + s);
        trace_ok[s] = relational.sampled_trace == euclidean.sampled_trace &&
                      relational.winner_trace == euclidean.winner_trace;
        double qr = map_report(D, relational).quantization_error;
        double qe = map_report(points, euclidean).quantization_error;
        qe_gap[s] = std::abs(qr - qe) / std::max(std::abs(qe), 1e-300);
        qe_ok[s] = qe_gap[s] <= 1e-6;
    });
    int traces = 0, qes = 0;
    double worst = 0.0;
    for (int s = 0; s < seeds; ++s) {
        traces += trace_ok[s];
        qes += qe_ok[s];
        worst = std::max(worst, qe_gap[s]);
    }
    std::ostringstream detail;
    detail << traces << "/20 identical assignment sequences, " << qes
           << "/20 quantization errors within 1e-6 relative (worst " << worst << ")";
    return {traces == seeds && qes == seeds, detail.str()};
}

// 4. Figure-1 organization: online (T=2500) against batch (20 epochs) from a
// shared random-convex init on 500 uniform points, 10x10 grid. Online must
// have fewer lattice crossings in >= 8 of 10 seeds and topographic error
// below 0.15 in >= 8 of 10 seeds, inside 10 minutes.
Outcome criterion4() {
    auto start = std::chrono::steady_clock::now();
    auto points = generate_uniform_square(500, 424242);
    auto D = squared_euclidean(points);
    MapGrid grid{10, 10};
    NeighborhoodKernel kernel;
    const int seeds = 10;

    std::vector<int> fewer_crossings(seeds, 0), te_below(seeds, 0);
    std::vector<int> online_cross(seeds, 0), batch_cross(seeds, 0);
    std::vector<double> online_te(seeds, 0.0);
    run_indexed(seeds, 2, [&](int s) {
        TrainOptions options;
        options.record_trace = false;
        auto online_schedule = TrainingSchedule::standard(grid, 2500);
        auto online = train_online_relational(D, grid, kernel, online_schedule, options, 1 + s);
        auto batch_schedule = TrainingSchedule::batch(grid, 20);
        auto batch = train_batch_relational(D, grid, kernel, batch_schedule, options, 1 + s);

        online_cross[s] = count_lattice_crossings(prototype_positions(online, points), grid);
        batch_cross[s] = count_lattice_crossings(prototype_positions(batch, points), grid);
        online_te[s] = map_report(D, online).topographic_error;
        fewer_crossings[s] = online_cross[s] < batch_cross[s];
        te_below[s] = online_te[s] < 0.15;
    });

    int fewer = 0, organized = 0;
    for (int s = 0; s < seeds; ++s) {
        fewer += fewer_crossings[s];
        organized += te_below[s];
    }
    double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << fewer << "/10 seeds with fewer online crossings (e.g. " << online_cross[0]
           << " vs " << batch_cross[0] << "), " << organized
           << "/10 seeds with online TE < 0.15; " << static_cast<int>(elapsed) << " s of 600";
    return {fewer >= 8 && organized >= 8 && elapsed < 600.0, detail.str()};
}

// 5. Complexity trend: successive per-iteration (online) and per-epoch
// (batch) wall-time ratios across n in {250, 500, 1000} must sit in the
// quadratic band [2.8, 5.6] and the cubic band [5.6, 11.2].
Outcome criterion5() {
    std::vector<int> ns = {250, 500, 1000};
    MapGrid grid{10, 10};
    auto online = benchmark_scaling(MapVariant::OnlineRelational, ns, grid, 3, 99, 250, 3, 1);
    auto batch = benchmark_scaling(MapVariant::BatchRelational, ns, grid, 2, 99, 250, 3, 2);

    auto ratio = [](const std::vector<BenchRow>& rows, int a, int b) {
        return rows[b].median_seconds / rows[a].median_seconds;
    };
    double on1 = ratio(online, 0, 1), on2 = ratio(online, 1, 2);
    double ba1 = ratio(batch, 0, 1), ba2 = ratio(batch, 1, 2);
    bool online_quadratic = on1 >= 2.8 && on1 <= 5.6 && on2 >= 2.8 && on2 <= 5.6;
    bool batch_cubic = ba1 >= 5.6 && ba1 <= 11.2 && ba2 >= 5.6 && ba2 <= 11.2;

    std::ostringstream detail;
    detail.precision(2);
    detail << std::fixed << "online ratios " << on1 << ", " << on2
           << " (quadratic band [2.8, 5.6]); batch ratios " << ba1 << ", " << ba2
           << " (cubic band [5.6, 11.2])";
    return {online_quadratic && batch_cubic, detail.str()};
}

// 6. Swiss roll: geodesic k=10 on 1000 points (entries squared before
// training, which makes the relational run the exact analogue of a classical
// SOM on the unrolled strip), 30x10 grid. Online relational needs TE < 0.2
// and quartile purity >= 0.7 in >= 7 of 10 seeds, and must beat batch median
// SOM in >= 7 of 10 paired seeds — online meets both thresholds while batch
// median misses at least one — inside 15 minutes.
Outcome criterion6() {
    auto start = std::chrono::steady_clock::now();
    auto roll = generate_swiss_roll(1000, 20240915);
    auto D = geodesic_dissimilarity(roll, 10, 2);
    for (auto& v : D.values) v = v * v;
    auto labels = quartile_labels(swiss_roll_parameter(roll));
    MapGrid grid{30, 10};
    NeighborhoodKernel kernel;
    const int seeds = 10;

    auto meets = [](const MapReport& r) {
        return r.topographic_error < 0.2 && r.purity >= 0.7;
    };
    std::vector<int> absolute_ok(seeds, 0), beats_median(seeds, 0);
    std::vector<double> online_tes(seeds), online_pur(seeds), median_tes(seeds);
    run_indexed(seeds, 2, [&](int s) {
        TrainOptions options;
        options.record_trace = false;
        auto online_schedule = TrainingSchedule::standard(grid, 2000);
        auto online = train_online_relational(D, grid, kernel, online_schedule, options, 1 + s);
        auto median_schedule = TrainingSchedule::batch(grid, 20);
        auto median = train_batch_median(D, grid, kernel, median_schedule, options, 1 + s);

        auto online_report = map_report(D, online, &labels);
        auto median_report = map_report(D, median, &labels);
        online_tes[s] = online_report.topographic_error;
        online_pur[s] = online_report.purity;
        median_tes[s] = median_report.topographic_error;
        absolute_ok[s] = meets(online_report);
        beats_median[s] = meets(online_report) && !meets(median_report);
    });

    int absolute = 0, paired = 0;
    double te_sum = 0, pur_sum = 0, med_te_sum = 0;
    for (int s = 0; s < seeds; ++s) {
        absolute += absolute_ok[s];
        paired += beats_median[s];
        te_sum += online_tes[s];
        pur_sum += online_pur[s];
        med_te_sum += median_tes[s];
    }
    double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail.precision(3);
    detail << absolute << "/10 seeds with TE < 0.2 and purity >= 0.7 (mean online TE "
           << te_sum / seeds << ", purity " << pur_sum / seeds << "; mean batch-median TE "
           << med_te_sum / seeds << "), " << paired
           << "/10 paired wins over batch median; " << static_cast<int>(elapsed) << " s of 900";
    return {absolute >= 7 && paired >= 7 && elapsed < 900.0, detail.str()};
}

// 7. Political books: shortest-path dissimilarity on the bundled
// 105-node/441-edge graph must match an independent Floyd-Warshall oracle
// exactly, and size-weighted majority purity must reach 0.75 in >= 7 of 10
// seeds on a 10x10 grid.
Outcome criterion7() {
    fs::path data = RSOM_DATA_DIR;
    auto graph = load_edge_list(data / "polbooks_like.edges");
    auto labels = load_labels_csv(data / "polbooks_like_labels.csv", graph.num_nodes);
    graph.labels = labels;
    if (graph.num_nodes != 105 || graph.edges.size() != 441)
        return {false, "expected 105 nodes / 441 edges, got " +
                           std::to_string(graph.num_nodes) + " / " +
                           std::to_string(graph.edges.size())};

    auto D = graph_shortest_path_dissimilarity(graph);
    auto expected = oracle::floyd_warshall_hops(graph);
    for (int i = 0; i < D.n; ++i)
        for (int j = 0; j < D.n; ++j)
            if (D.at(i, j) != expected[static_cast<std::size_t>(i) * D.n + j])
                return {false, "shortest-path matrix disagrees with the BFS oracle at (" +
                                   std::to_string(i) + ", " + std::to_string(j) + ")"};

    MapGrid grid{10, 10};
    NeighborhoodKernel kernel;
    const int seeds = 10;
    std::vector<double> purity(seeds, 0.0);
    run_indexed(seeds, 2, [&](int s) {
        TrainOptions options;
        options.record_trace = false;
        auto schedule = TrainingSchedule::standard(grid, 2500);
        auto map = train_online_relational(D, grid, kernel, schedule, options, 1 + s);
        purity[s] = map_report(D, map, &labels).purity;
    });
    int pure = 0;
    double mean = 0.0;
    for (double p : purity) {
        pure += p >= 0.75;
        mean += p;
    }
    std::ostringstream detail;
    detail.precision(3);
    detail << "oracle matched exactly; " << pure << "/10 seeds with purity >= 0.75 (mean "
           << mean / seeds << ")";
    return {pure >= 7, detail.str()};
}

// 8. Determinism: identical configs rerun into fresh directories produce
// byte-identical artifacts.
Outcome criterion8() {
    fs::path base = fs::temp_directory_path() / "rsom_acceptance_det";
    fs::remove_all(base);

    auto run_pair = [&](ExperimentConfig config, const std::string& tag) -> std::string {
        config.out_dir = base / (tag + "_one");
        run_experiment(config);
        config.out_dir = base / (tag + "_two");
        run_experiment(config);
        for (const auto& entry : fs::directory_iterator(base / (tag + "_one"))) {
            auto name = entry.path().filename();
            auto other = base / (tag + "_two") / name;
            if (!fs::exists(other)) return name.string() + " missing on rerun";
            if (read_text_file(entry.path()) != read_text_file(other))
                return name.string() + " differs between reruns";
        }
        return "";
    };

    ExperimentConfig online;
    online.source = InputSource::GeneratorUniformSquare;
    online.generator_n = 120;
    online.generator_seed = 5;
    online.variant = MapVariant::OnlineRelational;
    online.grid_rows = 6;
    online.grid_cols = 6;
    online.iterations = 300;
    online.seed = 5;
    std::string failure = run_pair(online, "online");

    if (failure.empty()) {
        ExperimentConfig median;
        median.source = InputSource::EdgeList;
        median.input_path = fs::path(RSOM_DATA_DIR) / "polbooks_like.edges";
        median.labels_path = fs::path(RSOM_DATA_DIR) / "polbooks_like_labels.csv";
        median.variant = MapVariant::BatchMedian;
        median.grid_rows = 4;
        median.grid_cols = 4;
        median.iterations = 10;
        median.seed = 9;
        failure = run_pair(median, "median");
    }
    if (!failure.empty()) return {false, failure};
    return {true, "both experiment configs reproduced every artifact byte for byte"};
}

// 9. Kimura-2P unit cases: the two hand-derived values within 1e-4 and an
// exact zero for identical sequences.
Outcome criterion9() {
    auto seqs = make_sequence_set({"a", "b", "c", "d"}, {"aaaa", "gaaa", "caaa", "aaaa"});
    auto D = kimura2p_dissimilarity(seqs);
    double transition = D.at(0, 1);    // P = 1/4: -1/2 ln(1/2) = 0.3466
    double transversion = D.at(0, 2);  // Q = 1/4: -1/2 ln(1/2 * sqrt(1/2)) = 0.5199
    double identical = D.at(0, 3);
    bool ok = std::abs(transition - 0.3466) <= 1e-4 && std::abs(transversion - 0.5199) <= 1e-4 &&
              identical == 0.0;
    std::ostringstream detail;
    detail.precision(6);
    detail << "transition case " << transition << " (0.3466 +- 1e-4), transversion case "
           << transversion << " (0.5199 +- 1e-4), identical-sequence distance " << identical;
    return {ok, detail.str()};
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "simplex preservation", criterion1},
    {2, "distance identity oracle", criterion2},
    {3, "euclidean equivalence", criterion3},
    {4, "figure-1 organization", criterion4},
    {5, "complexity trend", criterion5},
    {6, "swiss roll", criterion6},
    {7, "political books", criterion7},
    {8, "determinism", criterion8},
    {9, "kimura-2p unit cases", criterion9},
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int a = 1; a < argc; ++a) selected.insert(std::atoi(argv[a]));

    bool all_pass = true;
    for (const auto& criterion : kCriteria) {
        if (!selected.empty() && selected.count(criterion.id) == 0) continue;
        auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        double elapsed = seconds_since(start);
        std::printf("[%s] criterion %d (%s): %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.id, criterion.name, outcome.detail.c_str(), elapsed);
        std::fflush(stdout);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
