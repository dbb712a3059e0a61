#include "rsom/bench.hpp"

#include <algorithm>
#include <fstream>

#include "rsom/error.hpp"
#include "rsom/generators.hpp"
#include "rsom/io.hpp"

namespace rsom {

namespace {

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

} // namespace

std::vector<BenchRow> benchmark_scaling(MapVariant variant, const std::vector<int>& ns,
                                        const MapGrid& grid, int repetitions,
                                        std::uint64_t seed, int online_iterations,
                                        int batch_epochs, int batch_threads) {
    if (repetitions < 1)
        throw Error(ErrorKind::InvalidArgument, "need at least one repetition");
    if (!std::is_sorted(ns.begin(), ns.end()))
        throw Error(ErrorKind::InvalidArgument, "n list must be sorted ascending");

    NeighborhoodKernel kernel;
    std::vector<BenchRow> rows;
    for (int n : ns) {
        PointCloud points = generate_uniform_square(n, seed);
        DissimilarityMatrix D = squared_euclidean(points);

        std::vector<double> times;
        for (int rep = 0; rep < repetitions; ++rep) {
            TrainOptions options;
            options.record_trace = false;
            options.history_iterations = {0};
            options.step_seconds = &times;
            options.batch_threads = batch_threads;
            switch (variant) {
                case MapVariant::OnlineRelational: {
                    auto schedule = TrainingSchedule::standard(grid, online_iterations);
                    train_online_relational(D, grid, kernel, schedule, options, seed);
                    break;
                }
                case MapVariant::BatchRelational: {
                    auto schedule = TrainingSchedule::batch(grid, batch_epochs);
                    train_batch_relational(D, grid, kernel, schedule, options, seed);
                    break;
                }
                case MapVariant::BatchMedian: {
                    auto schedule = TrainingSchedule::batch(grid, batch_epochs);
                    train_batch_median(D, grid, kernel, schedule, options, seed);
                    break;
                }
                case MapVariant::EuclideanOnline: {
                    auto schedule = TrainingSchedule::standard(grid, online_iterations);
                    train_online_euclidean(points, grid, kernel, schedule, options, seed);
                    break;
                }
            }
        }

        BenchRow row;
        row.variant = variant_name(variant);
        row.n = n;
        row.units = grid.units();
        row.steps_timed = static_cast<int>(times.size());
        row.median_seconds = median(std::move(times));
        rows.push_back(row);
    }
    return rows;
}

void write_bench_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
    out << "variant,n,units,steps_timed,median_seconds_per_step\n";
    for (const auto& r : rows)
        out << r.variant << ',' << r.n << ',' << r.units << ',' << r.steps_timed << ','
            << format_double(r.median_seconds) << '\n';
}

} // namespace rsom
