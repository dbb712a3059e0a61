#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rsom/som.hpp"

namespace rsom {

struct BenchRow {
    std::string variant;
    int n = 0;
    int units = 0;
    int steps_timed = 0;        // iterations (online) or epochs (batch)
    double median_seconds = 0.0;
};

// Times training steps on uniform-square data at each n with a shared seed
// and grid. Online runs time every iteration of a full standard schedule;
// batch runs time whole epochs. Medians are taken across all repetitions.
std::vector<BenchRow> benchmark_scaling(MapVariant variant, const std::vector<int>& ns,
                                        const MapGrid& grid, int repetitions,
                                        std::uint64_t seed, int online_iterations = 250,
                                        int batch_epochs = 3, int batch_threads = 1);

void write_bench_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows);

} // namespace rsom
