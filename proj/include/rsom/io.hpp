#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rsom/dissimilarity.hpp"
#include "rsom/evaluation.hpp"
#include "rsom/som.hpp"

namespace rsom {

// Shortest-round-trip decimal formatting used by every CSV writer, so that
// rerunning a seeded experiment produces byte-identical files.
std::string format_double(double value);

PointCloud load_points_csv(const std::filesystem::path& path, bool skip_header = false);
void write_points_csv(const std::filesystem::path& path, const PointCloud& points);

// Loads an n x n CSV and passes it through validate().
DissimilarityMatrix load_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const DissimilarityMatrix& D);

// One "src dst" pair per line; node count is the largest index + 1.
SimpleGraph load_edge_list(const std::filesystem::path& path, bool one_based = false);

// "node_id,label" lines; returns labels indexed by node.
std::vector<std::string> load_labels_csv(const std::filesystem::path& path, int expected_n,
                                         bool one_based = false);

DnaSequenceSet load_fasta(const std::filesystem::path& path);
void write_fasta(const std::filesystem::path& path, const DnaSequenceSet& seqs);

// assignments.csv, history.csv, meta.json plus coefficients.csv /
// prototypes.csv / medoids.csv depending on the variant.
void write_trained_map(const std::filesystem::path& dir, const TrainedMap& map);
TrainedMap load_trained_map(const std::filesystem::path& dir);
std::vector<int> load_assignments_csv(const std::filesystem::path& path);

void write_report(const std::filesystem::path& dir, const MapReport& report,
                  const MapGrid& grid);
void write_neighbor_distances(const std::filesystem::path& path,
                              const NeighborDistanceMap& ndm);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

} // namespace rsom
