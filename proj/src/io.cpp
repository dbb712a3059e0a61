#include "rsom/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "rsom/error.hpp"

namespace rsom {

namespace {

namespace fs = std::filesystem;

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

double parse_double(const std::string& text, const fs::path& path, int line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0'))
        throw Error(ErrorKind::ParseError, "bad number '" + text + "' in " + path.string() +
                                               ":" + std::to_string(line_no));
    return value;
}

long parse_long(const std::string& text, const fs::path& path, int line_no) {
    long value = 0;
    auto first = text.data();
    auto last = text.data() + text.size();
    while (first != last && *first == ' ') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    while (ptr != last && *ptr == ' ') ++ptr;
    if (ec != std::errc() || ptr != last)
        throw Error(ErrorKind::ParseError, "bad integer '" + text + "' in " + path.string() +
                                               ":" + std::to_string(line_no));
    return value;
}

} // namespace

std::string format_double(double value) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

PointCloud load_points_csv(const fs::path& path, bool skip_header) {
    auto in = open_input(path);
    PointCloud out;
    std::string line;
    int line_no = 0;
    std::vector<double> row;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line_no == 1 && skip_header) continue;
        if (line.empty()) continue;
        row.clear();
        for (const auto& field : split_csv(line)) row.push_back(parse_double(field, path, line_no));
        if (out.dim == 0) out.dim = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != out.dim)
            throw Error(ErrorKind::ParseError,
                        "inconsistent column count in " + path.string() + ":" +
                            std::to_string(line_no));
        out.coords.insert(out.coords.end(), row.begin(), row.end());
        ++out.n;
    }
    if (out.n == 0) throw Error(ErrorKind::ParseError, "no points in " + path.string());
    return out;
}

void write_points_csv(const fs::path& path, const PointCloud& points) {
    auto out = open_output(path);
    for (int i = 0; i < points.n; ++i) {
        for (int d = 0; d < points.dim; ++d) {
            if (d) out << ',';
            out << format_double(points.at(i, d));
        }
        out << '\n';
    }
}

DissimilarityMatrix load_matrix_csv(const fs::path& path) {
    auto in = open_input(path);
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    int cols = 0;
    int rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (cols == 0) cols = static_cast<int>(fields.size());
        if (static_cast<int>(fields.size()) != cols)
            throw Error(ErrorKind::ParseError,
                        "inconsistent column count in " + path.string() + ":" +
                            std::to_string(line_no));
        for (const auto& f : fields) values.push_back(parse_double(f, path, line_no));
        ++rows;
    }
    if (rows != cols)
        throw Error(ErrorKind::NotSquare, path.string() + " has " + std::to_string(rows) +
                                              " rows and " + std::to_string(cols) + " columns");
    return validate(std::move(values), rows);
}

void write_matrix_csv(const fs::path& path, const DissimilarityMatrix& D) {
    auto out = open_output(path);
    for (int i = 0; i < D.n; ++i) {
        for (int j = 0; j < D.n; ++j) {
            if (j) out << ',';
            out << format_double(D.at(i, j));
        }
        out << '\n';
    }
}

SimpleGraph load_edge_list(const fs::path& path, bool one_based) {
    auto in = open_input(path);
    std::vector<std::pair<int, int>> edges;
    std::string line;
    int line_no = 0;
    int max_node = -1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        long a = 0, b = 0;
        if (!(fields >> a >> b))
            throw Error(ErrorKind::ParseError,
                        "expected 'src dst' in " + path.string() + ":" + std::to_string(line_no));
        if (one_based) {
            --a;
            --b;
        }
        if (a < 0 || b < 0)
            throw Error(ErrorKind::ParseError, "negative node index in " + path.string() + ":" +
                                                   std::to_string(line_no));
        edges.push_back({static_cast<int>(a), static_cast<int>(b)});
        max_node = std::max(max_node, static_cast<int>(std::max(a, b)));
    }
    if (edges.empty()) throw Error(ErrorKind::ParseError, "no edges in " + path.string());
    return make_graph(max_node + 1, std::move(edges));
}

std::vector<std::string> load_labels_csv(const fs::path& path, int expected_n, bool one_based) {
    auto in = open_input(path);
    std::vector<std::string> labels(expected_n);
    std::vector<bool> seen(expected_n, false);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 2)
            throw Error(ErrorKind::ParseError, "expected 'node_id,label' in " + path.string() +
                                                   ":" + std::to_string(line_no));
        if (line_no == 1 && fields[0] == "node_id") continue;  // optional header
        long id = parse_long(fields[0], path, line_no);
        if (one_based) --id;
        if (id < 0 || id >= expected_n)
            throw Error(ErrorKind::ParseError, "node id out of range in " + path.string() + ":" +
                                                   std::to_string(line_no));
        labels[id] = fields[1];
        seen[id] = true;
    }
    for (int i = 0; i < expected_n; ++i)
        if (!seen[i])
            throw Error(ErrorKind::ParseError,
                        "missing label for node " + std::to_string(i) + " in " + path.string());
    return labels;
}

DnaSequenceSet load_fasta(const fs::path& path) {
    auto in = open_input(path);
    std::vector<std::string> ids;
    std::vector<std::string> sequences;
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '>') {
            std::string id = line.substr(1);
            auto space = id.find_first_of(" \t");
            if (space != std::string::npos) id = id.substr(0, space);
            ids.push_back(id);
            sequences.emplace_back();
            continue;
        }
        if (sequences.empty())
            throw Error(ErrorKind::ParseError, "sequence data before any '>' header in " +
                                                   path.string());
        sequences.back() += line;
    }
    if (sequences.empty())
        throw Error(ErrorKind::ParseError, "no sequences in " + path.string());
    return make_sequence_set(std::move(ids), std::move(sequences));
}

void write_fasta(const fs::path& path, const DnaSequenceSet& seqs) {
    auto out = open_output(path);
    for (int i = 0; i < seqs.size(); ++i) {
        out << '>' << seqs.ids[i] << '\n';
        const std::string& s = seqs.sequences[i];
        for (std::size_t pos = 0; pos < s.size(); pos += 70)
            out << s.substr(pos, 70) << '\n';
    }
}

void write_trained_map(const fs::path& dir, const TrainedMap& map) {
    std::error_code ec;
    fs::create_directories(dir, ec);

    {
        auto out = open_output(dir / "assignments.csv");
        out << "observation_id,unit,row,col\n";
        for (std::size_t i = 0; i < map.assignments.size(); ++i) {
            int u = map.assignments[i];
            out << i << ',' << u << ',' << map.grid.row_of(u) << ',' << map.grid.col_of(u)
                << '\n';
        }
    }
    {
        auto out = open_output(dir / "history.csv");
        out << "iteration,quantization_error\n";
        for (const auto& h : map.history)
            out << h.iteration << ',' << format_double(h.quantization_error) << '\n';
    }
    switch (map.variant) {
        case MapVariant::OnlineRelational:
        case MapVariant::BatchRelational: {
            auto out = open_output(dir / "coefficients.csv");
            for (int u = 0; u < map.coefficients.units; ++u) {
                const double* row = map.coefficients.row(u);
                for (int j = 0; j < map.coefficients.n; ++j) {
                    if (j) out << ',';
                    out << format_double(row[j]);
                }
                out << '\n';
            }
            break;
        }
        case MapVariant::EuclideanOnline: {
            auto out = open_output(dir / "prototypes.csv");
            for (int u = 0; u < map.grid.units(); ++u) {
                for (int d = 0; d < map.prototype_dim; ++d) {
                    if (d) out << ',';
                    out << format_double(
                        map.prototypes[static_cast<std::size_t>(u) * map.prototype_dim + d]);
                }
                out << '\n';
            }
            break;
        }
        case MapVariant::BatchMedian: {
            auto out = open_output(dir / "medoids.csv");
            out << "unit,observation_id\n";
            for (std::size_t u = 0; u < map.medoids.size(); ++u)
                out << u << ',' << map.medoids[u] << '\n';
            break;
        }
    }
    {
        nlohmann::ordered_json meta;
        meta["variant"] = variant_name(map.variant);
        meta["seed"] = map.seed;
        meta["n"] = map.assignments.size();
        meta["grid.rows"] = map.grid.rows;
        meta["grid.cols"] = map.grid.cols;
        meta["iterations"] = map.iterations;
        meta["alpha0"] = map.alpha0;
        meta["plateaus"] = map.plateaus;
        if (map.variant == MapVariant::EuclideanOnline)
            meta["prototype_dim"] = map.prototype_dim;
        auto out = open_output(dir / "meta.json");
        out << meta.dump(2) << '\n';
    }
}

std::vector<int> load_assignments_csv(const fs::path& path) {
    auto in = open_input(path);
    std::vector<int> assignments;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (line_no == 1 && fields[0] == "observation_id") continue;
        if (fields.size() < 2)
            throw Error(ErrorKind::ParseError, "expected at least two columns in " +
                                                   path.string() + ":" + std::to_string(line_no));
        long id = parse_long(fields[0], path, line_no);
        if (id != static_cast<long>(assignments.size()))
            throw Error(ErrorKind::ParseError,
                        "observation ids must be dense and ordered in " + path.string());
        assignments.push_back(static_cast<int>(parse_long(fields[1], path, line_no)));
    }
    return assignments;
}

TrainedMap load_trained_map(const fs::path& dir) {
    TrainedMap map;
    {
        auto in = open_input(dir / "meta.json");
        nlohmann::json meta = nlohmann::json::parse(in);
        map.variant = variant_from_name(meta.at("variant").get<std::string>());
        map.seed = meta.at("seed").get<std::uint64_t>();
        map.grid.rows = meta.at("grid.rows").get<int>();
        map.grid.cols = meta.at("grid.cols").get<int>();
        map.iterations = meta.at("iterations").get<int>();
        map.alpha0 = meta.at("alpha0").get<double>();
        map.plateaus = meta.at("plateaus").get<int>();
        if (meta.contains("prototype_dim")) map.prototype_dim = meta["prototype_dim"].get<int>();
    }
    map.assignments = load_assignments_csv(dir / "assignments.csv");

    {
        auto in = open_input(dir / "history.csv");
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            strip_cr(line);
            if (line.empty()) continue;
            auto fields = split_csv(line);
            if (line_no == 1 && fields[0] == "iteration") continue;
            if (fields.size() != 2)
                throw Error(ErrorKind::ParseError, "bad history row in " + (dir / "history.csv").string());
            map.history.push_back({static_cast<int>(parse_long(fields[0], dir, line_no)),
                                   parse_double(fields[1], dir, line_no)});
        }
    }

    int units = map.grid.units();
    switch (map.variant) {
        case MapVariant::OnlineRelational:
        case MapVariant::BatchRelational: {
            auto in = open_input(dir / "coefficients.csv");
            std::string line;
            int line_no = 0;
            std::vector<double> data;
            int n = 0;
            while (std::getline(in, line)) {
                ++line_no;
                strip_cr(line);
                if (line.empty()) continue;
                auto fields = split_csv(line);
                if (n == 0) n = static_cast<int>(fields.size());
                for (const auto& f : fields) data.push_back(parse_double(f, dir, line_no));
            }
            if (static_cast<int>(data.size()) != units * n)
                throw Error(ErrorKind::ParseError, "coefficients.csv does not match the grid");
            map.coefficients.units = units;
            map.coefficients.n = n;
            map.coefficients.data = std::move(data);
            break;
        }
        case MapVariant::EuclideanOnline: {
            auto in = open_input(dir / "prototypes.csv");
            std::string line;
            int line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                strip_cr(line);
                if (line.empty()) continue;
                for (const auto& f : split_csv(line))
                    map.prototypes.push_back(parse_double(f, dir, line_no));
            }
            if (map.prototype_dim > 0 &&
                static_cast<int>(map.prototypes.size()) != units * map.prototype_dim)
                throw Error(ErrorKind::ParseError, "prototypes.csv does not match the grid");
            break;
        }
        case MapVariant::BatchMedian: {
            auto in = open_input(dir / "medoids.csv");
            std::string line;
            int line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                strip_cr(line);
                if (line.empty()) continue;
                auto fields = split_csv(line);
                if (line_no == 1 && fields[0] == "unit") continue;
                if (fields.size() != 2)
                    throw Error(ErrorKind::ParseError, "bad medoid row");
                map.medoids.push_back(static_cast<int>(parse_long(fields[1], dir, line_no)));
            }
            break;
        }
    }
    return map;
}

void write_report(const fs::path& dir, const MapReport& report, const MapGrid& grid) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    {
        auto out = open_output(dir / "report.txt");
        out << "n=" << report.n << '\n';
        out << "units=" << report.units << '\n';
        out << "quantization_error=" << format_double(report.quantization_error) << '\n';
        out << "topographic_error=" << format_double(report.topographic_error) << '\n';
        out << "empty_unit_count=" << report.empty_unit_count << '\n';
        if (report.has_labels) out << "purity=" << format_double(report.purity) << '\n';
    }
    {
        auto out = open_output(dir / "report_units.csv");
        out << "unit,row,col,size,majority_label,purity\n";
        for (int u = 0; u < report.units; ++u) {
            out << u << ',' << grid.row_of(u) << ',' << grid.col_of(u) << ','
                << report.cluster_sizes[u] << ',';
            if (report.has_labels && report.cluster_sizes[u] > 0) {
                out << report.unit_majority_label[u] << ','
                    << format_double(report.unit_purity[u]);
            } else {
                out << ',';
            }
            out << '\n';
        }
    }
}

void write_neighbor_distances(const fs::path& path, const NeighborDistanceMap& ndm) {
    auto out = open_output(path);
    out << "u,v,mean_dissimilarity,defined\n";
    for (const auto& e : ndm.entries) {
        out << e.u << ',' << e.v << ',';
        if (e.defined) out << format_double(e.mean_dissimilarity);
        out << ',' << (e.defined ? 1 : 0) << '\n';
    }
}

void write_text_file(const fs::path& path, const std::string& content) {
    auto out = open_output(path);
    out << content;
}

std::string read_text_file(const fs::path& path) {
    auto in = open_input(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace rsom
