#include "rsom/svg_plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "rsom/error.hpp"

namespace rsom {

namespace {

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return buffer;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Frame {
    double min_x = 0, min_y = 0, scale = 1;
    double offset_x = 0, offset_y = 0, height = 0;

    double x(double v) const { return offset_x + (v - min_x) * scale; }
    double y(double v) const { return offset_y + height - (v - min_y) * scale; }  // flip y up
};

Frame fit_frame(const PointCloud& points, const std::vector<double>& protos,
                double offset_x, double offset_y, double size) {
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
    double lo_y = std::numeric_limits<double>::infinity(), hi_y = -lo_y;
    for (int i = 0; i < points.n; ++i) {
        lo_x = std::min(lo_x, points.at(i, 0));
        hi_x = std::max(hi_x, points.at(i, 0));
        lo_y = std::min(lo_y, points.at(i, 1));
        hi_y = std::max(hi_y, points.at(i, 1));
    }
    for (std::size_t u = 0; u + 1 < protos.size(); u += 2) {
        lo_x = std::min(lo_x, protos[u]);
        hi_x = std::max(hi_x, protos[u]);
        lo_y = std::min(lo_y, protos[u + 1]);
        hi_y = std::max(hi_y, protos[u + 1]);
    }
    double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    double pad = 0.05 * span;
    Frame f;
    f.min_x = lo_x - pad;
    f.min_y = lo_y - pad;
    f.scale = size / (span + 2 * pad);
    f.offset_x = offset_x;
    f.offset_y = offset_y;
    f.height = size;
    return f;
}

void draw_panel(std::string& svg, const PointCloud& points, const std::vector<double>& protos,
                const MapGrid& grid, const Frame& frame) {
    for (int i = 0; i < points.n; ++i) {
        svg += "<circle cx=\"" + fmt(frame.x(points.at(i, 0))) + "\" cy=\"" +
               fmt(frame.y(points.at(i, 1))) + "\" r=\"1.5\" fill=\"#b0bec5\"/>\n";
    }
    for (int u = 0; u < grid.units(); ++u) {
        int r = grid.row_of(u), c = grid.col_of(u);
        int neighbors[2] = {c + 1 < grid.cols ? grid.unit_at(r, c + 1) : -1,
                            r + 1 < grid.rows ? grid.unit_at(r + 1, c) : -1};
        for (int v : neighbors) {
            if (v < 0) continue;
            svg += "<line x1=\"" + fmt(frame.x(protos[2 * u])) + "\" y1=\"" +
                   fmt(frame.y(protos[2 * u + 1])) + "\" x2=\"" + fmt(frame.x(protos[2 * v])) +
                   "\" y2=\"" + fmt(frame.y(protos[2 * v + 1])) +
                   "\" stroke=\"#c62828\" stroke-width=\"1\"/>\n";
        }
    }
    for (int u = 0; u < grid.units(); ++u) {
        svg += "<circle cx=\"" + fmt(frame.x(protos[2 * u])) + "\" cy=\"" +
               fmt(frame.y(protos[2 * u + 1])) + "\" r=\"2.5\" fill=\"#263238\"/>\n";
    }
}

void check_2d(const PointCloud& points, const std::vector<double>& protos, int units) {
    if (points.dim != 2)
        throw Error(ErrorKind::DimensionNot2D,
                    "grid plots need 2D data, got dimension " + std::to_string(points.dim));
    if (protos.size() != static_cast<std::size_t>(units) * 2)
        throw Error(ErrorKind::DimensionMismatch, "expected one 2D position per unit");
}

std::string svg_open(double width, double height) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" "
           "width=\"" + fmt(width) + "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " +
           fmt(width) + " " + fmt(height) + "\">\n<rect width=\"100%\" height=\"100%\" "
           "fill=\"white\"/>\n";
}

} // namespace

std::string grid_plot_svg(const PointCloud& points, const std::vector<double>& prototypes_2d,
                          const MapGrid& grid, const std::string& title) {
    check_2d(points, prototypes_2d, grid.units());
    double size = 460;
    double top = title.empty() ? 10.0 : 30.0;
    std::string svg = svg_open(size + 20, size + top + 10);
    if (!title.empty())
        svg += "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" + title +
               "</text>\n";
    Frame frame = fit_frame(points, prototypes_2d, 10, top, size);
    draw_panel(svg, points, prototypes_2d, grid, frame);
    svg += "</svg>\n";
    return svg;
}

std::string grid_snapshots_svg(const PointCloud& points,
                               const std::vector<std::pair<int, std::vector<double>>>& snapshots,
                               const MapGrid& grid) {
    for (const auto& [iter, protos] : snapshots) check_2d(points, protos, grid.units());
    int count = static_cast<int>(snapshots.size());
    int cols = std::min(count, 3);
    int rows = (count + cols - 1) / cols;
    double panel = 300, label = 22, margin = 10;
    double width = cols * (panel + margin) + margin;
    double height = rows * (panel + label + margin) + margin;
    std::string svg = svg_open(width, height);
    for (int s = 0; s < count; ++s) {
        int pr = s / cols, pc = s % cols;
        double ox = margin + pc * (panel + margin);
        double oy = margin + pr * (panel + label + margin);
        svg += "<text x=\"" + fmt(ox) + "\" y=\"" + fmt(oy + 14) +
               "\" font-family=\"sans-serif\" font-size=\"12\">iteration " +
               std::to_string(snapshots[s].first) + "</text>\n";
        svg += "<rect x=\"" + fmt(ox) + "\" y=\"" + fmt(oy + label) + "\" width=\"" + fmt(panel) +
               "\" height=\"" + fmt(panel) + "\" fill=\"none\" stroke=\"#90a4ae\"/>\n";
        Frame frame = fit_frame(points, snapshots[s].second, ox + 4, oy + label + 4, panel - 8);
        draw_panel(svg, points, snapshots[s].second, grid, frame);
    }
    svg += "</svg>\n";
    return svg;
}

std::string polygon_distance_plot_svg(const NeighborDistanceMap& ndm) {
    const MapGrid& grid = ndm.grid;
    double cell = 48, margin = 12;
    double width = grid.cols * cell + 2 * margin;
    double height = grid.rows * cell + 2 * margin;

    double max_distance = 0.0;
    for (const auto& e : ndm.entries)
        if (e.defined) max_distance = std::max(max_distance, e.mean_dissimilarity);

    std::string svg = svg_open(width, height);
    for (int u = 0; u < grid.units(); ++u) {
        int r = grid.row_of(u), c = grid.col_of(u);
        double left = margin + c * cell, top = margin + r * cell;
        svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(cell) +
               "\" height=\"" + fmt(cell) + "\" fill=\"none\" stroke=\"#cfd8dc\"/>\n";

        double cx = left + cell / 2, cy = top + cell / 2, half = cell / 2;
        // up, right, down, left
        int dr[4] = {-1, 0, 1, 0};
        int dc[4] = {0, 1, 0, -1};
        double vx[4], vy[4];
        bool undefined[4] = {false, false, false, false};
        for (int dir = 0; dir < 4; ++dir) {
            int nr = r + dr[dir], nc = c + dc[dir];
            double norm = 0.0;  // 0 => cell edge, 1 => cell center
            if (nr >= 0 && nr < grid.rows && nc >= 0 && nc < grid.cols) {
                const auto* entry = ndm.find(u, grid.unit_at(nr, nc));
                if (entry != nullptr && entry->defined) {
                    norm = max_distance > 0.0 ? entry->mean_dissimilarity / max_distance : 0.0;
                } else {
                    undefined[dir] = true;
                }
            }
            double reach = half * (1.0 - norm);
            vx[dir] = cx + dc[dir] * reach;
            vy[dir] = cy + dr[dir] * reach;
        }
        svg += "<polygon points=\"";
        for (int dir = 0; dir < 4; ++dir) {
            if (dir) svg += ' ';
            svg += fmt(vx[dir]) + "," + fmt(vy[dir]);
        }
        svg += "\" fill=\"#80cbc4\" fill-opacity=\"0.6\" stroke=\"#00695c\"/>\n";
        for (int dir = 0; dir < 4; ++dir) {
            if (!undefined[dir]) continue;
            // dashed tick across the vertex marks a pair without data
            double tx = dr[dir] != 0 ? 6.0 : 0.0;
            double ty = dc[dir] != 0 ? 6.0 : 0.0;
            svg += "<line x1=\"" + fmt(vx[dir] - tx) + "\" y1=\"" + fmt(vy[dir] - ty) +
                   "\" x2=\"" + fmt(vx[dir] + tx) + "\" y2=\"" + fmt(vy[dir] + ty) +
                   "\" stroke=\"#e53935\" stroke-dasharray=\"2,2\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

std::string label_distribution_svg(const std::vector<int>& assignments,
                                   const std::vector<std::string>& labels,
                                   const MapGrid& grid) {
    if (assignments.size() != labels.size())
        throw Error(ErrorKind::DimensionMismatch, "labels do not match assignments");

    std::set<std::string> unique(labels.begin(), labels.end());
    std::map<std::string, int> color_of;
    int next = 0;
    for (const auto& label : unique)
        color_of[label] = next++ % static_cast<int>(std::size(kPalette));

    std::vector<std::map<std::string, int>> counts(grid.units());
    std::vector<int> sizes(grid.units(), 0);
    int max_size = 1;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        ++counts[assignments[i]][labels[i]];
        max_size = std::max(max_size, ++sizes[assignments[i]]);
    }

    double cell = 48, margin = 12, legend = 24;
    double width = grid.cols * cell + 2 * margin;
    double height = grid.rows * cell + 2 * margin + legend * ((unique.size() + 2) / 3);
    std::string svg = svg_open(width, height);
    for (int u = 0; u < grid.units(); ++u) {
        int r = grid.row_of(u), c = grid.col_of(u);
        double left = margin + c * cell, top = margin + r * cell;
        svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(cell) +
               "\" height=\"" + fmt(cell) + "\" fill=\"none\" stroke=\"#cfd8dc\"/>\n";
        if (sizes[u] == 0) continue;
        double bar_width = (cell - 8) * std::sqrt(static_cast<double>(sizes[u]) / max_size);
        double bar_height = 12;
        double x = left + (cell - bar_width) / 2;
        double y = top + (cell - bar_height) / 2;
        for (const auto& [label, count] : counts[u]) {
            double w = bar_width * count / sizes[u];
            svg += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) +
                   "\" height=\"" + fmt(bar_height) + "\" fill=\"" +
                   kPalette[color_of[label]] + "\"/>\n";
            x += w;
        }
    }
    double lx = margin, ly = grid.rows * cell + 2 * margin;
    int column = 0;
    for (const auto& label : unique) {
        svg += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly) +
               "\" width=\"12\" height=\"12\" fill=\"" + kPalette[color_of[label]] + "\"/>\n";
        svg += "<text x=\"" + fmt(lx + 16) + "\" y=\"" + fmt(ly + 10) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + label + "</text>\n";
        lx += (grid.cols * cell) / 3.0;
        if (++column % 3 == 0) {
            lx = margin;
            ly += legend;
        }
    }
    svg += "</svg>\n";
    return svg;
}

namespace {

double orientation(double ax, double ay, double bx, double by, double cx, double cy) {
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

bool within_box(double ax, double ay, double bx, double by, double px, double py) {
    return std::min(ax, bx) <= px && px <= std::max(ax, bx) &&
           std::min(ay, by) <= py && py <= std::max(ay, by);
}

} // namespace

bool segments_intersect(double ax, double ay, double bx, double by,
                        double cx, double cy, double dx, double dy) {
    double d1 = orientation(cx, cy, dx, dy, ax, ay);
    double d2 = orientation(cx, cy, dx, dy, bx, by);
    double d3 = orientation(ax, ay, bx, by, cx, cy);
    double d4 = orientation(ax, ay, bx, by, dx, dy);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && within_box(cx, cy, dx, dy, ax, ay)) return true;
    if (d2 == 0 && within_box(cx, cy, dx, dy, bx, by)) return true;
    if (d3 == 0 && within_box(ax, ay, bx, by, cx, cy)) return true;
    if (d4 == 0 && within_box(ax, ay, bx, by, dx, dy)) return true;
    return false;
}

int count_lattice_crossings(const std::vector<double>& prototypes_2d, const MapGrid& grid) {
    if (prototypes_2d.size() != static_cast<std::size_t>(grid.units()) * 2)
        throw Error(ErrorKind::DimensionMismatch, "expected one 2D position per unit");
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < grid.units(); ++u) {
        int r = grid.row_of(u), c = grid.col_of(u);
        if (c + 1 < grid.cols) edges.push_back({u, grid.unit_at(r, c + 1)});
        if (r + 1 < grid.rows) edges.push_back({u, grid.unit_at(r + 1, c)});
    }
    int crossings = 0;
    for (std::size_t a = 0; a < edges.size(); ++a) {
        for (std::size_t b = a + 1; b < edges.size(); ++b) {
            auto [u1, v1] = edges[a];
            auto [u2, v2] = edges[b];
            if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) continue;
            if (segments_intersect(prototypes_2d[2 * u1], prototypes_2d[2 * u1 + 1],
                                   prototypes_2d[2 * v1], prototypes_2d[2 * v1 + 1],
                                   prototypes_2d[2 * u2], prototypes_2d[2 * u2 + 1],
                                   prototypes_2d[2 * v2], prototypes_2d[2 * v2 + 1]))
                ++crossings;
        }
    }
    return crossings;
}

} // namespace rsom
