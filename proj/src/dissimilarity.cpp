#include "rsom/dissimilarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "rsom/error.hpp"
#include "parallel.hpp"

namespace rsom {

namespace {

std::string pair_text(long i, long j) {
    return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

double squared_distance(const double* a, const double* b, int dim) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

// Connected component sizes of an adjacency-list graph, largest first.
std::vector<int> component_sizes(const std::vector<std::vector<int>>& adjacency) {
    int n = static_cast<int>(adjacency.size());
    std::vector<int> component(n, -1);
    std::vector<int> sizes;
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (component[start] >= 0) continue;
        int id = static_cast<int>(sizes.size());
        int size = 0;
        stack.push_back(start);
        component[start] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++size;
            for (int w : adjacency[v]) {
                if (component[w] < 0) {
                    component[w] = id;
                    stack.push_back(w);
                }
            }
        }
        sizes.push_back(size);
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    return sizes;
}

std::string sizes_text(const std::vector<int>& sizes) {
    std::string out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(sizes[i]);
    }
    return out;
}

} // namespace

DissimilarityMatrix validate(std::vector<double> raw, int n, std::vector<std::string> labels) {
    if (n < 1 || raw.size() != static_cast<std::size_t>(n) * n)
        throw Error(ErrorKind::NotSquare,
                    "expected " + std::to_string(n) + "x" + std::to_string(n) +
                        " entries, got " + std::to_string(raw.size()));
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(n))
        throw Error(ErrorKind::InvalidArgument, "label count does not match matrix order");

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double v = raw[static_cast<std::size_t>(i) * n + j];
            if (!std::isfinite(v))
                throw Error(ErrorKind::NonFiniteEntry, "entry " + pair_text(i, j), i, j);
            if (v < 0.0)
                throw Error(ErrorKind::NegativeEntry, "entry " + pair_text(i, j), i, j);
        }
    }
    for (int i = 0; i < n; ++i) {
        double d = raw[static_cast<std::size_t>(i) * n + i];
        if (std::abs(d) > 1e-12)
            throw Error(ErrorKind::NonZeroDiagonal,
                        "entry (" + std::to_string(i) + ") = " + std::to_string(d), i, i);
        raw[static_cast<std::size_t>(i) * n + i] = 0.0;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double a = raw[static_cast<std::size_t>(i) * n + j];
            double b = raw[static_cast<std::size_t>(j) * n + i];
            if (a == b) continue;
            double tolerance = 1e-9 * std::max(std::abs(a), std::abs(b));
            if (std::abs(a - b) > tolerance)
                throw Error(ErrorKind::AsymmetryBeyondTolerance,
                            "entries " + pair_text(i, j) + " and " + pair_text(j, i), i, j);
            double mean = 0.5 * (a + b);
            raw[static_cast<std::size_t>(i) * n + j] = mean;
            raw[static_cast<std::size_t>(j) * n + i] = mean;
        }
    }

    DissimilarityMatrix out;
    out.n = n;
    out.values = std::move(raw);
    out.labels = std::move(labels);
    return out;
}

SimpleGraph make_graph(int num_nodes, std::vector<std::pair<int, int>> edges,
                       std::vector<std::string> labels) {
    if (num_nodes < 1)
        throw Error(ErrorKind::InvalidArgument, "graph needs at least one node");
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(num_nodes))
        throw Error(ErrorKind::InvalidArgument, "label count does not match node count");
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes)
            throw Error(ErrorKind::InvalidArgument,
                        "edge endpoint out of range: " + pair_text(u, v));
        if (u == v)
            throw Error(ErrorKind::InvalidArgument, "self-loop at node " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw Error(ErrorKind::InvalidArgument, "duplicate edge " + pair_text(u, v));
    }
    SimpleGraph g;
    g.num_nodes = num_nodes;
    g.edges = std::move(edges);
    g.labels = std::move(labels);
    return g;
}

DnaSequenceSet make_sequence_set(std::vector<std::string> ids,
                                 std::vector<std::string> sequences) {
    if (sequences.empty())
        throw Error(ErrorKind::InvalidArgument, "empty sequence set");
    if (ids.size() != sequences.size())
        throw Error(ErrorKind::InvalidArgument, "id count does not match sequence count");
    std::size_t length = sequences[0].size();
    if (length == 0)
        throw Error(ErrorKind::InvalidArgument, "sequences must have length >= 1");
    for (auto& seq : sequences) {
        if (seq.size() != length)
            throw Error(ErrorKind::InvalidArgument,
                        "aligned sequences must share one length (got " +
                            std::to_string(seq.size()) + " and " + std::to_string(length) + ")");
        for (auto& c : seq) {
            char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            c = (lower == 'a' || lower == 'c' || lower == 'g' || lower == 't') ? lower : '-';
        }
    }
    DnaSequenceSet out;
    out.ids = std::move(ids);
    out.sequences = std::move(sequences);
    return out;
}

DissimilarityMatrix squared_euclidean(const PointCloud& points) {
    int n = points.n;
    DissimilarityMatrix out;
    out.n = n;
    out.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d = squared_distance(points.point(i), points.point(j), points.dim);
            out.values[static_cast<std::size_t>(i) * n + j] = d;
            out.values[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    return out;
}

DissimilarityMatrix geodesic_dissimilarity(const PointCloud& points, int k, int num_threads) {
    int n = points.n;
    if (k < 1)
        throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
    if (k >= n)
        throw Error(ErrorKind::KTooLarge,
                    "k = " + std::to_string(k) + " with only " + std::to_string(n) + " points");

    // k nearest neighbors per point, ties broken by lower index.
    std::vector<std::vector<int>> nearest(n);
    {
        std::vector<std::pair<double, int>> order(n - 1);
        for (int i = 0; i < n; ++i) {
            int m = 0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                order[m++] = {squared_distance(points.point(i), points.point(j), points.dim), j};
            }
            std::partial_sort(order.begin(), order.begin() + k, order.end());
            nearest[i].reserve(k);
            for (int t = 0; t < k; ++t) nearest[i].push_back(order[t].second);
        }
    }

    // Symmetric OR-rule adjacency with plain Euclidean weights.
    std::vector<std::vector<std::pair<int, double>>> adjacency(n);
    {
        std::set<std::pair<int, int>> edge_set;
        for (int i = 0; i < n; ++i)
            for (int j : nearest[i]) edge_set.insert({std::min(i, j), std::max(i, j)});
        for (auto [a, b] : edge_set) {
            double w = std::sqrt(squared_distance(points.point(a), points.point(b), points.dim));
            adjacency[a].push_back({b, w});
            adjacency[b].push_back({a, w});
        }
    }

    {
        std::vector<std::vector<int>> plain(n);
        for (int i = 0; i < n; ++i)
            for (auto [j, w] : adjacency[i]) plain[i].push_back(j);
        auto sizes = component_sizes(plain);
        if (sizes.size() > 1)
            throw Error(ErrorKind::DisconnectedNeighborGraph,
                        "neighbor graph has " + std::to_string(sizes.size()) +
                            " components of sizes " + sizes_text(sizes) +
                            "; raise k to connect them");
    }

    // Dijkstra per source; the result is mirrored from the lower source index
    // so the matrix is symmetric bit-exactly.
    std::vector<double> dist_rows(static_cast<std::size_t>(n) * n);
    detail::parallel_for(n, num_threads, [&](int source) {
        double* dist = dist_rows.data() + static_cast<std::size_t>(source) * n;
        std::fill(dist, dist + n, std::numeric_limits<double>::infinity());
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        dist[source] = 0.0;
        heap.push({0.0, source});
        while (!heap.empty()) {
            auto [d, v] = heap.top();
            heap.pop();
            if (d > dist[v]) continue;
            for (auto [w, weight] : adjacency[v]) {
                double candidate = d + weight;
                if (candidate < dist[w]) {
                    dist[w] = candidate;
                    heap.push({candidate, w});
                }
            }
        }
    });

    DissimilarityMatrix out;
    out.n = n;
    out.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d = dist_rows[static_cast<std::size_t>(i) * n + j];
            out.values[static_cast<std::size_t>(i) * n + j] = d;
            out.values[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    return out;
}

DissimilarityMatrix graph_shortest_path_dissimilarity(const SimpleGraph& g) {
    int n = g.num_nodes;
    std::vector<std::vector<int>> adjacency(n);
    for (auto [u, v] : g.edges) {
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
    }
    auto sizes = component_sizes(adjacency);
    if (sizes.size() > 1)
        throw Error(ErrorKind::DisconnectedGraph,
                    "graph has " + std::to_string(sizes.size()) + " components of sizes " +
                        sizes_text(sizes));

    DissimilarityMatrix out;
    out.n = n;
    out.labels = g.labels;
    out.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<int> hops(n);
    std::vector<int> queue(n);
    for (int source = 0; source < n; ++source) {
        std::fill(hops.begin(), hops.end(), -1);
        hops[source] = 0;
        int head = 0, tail = 0;
        queue[tail++] = source;
        while (head < tail) {
            int v = queue[head++];
            for (int w : adjacency[v]) {
                if (hops[w] < 0) {
                    hops[w] = hops[v] + 1;
                    queue[tail++] = w;
                }
            }
        }
        for (int j = 0; j < n; ++j)
            out.values[static_cast<std::size_t>(source) * n + j] = hops[j];
    }
    return out;
}

DissimilarityMatrix kimura2p_dissimilarity(const DnaSequenceSet& seqs) {
    auto is_base = [](char c) { return c == 'a' || c == 'c' || c == 'g' || c == 't'; };
    auto is_transition = [](char a, char b) {
        return (a == 'a' && b == 'g') || (a == 'g' && b == 'a') ||
               (a == 'c' && b == 't') || (a == 't' && b == 'c');
    };

    int n = seqs.size();
    int length = seqs.length();
    DissimilarityMatrix out;
    out.n = n;
    out.labels = seqs.ids;
    out.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        const std::string& a = seqs.sequences[i];
        for (int j = i + 1; j < n; ++j) {
            const std::string& b = seqs.sequences[j];
            long comparable = 0, transitions = 0, transversions = 0;
            for (int s = 0; s < length; ++s) {
                if (!is_base(a[s]) || !is_base(b[s])) continue;
                ++comparable;
                if (a[s] == b[s]) continue;
                if (is_transition(a[s], b[s]))
                    ++transitions;
                else
                    ++transversions;
            }
            if (comparable == 0)
                throw Error(ErrorKind::NoComparableSites,
                            "sequences " + pair_text(i, j) + " share no gap-free site", i, j);
            double p = static_cast<double>(transitions) / static_cast<double>(comparable);
            double q = static_cast<double>(transversions) / static_cast<double>(comparable);
            double inner = 1.0 - 2.0 * p - 2.0 * q;
            double outer = 1.0 - 2.0 * q;
            if (inner <= 0.0 || outer <= 0.0)
                throw Error(ErrorKind::UndefinedDistance,
                            "Kimura-2P saturated for sequences " + pair_text(i, j) +
                                " (P = " + std::to_string(p) + ", Q = " + std::to_string(q) + ")",
                            i, j);
            double d = -0.5 * std::log(inner * std::sqrt(outer)) + 0.0;  // +0.0 clears -0
            out.values[static_cast<std::size_t>(i) * n + j] = d;
            out.values[static_cast<std::size_t>(j) * n + i] = d;
        }
    }
    return out;
}

} // namespace rsom
