#include <doctest.h>

#include <cmath>
#include <set>

#include "rsom/dissimilarity.hpp"
#include "rsom/error.hpp"
#include "rsom/generators.hpp"
#include "rsom/rng.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace rsom;

namespace {

PointCloud random_cloud(int n, int dim, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
    Rng rng(seed);
    PointCloud out;
    out.n = n;
    out.dim = dim;
    out.coords.resize(static_cast<std::size_t>(n) * dim);
    for (auto& c : out.coords) c = rng.uniform(lo, hi);
    return out;
}

} // namespace

TEST_CASE("validate accepts the smallest symmetric case") {
    auto D = validate({0, 1, 1, 0}, 2);
    CHECK(D.n == 2);
    CHECK(D.at(0, 1) == 1.0);
    CHECK(D.at(1, 1) == 0.0);
}

TEST_CASE("validate rejects asymmetry beyond tolerance") {
    CHECK_THROWS_WITH_AS(validate({0, 1, 2, 0}, 2), doctest::Contains("Asymmetry"), Error);
    try {
        validate({0, 1, 2, 0}, 2);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AsymmetryBeyondTolerance);
    }
}

TEST_CASE("validate rejects negative entries") {
    try {
        validate({0, -1, -1, 0}, 2);
        FAIL("expected NegativeEntry");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NegativeEntry);
    }
}

TEST_CASE("validate rejects non-square, non-finite and non-zero diagonals") {
    CHECK_THROWS_AS(validate({0, 1, 1}, 2), Error);
    try {
        validate({0, std::nan(""), std::nan(""), 0}, 2);
        FAIL("expected NonFiniteEntry");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFiniteEntry);
    }
    try {
        validate({0.5, 1, 1, 0}, 2);
        FAIL("expected NonZeroDiagonal");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonZeroDiagonal);
    }
}

TEST_CASE("validate symmetrizes tiny asymmetries and cleans the diagonal") {
    double a = 1.0, b = 1.0 + 1e-12;
    auto D = validate({1e-13, a, b, -0.0}, 2);
    CHECK(D.at(0, 1) == D.at(1, 0));
    CHECK(D.at(0, 0) == 0.0);
    CHECK(!std::signbit(D.at(1, 1)));
}

TEST_CASE("squared_euclidean on the 3-4-5 triangle") {
    PointCloud p;
    p.n = 2;
    p.dim = 2;
    p.coords = {0, 0, 3, 4};
    auto D = squared_euclidean(p);
    CHECK(D.at(0, 1) == doctest::Approx(25.0).epsilon(1e-15));
}

TEST_CASE("squared_euclidean of a single point is the 1x1 zero matrix") {
    PointCloud p;
    p.n = 1;
    p.dim = 3;
    p.coords = {1, 2, 3};
    auto D = squared_euclidean(p);
    CHECK(D.n == 1);
    CHECK(D.at(0, 0) == 0.0);
}

TEST_CASE("squared_euclidean matches the naive pairwise oracle") {
    auto points = random_cloud(5, 3, 42);
    auto D = squared_euclidean(points);
    auto expected = oracle::pairwise_squared(points);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(D.at(i, j) == doctest::Approx(expected[i * 5 + j]).epsilon(1e-12));
}

TEST_CASE("builder outputs pass validate unchanged") {
    auto points = random_cloud(12, 2, 7);
    auto check_unchanged = [](const DissimilarityMatrix& D) {
        auto revalidated = validate(D.values, D.n);
        CHECK(revalidated.values == D.values);
    };
    check_unchanged(squared_euclidean(points));
    check_unchanged(geodesic_dissimilarity(points, 11));
    check_unchanged(graph_shortest_path_dissimilarity(synthetic::make_copurchase_graph()));
    check_unchanged(kimura2p_dissimilarity(synthetic::make_clustered_sequences(2, 4, 120, 11)));
}

TEST_CASE("square-rooted euclidean dissimilarities satisfy the triangle inequality") {
    auto points = random_cloud(14, 3, 99);
    auto D = squared_euclidean(points);
    for (int i = 0; i < D.n; ++i)
        for (int j = 0; j < D.n; ++j)
            for (int k = 0; k < D.n; ++k) {
                double lhs = std::sqrt(D.at(i, j));
                double rhs = std::sqrt(D.at(i, k)) + std::sqrt(D.at(k, j));
                CHECK(lhs <= rhs + 1e-9);
            }
}

TEST_CASE("geodesic on three collinear points routes through the middle") {
    PointCloud p;
    p.n = 3;
    p.dim = 1;
    p.coords = {0, 1, 2};
    auto D = geodesic_dissimilarity(p, 1);
    CHECK(D.at(0, 2) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(D.at(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("geodesic with k = n-1 equals plain euclidean distances") {
    auto points = random_cloud(10, 2, 5);
    auto geo = geodesic_dissimilarity(points, 9);
    auto sq = squared_euclidean(points);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            CHECK(geo.at(i, j) == doctest::Approx(std::sqrt(sq.at(i, j))).epsilon(1e-12));
}

TEST_CASE("geodesic errors") {
    auto points = random_cloud(6, 2, 1);
    try {
        geodesic_dissimilarity(points, 6);
        FAIL("expected KTooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::KTooLarge);
    }

    // two clusters far apart, k = 1 keeps them separate
    PointCloud split;
    split.n = 6;
    split.dim = 2;
    split.coords = {0, 0, 0.1, 0, 0, 0.1, 100, 100, 100.1, 100, 100, 100.1};
    try {
        geodesic_dissimilarity(split, 1);
        FAIL("expected DisconnectedNeighborGraph");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DisconnectedNeighborGraph);
        CHECK(doctest::String(e.what()) == doctest::Contains("3"));
    }
}

TEST_CASE("geodesic entries are non-increasing in k") {
    // points on a noisy arc so that even k = 2 connects
    Rng rng(3);
    PointCloud points;
    points.n = 60;
    points.dim = 2;
    points.coords.resize(120);
    for (int i = 0; i < 60; ++i) {
        double t = static_cast<double>(i) / 59.0 * 3.0;
        points.coords[2 * i] = std::cos(t) + 0.01 * rng.uniform01();
        points.coords[2 * i + 1] = std::sin(t) + 0.01 * rng.uniform01();
    }
    auto d2 = geodesic_dissimilarity(points, 2);
    auto d5 = geodesic_dissimilarity(points, 5);
    auto d10 = geodesic_dissimilarity(points, 10);
    for (int i = 0; i < points.n; ++i)
        for (int j = 0; j < points.n; ++j) {
            CHECK(d5.at(i, j) <= d2.at(i, j) + 1e-12);
            CHECK(d10.at(i, j) <= d5.at(i, j) + 1e-12);
        }
}

TEST_CASE("geodesic matches a Bellman-Ford oracle on a small cloud") {
    auto points = random_cloud(25, 2, 17);
    int k = 3;
    auto D = geodesic_dissimilarity(points, k);

    // rebuild the K-rule edge set independently
    std::vector<std::array<double, 3>> edges;
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < points.n; ++i) {
        std::vector<std::pair<double, int>> order;
        for (int j = 0; j < points.n; ++j) {
            if (j == i) continue;
            double s = 0;
            for (int d = 0; d < 2; ++d) {
                double diff = points.at(i, d) - points.at(j, d);
                s += diff * diff;
            }
            order.push_back({s, j});
        }
        std::sort(order.begin(), order.end());
        for (int t = 0; t < k; ++t) {
            int j = order[t].second;
            auto key = std::make_pair(std::min(i, j), std::max(i, j));
            if (seen.insert(key).second)
                edges.push_back({static_cast<double>(key.first), static_cast<double>(key.second),
                                 std::sqrt(order[t].first)});
        }
    }
    for (int source = 0; source < points.n; ++source) {
        auto dist = oracle::bellman_ford(points.n, edges, source);
        for (int j = 0; j < points.n; ++j)
            CHECK(D.at(source, j) == doctest::Approx(dist[j]).epsilon(1e-9));
    }
}

TEST_CASE("geodesic is internally parallel without changing results") {
    auto points = random_cloud(40, 3, 23);
    auto serial = geodesic_dissimilarity(points, 4, 1);
    auto parallel = geodesic_dissimilarity(points, 4, 4);
    CHECK(serial.values == parallel.values);
}

TEST_CASE("swiss roll geodesic stays connected and stretches beyond euclidean") {
    auto roll = generate_swiss_roll(1000, 2024);
    auto D = geodesic_dissimilarity(roll, 10, 4);
    auto sq = squared_euclidean(roll);
    double max_geo = 0, max_euc = 0;
    for (int i = 0; i < roll.n; ++i)
        for (int j = 0; j < roll.n; ++j) {
            max_geo = std::max(max_geo, D.at(i, j));
            max_euc = std::max(max_euc, std::sqrt(sq.at(i, j)));
        }
    CHECK(max_geo > max_euc);
}

TEST_CASE("shortest-path dissimilarity on a path graph") {
    auto g = make_graph(3, {{0, 1}, {1, 2}});
    auto D = graph_shortest_path_dissimilarity(g);
    CHECK(D.at(0, 2) == 2.0);
    CHECK(D.at(0, 1) == 1.0);
}

TEST_CASE("shortest-path dissimilarity on a complete graph") {
    auto g = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    auto D = graph_shortest_path_dissimilarity(g);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(D.at(i, j) == (i == j ? 0.0 : 1.0));
}

TEST_CASE("shortest-path dissimilarity rejects disconnected graphs") {
    auto g = make_graph(4, {{0, 1}, {2, 3}});
    try {
        graph_shortest_path_dissimilarity(g);
        FAIL("expected DisconnectedGraph");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DisconnectedGraph);
    }
}

TEST_CASE("shortest-path hop counts obey the triangle inequality exactly") {
    auto g = synthetic::make_copurchase_graph();
    auto D = graph_shortest_path_dissimilarity(g);
    for (int i = 0; i < D.n; i += 7)
        for (int j = 0; j < D.n; j += 5)
            for (int k = 0; k < D.n; k += 3)
                CHECK(D.at(i, j) <= D.at(i, k) + D.at(k, j));
}

TEST_CASE("co-purchase graph shortest paths match the Floyd-Warshall oracle") {
    auto g = synthetic::make_copurchase_graph();
    CHECK(g.num_nodes == 105);
    CHECK(g.edges.size() == 441);
    auto D = graph_shortest_path_dissimilarity(g);
    auto expected = oracle::floyd_warshall_hops(g);
    for (int i = 0; i < g.num_nodes; ++i)
        for (int j = 0; j < g.num_nodes; ++j)
            CHECK(D.at(i, j) == expected[static_cast<std::size_t>(i) * g.num_nodes + j]);
}

TEST_CASE("graph construction rejects malformed edges") {
    CHECK_THROWS_AS(make_graph(3, {{0, 0}}), Error);
    CHECK_THROWS_AS(make_graph(3, {{0, 1}, {1, 0}}), Error);
    CHECK_THROWS_AS(make_graph(3, {{0, 5}}), Error);
}

TEST_CASE("kimura2p hand-checked values") {
    auto seqs = make_sequence_set({"a", "b", "c"}, {"aaaa", "gaaa", "caaa"});
    auto D = kimura2p_dissimilarity(seqs);
    // transition a<->g: P = 1/4
    CHECK(D.at(0, 1) == doctest::Approx(0.34657359027997264).epsilon(1e-12));
    // transversion a<->c: Q = 1/4
    CHECK(D.at(0, 2) == doctest::Approx(0.5198603854199589).epsilon(1e-12));
}

TEST_CASE("kimura2p of identical sequences is exactly zero") {
    auto seqs = make_sequence_set({"a", "b"}, {"acgtacgt", "acgtacgt"});
    auto D = kimura2p_dissimilarity(seqs);
    CHECK(D.at(0, 1) == 0.0);
    CHECK(!std::signbit(D.at(0, 1)));
}

TEST_CASE("kimura2p skips gap sites and unknown symbols") {
    // site 0 is a gap pair, so only the remaining 4 sites count
    auto seqs = make_sequence_set({"a", "b"}, {"-aaaa", "ngaaa"});
    auto D = kimura2p_dissimilarity(seqs);
    CHECK(D.at(0, 1) == doctest::Approx(0.34657359027997264).epsilon(1e-12));
}

TEST_CASE("kimura2p error cases") {
    try {
        kimura2p_dissimilarity(make_sequence_set({"a", "b"}, {"aaaa", "gggg"}));
        FAIL("expected UndefinedDistance");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UndefinedDistance);
    }
    try {
        kimura2p_dissimilarity(make_sequence_set({"a", "b"}, {"a---", "-ccc"}));
        FAIL("expected NoComparableSites");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoComparableSites);
    }
    CHECK_THROWS_AS(make_sequence_set({"a", "b"}, {"aaa", "aaaa"}), Error);
}

TEST_CASE("kimura2p is permutation-equivariant") {
    auto seqs = synthetic::make_clustered_sequences(2, 3, 80, 5);
    auto D = kimura2p_dissimilarity(seqs);

    std::vector<int> perm = {3, 0, 5, 1, 4, 2};
    std::vector<std::string> ids, permuted;
    for (int idx : perm) {
        ids.push_back(seqs.ids[idx]);
        permuted.push_back(seqs.sequences[idx]);
    }
    auto Dp = kimura2p_dissimilarity(make_sequence_set(ids, permuted));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(Dp.at(i, j) == D.at(perm[i], perm[j]));
}
