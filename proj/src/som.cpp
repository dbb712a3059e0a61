#include "rsom/som.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rsom/error.hpp"
#include "parallel.hpp"

namespace rsom {

namespace {

// Fixed-association blocked dot product; the eight independent accumulators
// let the compiler vectorize the reduction without -ffast-math, and the
// summation order never changes, so seeded runs stay bit-identical.
double dot(const double* a, const double* b, int n) {
    double acc0 = 0, acc1 = 0, acc2 = 0, acc3 = 0;
    double acc4 = 0, acc5 = 0, acc6 = 0, acc7 = 0;
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 += a[i] * b[i];
        acc1 += a[i + 1] * b[i + 1];
        acc2 += a[i + 2] * b[i + 2];
        acc3 += a[i + 3] * b[i + 3];
        acc4 += a[i + 4] * b[i + 4];
        acc5 += a[i + 5] * b[i + 5];
        acc6 += a[i + 6] * b[i + 6];
        acc7 += a[i + 7] * b[i + 7];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i];
    return (((acc0 + acc1) + (acc2 + acc3)) + ((acc4 + acc5) + (acc6 + acc7))) + tail;
}

// beta^T D beta, summed in the same order everywhere it is evaluated.
double quadratic_form(const DissimilarityMatrix& D, const double* beta) {
    double q = 0.0;
    for (int i = 0; i < D.n; ++i) q += beta[i] * dot(D.row(i), beta, D.n);
    return q;
}

// Refreshes the cached quadratic terms of the updated rows. D is streamed
// once while the coefficient rows stay cache-resident; the accumulation
// order matches quadratic_form() exactly.
void recompute_quadratic(const DissimilarityMatrix& D, const PrototypeCoefficients& beta,
                         const std::vector<int>& updated, std::vector<double>& quad) {
    int n = D.n;
    int m = static_cast<int>(updated.size());
    if (m == 0) return;
    std::vector<double> acc(m, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* di = D.row(i);
        for (int t = 0; t < m; ++t) {
            const double* row = beta.row(updated[t]);
            acc[t] += row[i] * dot(di, row, n);
        }
    }
    for (int t = 0; t < m; ++t) quad[updated[t]] = acc[t];
}

void check_rows_on_simplex(const PrototypeCoefficients& beta, const std::vector<int>& rows) {
    for (int u : rows) {
        const double* row = beta.row(u);
        double sum = 0.0;
        for (int j = 0; j < beta.n; ++j) {
            if (row[j] < 0.0)
                throw std::logic_error("coefficient row " + std::to_string(u) +
                                       " left the simplex: negative entry");
            sum += row[j];
        }
        if (std::abs(sum - 1.0) > 1e-10)
            throw std::logic_error("coefficient row " + std::to_string(u) +
                                   " left the simplex: sum " + std::to_string(sum));
    }
}

std::vector<int> resolve_checkpoints(const std::vector<int>& requested, int total,
                                     bool every_step) {
    std::vector<int> points = requested;
    if (points.empty()) {
        if (every_step) {
            for (int t = 0; t <= total; ++t) points.push_back(t);
        } else {
            for (int k = 0; k <= 5; ++k)
                points.push_back(static_cast<int>(std::lround(static_cast<double>(total) * k / 5)));
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::erase_if(points, [total](int t) { return t < 0 || t > total; });
    return points;
}

bool contains(const std::vector<int>& sorted, int value) {
    return std::binary_search(sorted.begin(), sorted.end(), value);
}

// Observation sampler for the online trainers: uniform with replacement by
// default, or reshuffled full passes when epoch_shuffle is on. Either way
// the draw sequence is a pure function of the seed.
class Sampler {
public:
    Sampler(Rng& rng, int n, bool epoch_shuffle) : rng_(rng), n_(n), shuffled_(epoch_shuffle) {}

    int next() {
        if (!shuffled_) return rng_.index(n_);
        if (position_ == static_cast<int>(order_.size())) {
            order_ = rng_.sample_without_replacement(n_, n_);
            position_ = 0;
        }
        return order_[position_++];
    }

private:
    Rng& rng_;
    int n_;
    bool shuffled_;
    std::vector<int> order_;
    int position_ = 0;
};

using StepClock = std::chrono::steady_clock;

void record_step_time(std::vector<double>* sink, StepClock::time_point start) {
    if (sink == nullptr) return;
    sink->push_back(std::chrono::duration<double>(StepClock::now() - start).count());
}

// Best and second-best units for every observation given per-unit distance
// evaluations; ties always fall to the lowest unit index.
template <typename DistanceFn>
std::vector<BestPair> scan_best_two(int n, int units, DistanceFn&& distance) {
    std::vector<BestPair> out(n);
    for (int i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        double second = std::numeric_limits<double>::infinity();
        int best_u = 0, second_u = 0;
        for (int u = 0; u < units; ++u) {
            double d = distance(i, u);
            if (d < best) {
                second = best;
                second_u = best_u;
                best = d;
                best_u = u;
            } else if (d < second) {
                second = d;
                second_u = u;
            }
        }
        out[i] = {best_u, units > 1 ? second_u : best_u, best};
    }
    return out;
}

double mean_best_distance(const std::vector<BestPair>& pairs) {
    double sum = 0.0;
    for (const auto& p : pairs) sum += p.best_distance;
    return pairs.empty() ? 0.0 : sum / static_cast<double>(pairs.size());
}

std::vector<double> euclidean_prototypes_from_coefficients(const PrototypeCoefficients& beta,
                                                           const PointCloud& points) {
    std::vector<double> protos(static_cast<std::size_t>(beta.units) * points.dim, 0.0);
    for (int u = 0; u < beta.units; ++u) {
        const double* row = beta.row(u);
        double* p = protos.data() + static_cast<std::size_t>(u) * points.dim;
        for (int i = 0; i < points.n; ++i) {
            const double* x = points.point(i);
            for (int d = 0; d < points.dim; ++d) p[d] += row[i] * x[d];
        }
    }
    return protos;
}

} // namespace

const char* variant_name(MapVariant v) {
    switch (v) {
        case MapVariant::OnlineRelational: return "online-relational";
        case MapVariant::BatchRelational: return "batch-relational";
        case MapVariant::EuclideanOnline: return "euclidean-online";
        case MapVariant::BatchMedian: return "batch-median";
    }
    return "unknown";
}

MapVariant variant_from_name(const std::string& name) {
    if (name == "online-relational") return MapVariant::OnlineRelational;
    if (name == "batch-relational") return MapVariant::BatchRelational;
    if (name == "euclidean-online") return MapVariant::EuclideanOnline;
    if (name == "batch-median") return MapVariant::BatchMedian;
    throw Error(ErrorKind::InvalidArgument, "unknown variant '" + name + "'");
}

PrototypeCoefficients init_coefficients(int n, int units, InitMode mode, Rng& rng) {
    if (n < 1 || units < 1)
        throw Error(ErrorKind::InvalidArgument, "need n >= 1 and units >= 1");
    PrototypeCoefficients beta;
    beta.units = units;
    beta.n = n;
    beta.data.assign(static_cast<std::size_t>(units) * n, 0.0);
    if (mode == InitMode::OneHotSample) {
        std::vector<int> picks;
        if (units <= n) {
            picks = rng.sample_without_replacement(n, units);
        } else {
            picks.resize(units);
            for (int u = 0; u < units; ++u) picks[u] = rng.index(n);
        }
        for (int u = 0; u < units; ++u) beta.row(u)[picks[u]] = 1.0;
    } else {
        for (int u = 0; u < units; ++u) {
            double* row = beta.row(u);
            double sum = 0.0;
            for (int j = 0; j < n; ++j) {
                row[j] = rng.open01();
                sum += row[j];
            }
            for (int j = 0; j < n; ++j) row[j] /= sum;
        }
    }
    return beta;
}

PrototypeCoefficients init_coefficients(int n, int units, InitMode mode, std::uint64_t seed) {
    Rng rng(seed);
    return init_coefficients(n, units, mode, rng);
}

double implicit_distance(const DissimilarityMatrix& D, std::span<const double> beta, int i) {
    if (beta.size() != static_cast<std::size_t>(D.n))
        throw Error(ErrorKind::DimensionMismatch,
                    "coefficient row has " + std::to_string(beta.size()) + " entries for n = " +
                        std::to_string(D.n));
    if (i < 0 || i >= D.n)
        throw Error(ErrorKind::DimensionMismatch, "observation index out of range");
    return dot(D.row(i), beta.data(), D.n) - 0.5 * quadratic_form(D, beta.data());
}

std::vector<BestPair> best_two_units(const DissimilarityMatrix& D,
                                     const PrototypeCoefficients& beta) {
    if (beta.n != D.n)
        throw Error(ErrorKind::DimensionMismatch, "coefficients and matrix disagree on n");
    std::vector<double> quad(beta.units);
    for (int u = 0; u < beta.units; ++u) quad[u] = quadratic_form(D, beta.row(u));
    return scan_best_two(D.n, beta.units, [&](int i, int u) {
        return dot(D.row(i), beta.row(u), D.n) - 0.5 * quad[u];
    });
}

std::vector<BestPair> best_two_units(const DissimilarityMatrix& D,
                                     const std::vector<int>& medoids) {
    return scan_best_two(D.n, static_cast<int>(medoids.size()),
                         [&](int i, int u) { return D.at(i, medoids[u]); });
}

std::vector<BestPair> best_two_units(const PointCloud& points,
                                     const std::vector<double>& prototypes, int units) {
    int dim = points.dim;
    return scan_best_two(points.n, units, [&](int i, int u) {
        const double* x = points.point(i);
        const double* p = prototypes.data() + static_cast<std::size_t>(u) * dim;
        double s = 0.0;
        for (int d = 0; d < dim; ++d) {
            double diff = x[d] - p[d];
            s += diff * diff;
        }
        return s;
    });
}

std::vector<int> assign_all(const DissimilarityMatrix& D, const PrototypeCoefficients& beta) {
    auto pairs = best_two_units(D, beta);
    std::vector<int> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = pairs[i].best;
    return out;
}

std::vector<int> assign_all(const DissimilarityMatrix& D, const std::vector<int>& medoids) {
    auto pairs = best_two_units(D, medoids);
    std::vector<int> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = pairs[i].best;
    return out;
}

std::vector<int> assign_all(const PointCloud& points, const std::vector<double>& prototypes,
                            int units) {
    auto pairs = best_two_units(points, prototypes, units);
    std::vector<int> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = pairs[i].best;
    return out;
}

TrainedMap train_online_relational(const DissimilarityMatrix& D, const MapGrid& grid,
                                   const NeighborhoodKernel& kernel,
                                   const TrainingSchedule& schedule,
                                   const TrainOptions& options, std::uint64_t seed) {
    int n = D.n;
    int units = grid.units();
    int total = schedule.iterations;

    Rng rng(seed);
    PrototypeCoefficients beta = init_coefficients(n, units, options.init, rng);
    std::vector<double> quad(units);
    for (int u = 0; u < units; ++u) quad[u] = quadratic_form(D, beta.row(u));

    TrainedMap map;
    map.variant = MapVariant::OnlineRelational;
    map.grid = grid;
    map.seed = seed;
    map.iterations = total;
    map.alpha0 = schedule.alpha0;
    map.plateaus = schedule.plateaus;

    auto history_at = resolve_checkpoints(options.history_iterations, total, false);
    auto snapshot_at = resolve_checkpoints(options.snapshot_iterations, total, false);
    if (options.snapshot_iterations.empty()) snapshot_at.clear();

    auto record = [&](int t) {
        if (contains(history_at, t))
            map.history.push_back({t, mean_best_distance(best_two_units(D, beta))});
        if (contains(snapshot_at, t)) map.snapshots.push_back({t, beta.data});
    };
    record(0);

    if (options.record_trace) {
        map.sampled_trace.reserve(total);
        map.winner_trace.reserve(total);
    }

    Sampler sampler(rng, n, options.epoch_shuffle);
    std::vector<int> updated;
    updated.reserve(units);
    for (int t = 1; t <= total; ++t) {
        double alpha = schedule.alphas[t - 1];
        double radius = schedule.radii[t - 1];
        auto started = StepClock::now();

        int i = sampler.next();
        const double* di = D.row(i);
        double best = std::numeric_limits<double>::infinity();
        int winner = 0;
        long negatives = 0;
        for (int u = 0; u < units; ++u) {
            double d = dot(di, beta.row(u), n) - 0.5 * quad[u];
            negatives += d < 0.0;
            if (d < best) {
                best = d;
                winner = u;
            }
        }
        map.negative_distance_count += negatives;
        map.distance_evaluations += units;

        updated.clear();
        for (int u = 0; u < units; ++u) {
            double kv = kernel_value(grid, kernel, winner, u, radius);
            if (kv <= 0.0) continue;
            double step = alpha * kv;
            double keep = 1.0 - step;
            double* row = beta.row(u);
            for (int j = 0; j < n; ++j) row[j] *= keep;
            row[i] += step;
            updated.push_back(u);
        }
        recompute_quadratic(D, beta, updated, quad);
        record_step_time(options.step_seconds, started);

        if (options.check_simplex) check_rows_on_simplex(beta, updated);
        if (options.record_trace) {
            map.sampled_trace.push_back(i);
            map.winner_trace.push_back(winner);
        }
        record(t);
    }

    map.coefficients = std::move(beta);
    map.assignments = assign_all(D, map.coefficients);
    return map;
}

TrainedMap train_online_euclidean(const PointCloud& points, const MapGrid& grid,
                                  const NeighborhoodKernel& kernel,
                                  const TrainingSchedule& schedule,
                                  const TrainOptions& options, std::uint64_t seed) {
    int n = points.n;
    int dim = points.dim;
    int units = grid.units();
    int total = schedule.iterations;

    Rng rng(seed);
    PrototypeCoefficients beta0 = init_coefficients(n, units, options.init, rng);
    std::vector<double> protos = euclidean_prototypes_from_coefficients(beta0, points);

    TrainedMap map;
    map.variant = MapVariant::EuclideanOnline;
    map.grid = grid;
    map.seed = seed;
    map.iterations = total;
    map.alpha0 = schedule.alpha0;
    map.plateaus = schedule.plateaus;
    map.prototype_dim = dim;

    auto history_at = resolve_checkpoints(options.history_iterations, total, false);
    auto snapshot_at = resolve_checkpoints(options.snapshot_iterations, total, false);
    if (options.snapshot_iterations.empty()) snapshot_at.clear();

    auto record = [&](int t) {
        if (contains(history_at, t))
            map.history.push_back({t, mean_best_distance(best_two_units(points, protos, units))});
        if (contains(snapshot_at, t)) map.snapshots.push_back({t, protos});
    };
    record(0);

    if (options.record_trace) {
        map.sampled_trace.reserve(total);
        map.winner_trace.reserve(total);
    }

    Sampler sampler(rng, n, options.epoch_shuffle);
    for (int t = 1; t <= total; ++t) {
        double alpha = schedule.alphas[t - 1];
        double radius = schedule.radii[t - 1];
        auto started = StepClock::now();

        int i = sampler.next();
        const double* x = points.point(i);
        double best = std::numeric_limits<double>::infinity();
        int winner = 0;
        for (int u = 0; u < units; ++u) {
            const double* p = protos.data() + static_cast<std::size_t>(u) * dim;
            double s = 0.0;
            for (int d = 0; d < dim; ++d) {
                double diff = x[d] - p[d];
                s += diff * diff;
            }
            if (s < best) {
                best = s;
                winner = u;
            }
        }

        for (int u = 0; u < units; ++u) {
            double kv = kernel_value(grid, kernel, winner, u, radius);
            if (kv <= 0.0) continue;
            double step = alpha * kv;
            double keep = 1.0 - step;
            double* p = protos.data() + static_cast<std::size_t>(u) * dim;
            for (int d = 0; d < dim; ++d) p[d] = keep * p[d] + step * x[d];
        }
        record_step_time(options.step_seconds, started);

        if (options.record_trace) {
            map.sampled_trace.push_back(i);
            map.winner_trace.push_back(winner);
        }
        record(t);
    }

    map.prototypes = std::move(protos);
    map.assignments = assign_all(points, map.prototypes, units);
    return map;
}

TrainedMap train_batch_relational(const DissimilarityMatrix& D, const MapGrid& grid,
                                  const NeighborhoodKernel& kernel,
                                  const TrainingSchedule& schedule,
                                  const TrainOptions& options, std::uint64_t seed) {
    int n = D.n;
    int units = grid.units();
    int epochs = schedule.iterations;

    Rng rng(seed);
    PrototypeCoefficients beta = init_coefficients(n, units, options.init, rng);

    TrainedMap map;
    map.variant = MapVariant::BatchRelational;
    map.grid = grid;
    map.seed = seed;
    map.alpha0 = schedule.alpha0;
    map.plateaus = schedule.plateaus;

    auto history_at = resolve_checkpoints(options.history_iterations, epochs, true);
    auto snapshot_at = resolve_checkpoints(options.snapshot_iterations, epochs, false);
    if (options.snapshot_iterations.empty()) snapshot_at.clear();
    if (contains(snapshot_at, 0)) map.snapshots.push_back({0, beta.data});
    if (contains(history_at, 0))
        map.history.push_back({0, mean_best_distance(best_two_units(D, beta))});

    std::vector<int> assignments(n, -1);
    std::vector<int> previous(n, -1);
    std::vector<double> best_distance(n, 0.0);
    std::vector<int> negatives(n, 0);
    std::vector<double> kernel_row(units);
    int performed = 0;

    for (int e = 1; e <= epochs; ++e) {
        double radius = schedule.radii[e - 1];
        auto started = StepClock::now();

        // Assignment sweep. Every unit's quadratic term is evaluated from
        // scratch for every observation, so one epoch costs O(U n^3). The
        // row loop is shared across units only to stream D once per
        // observation; the arithmetic and its order match quadratic_form()
        // exactly.
        detail::parallel_for(n, options.batch_threads, [&](int i) {
            std::vector<double> quad(units, 0.0);
            for (int j = 0; j < n; ++j) {
                const double* dj = D.row(j);
                for (int u = 0; u < units; ++u) {
                    const double* row = beta.row(u);
                    quad[u] += row[j] * dot(dj, row, n);
                }
            }
            const double* di = D.row(i);
            double best = std::numeric_limits<double>::infinity();
            int winner = 0;
            int negs = 0;
            for (int u = 0; u < units; ++u) {
                double d = dot(di, beta.row(u), n) - 0.5 * quad[u];
                negs += d < 0.0;
                if (d < best) {
                    best = d;
                    winner = u;
                }
            }
            assignments[i] = winner;
            best_distance[i] = best;
            negatives[i] = negs;
        });
        performed = e;
        for (int i = 0; i < n; ++i) map.negative_distance_count += negatives[i];
        map.distance_evaluations += static_cast<long>(n) * units;

        if (contains(history_at, e)) {
            double sum = 0.0;
            for (double d : best_distance) sum += d;
            map.history.push_back({e, sum / static_cast<double>(n)});
        }

        // Representation: kernel-weighted indicator rows.
        for (int u = 0; u < units; ++u) {
            for (int v = 0; v < units; ++v)
                kernel_row[v] = kernel_value(grid, kernel, v, u, radius);
            double mass = 0.0;
            for (int i = 0; i < n; ++i) mass += kernel_row[assignments[i]];
            if (mass == 0.0) continue;  // empty kernel mass: row kept as-is this epoch
            double* row = beta.row(u);
            for (int i = 0; i < n; ++i) row[i] = kernel_row[assignments[i]] / mass;
        }

        record_step_time(options.step_seconds, started);

        if (options.check_simplex) {
            std::vector<int> all(units);
            for (int u = 0; u < units; ++u) all[u] = u;
            check_rows_on_simplex(beta, all);
        }
        if (contains(snapshot_at, e)) map.snapshots.push_back({e, beta.data});

        // Stable assignments end the run once the radius has reached its
        // final plateau; a pending radius change would still alter the rows.
        bool radius_settled = (e == epochs) || (schedule.radii[e] == radius);
        if (assignments == previous && radius_settled) break;
        previous = assignments;
    }

    map.iterations = performed;
    map.coefficients = std::move(beta);
    map.assignments = assign_all(D, map.coefficients);
    return map;
}

TrainedMap train_batch_median(const DissimilarityMatrix& D, const MapGrid& grid,
                              const NeighborhoodKernel& kernel,
                              const TrainingSchedule& schedule,
                              const TrainOptions& options, std::uint64_t seed) {
    int n = D.n;
    int units = grid.units();
    int epochs = schedule.iterations;

    Rng rng(seed);
    std::vector<int> medoids;
    if (units <= n) {
        medoids = rng.sample_without_replacement(n, units);
    } else {
        medoids.resize(units);
        for (int u = 0; u < units; ++u) medoids[u] = rng.index(n);
    }

    TrainedMap map;
    map.variant = MapVariant::BatchMedian;
    map.grid = grid;
    map.seed = seed;
    map.alpha0 = schedule.alpha0;
    map.plateaus = schedule.plateaus;

    auto snapshot_medoids = [&](int e) {
        Snapshot s;
        s.iteration = e;
        s.state.assign(medoids.begin(), medoids.end());
        map.snapshots.push_back(std::move(s));
    };
    auto history_at = resolve_checkpoints(options.history_iterations, epochs, true);
    auto snapshot_at = resolve_checkpoints(options.snapshot_iterations, epochs, false);
    if (options.snapshot_iterations.empty()) snapshot_at.clear();
    if (contains(snapshot_at, 0)) snapshot_medoids(0);
    if (contains(history_at, 0))
        map.history.push_back({0, mean_best_distance(best_two_units(D, medoids))});

    std::vector<int> assignments(n, -1);
    std::vector<int> previous(n, -1);
    std::vector<double> weights(n);
    int performed = 0;

    for (int e = 1; e <= epochs; ++e) {
        double radius = schedule.radii[e - 1];
        auto started = StepClock::now();

        double qe_sum = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int winner = 0;
            for (int u = 0; u < units; ++u) {
                double d = D.at(i, medoids[u]);
                if (d < best) {
                    best = d;
                    winner = u;
                }
            }
            assignments[i] = winner;
            qe_sum += best;
        }
        performed = e;
        if (contains(history_at, e))
            map.history.push_back({e, qe_sum / static_cast<double>(n)});

        // m_u = argmin_j sum_i K(f(x_i), u) delta_ij over the whole dataset.
        for (int u = 0; u < units; ++u) {
            double mass = 0.0;
            for (int i = 0; i < n; ++i) {
                weights[i] = kernel_value(grid, kernel, assignments[i], u, radius);
                mass += weights[i];
            }
            if (mass == 0.0) continue;  // empty kernel mass: medoid unchanged
            double best_cost = std::numeric_limits<double>::infinity();
            int best_j = medoids[u];
            for (int j = 0; j < n; ++j) {
                double cost = 0.0;
                const double* dj = D.row(j);
                for (int i = 0; i < n; ++i)
                    if (weights[i] > 0.0) cost += weights[i] * dj[i];
                if (cost < best_cost) {
                    best_cost = cost;
                    best_j = j;
                }
            }
            medoids[u] = best_j;
        }
        record_step_time(options.step_seconds, started);

        if (contains(snapshot_at, e)) snapshot_medoids(e);

        bool radius_settled = (e == epochs) || (schedule.radii[e] == radius);
        if (assignments == previous && radius_settled) break;
        previous = assignments;
    }

    map.iterations = performed;
    map.medoids = std::move(medoids);
    map.assignments = assign_all(D, map.medoids);
    return map;
}

std::vector<double> prototype_positions(const TrainedMap& map, const PointCloud& points) {
    int units = map.grid.units();
    switch (map.variant) {
        case MapVariant::OnlineRelational:
        case MapVariant::BatchRelational: {
            if (map.coefficients.n != points.n)
                throw Error(ErrorKind::DimensionMismatch,
                            "coefficients cover " + std::to_string(map.coefficients.n) +
                                " observations, point cloud has " + std::to_string(points.n));
            return euclidean_prototypes_from_coefficients(map.coefficients, points);
        }
        case MapVariant::EuclideanOnline: {
            if (map.prototype_dim != points.dim)
                throw Error(ErrorKind::DimensionMismatch, "prototype dimension mismatch");
            return map.prototypes;
        }
        case MapVariant::BatchMedian: {
            std::vector<double> out(static_cast<std::size_t>(units) * points.dim);
            for (int u = 0; u < units; ++u)
                for (int d = 0; d < points.dim; ++d)
                    out[static_cast<std::size_t>(u) * points.dim + d] = points.at(map.medoids[u], d);
            return out;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown variant");
}

} // namespace rsom
