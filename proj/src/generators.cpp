#include "rsom/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rsom/error.hpp"
#include "rsom/rng.hpp"

namespace rsom {

PointCloud generate_uniform_square(int n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
    Rng rng(seed);
    PointCloud out;
    out.n = n;
    out.dim = 2;
    out.coords.resize(static_cast<std::size_t>(n) * 2);
    for (int i = 0; i < n; ++i) {
        out.coords[2 * static_cast<std::size_t>(i)] = rng.uniform01();
        out.coords[2 * static_cast<std::size_t>(i) + 1] = rng.uniform01();
    }
    return out;
}

PointCloud generate_swiss_roll(int n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
    Rng rng(seed);
    PointCloud out;
    out.n = n;
    out.dim = 3;
    out.coords.resize(static_cast<std::size_t>(n) * 3);
    constexpr double pi = std::numbers::pi;
    for (int i = 0; i < n; ++i) {
        double t = rng.uniform(1.5 * pi, 4.5 * pi);
        double h = rng.uniform(0.0, 20.0);
        out.coords[3 * static_cast<std::size_t>(i)] = t * std::cos(t);
        out.coords[3 * static_cast<std::size_t>(i) + 1] = h;
        out.coords[3 * static_cast<std::size_t>(i) + 2] = t * std::sin(t);
    }
    return out;
}

std::vector<double> swiss_roll_parameter(const PointCloud& roll) {
    if (roll.dim != 3)
        throw Error(ErrorKind::DimensionMismatch, "Swiss roll points are 3-dimensional");
    std::vector<double> t(roll.n);
    for (int i = 0; i < roll.n; ++i)
        t[i] = std::hypot(roll.at(i, 0), roll.at(i, 2));
    return t;
}

std::vector<std::string> quartile_labels(const std::vector<double>& values) {
    if (values.empty()) return {};
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
        auto idx = static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1));
        return sorted[idx];
    };
    double q1 = quantile(0.25), q2 = quantile(0.50), q3 = quantile(0.75);
    std::vector<std::string> labels(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] <= q1)
            labels[i] = "q1";
        else if (values[i] <= q2)
            labels[i] = "q2";
        else if (values[i] <= q3)
            labels[i] = "q3";
        else
            labels[i] = "q4";
    }
    return labels;
}

} // namespace rsom
