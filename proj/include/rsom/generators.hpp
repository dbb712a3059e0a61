#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsom/dissimilarity.hpp"

namespace rsom {

// n i.i.d. points uniform in [0,1]^2.
PointCloud generate_uniform_square(int n, std::uint64_t seed);

// Swiss roll: (t cos t, h, t sin t) with t ~ U[1.5 pi, 4.5 pi] (about three
// scrolls) and h ~ U[0, 20].
PointCloud generate_swiss_roll(int n, std::uint64_t seed);

// Unrolled coordinate of each Swiss-roll point, recovered as ||(x, z)|| = t.
std::vector<double> swiss_roll_parameter(const PointCloud& roll);

// "q1".."q4" by quartile of the given values (quartiles of this sample).
std::vector<std::string> quartile_labels(const std::vector<double>& values);

} // namespace rsom
