#include "core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace lcorrupt {

double Rng::normal() {
  while (true) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

std::uint64_t Rng::uniform_int(std::uint64_t n) {
  // Reject the tail of the 64-bit range that would bias the modulo.
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

std::vector<int> random_subset(int n, int m, Rng& rng) {
  if (n < 0 || m < 0 || m > n) {
    throw invalid_argument_error("random_subset: requested " + std::to_string(m) +
                                 " indices out of " + std::to_string(n));
  }
  std::vector<int> indices(static_cast<std::size_t>(n));
  std::iota(indices.begin(), indices.end(), 0);
  // Partial Fisher-Yates: after m steps the prefix is the sample.
  for (int i = 0; i < m; ++i) {
    const int j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(static_cast<std::size_t>(m));
  std::sort(indices.begin(), indices.end());
  return indices;
}

}  // namespace lcorrupt
