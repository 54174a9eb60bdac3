#include "qnmhd/grid.hpp"

#include <cmath>
#include <string>

#include "qnmhd/errors.hpp"

namespace qnmhd {

double Grid::volume() const {
    return std::pow(two_pi, dim);
}

Grid make_grid(int dim, int n) {
    if (dim != 2 && dim != 3)
        throw ConfigError("grid dim must be 2 or 3, got " + std::to_string(dim));
    if (n < 8 || n > 256 || n % 2 != 0)
        throw ConfigError("grid n must be even and in [8,256], got " + std::to_string(n));

    Grid g;
    g.dim = dim;
    g.n = n;
    g.freq.resize(n);
    g.keep.resize(n);
    for (int i = 0; i < n; ++i) {
        const int k = (i < n / 2) ? i : i - n;
        g.freq[i] = k;
        g.keep[i] = (3 * std::abs(k) <= n) ? 1 : 0;
    }
    g.size = 1;
    for (int d = 0; d < dim; ++d) g.size *= static_cast<std::size_t>(n);
    return g;
}

} // namespace qnmhd
