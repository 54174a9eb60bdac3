#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qnmhd {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Periodic tensor grid on the d-torus [0,2pi)^d, d in {2,3}.
// In the 2D ("2.5D") mode fields depend on (x,y) only while vector fields
// keep all three components.
struct Grid {
    int dim = 2;
    int n = 0;                       // points per axis, even
    std::vector<double> freq;        // per-axis integer frequencies 0..n/2-1, -n/2..-1
    std::vector<std::uint8_t> keep;  // per-axis dealias keep flags (|k| <= n/3)
    std::size_t size = 0;            // n^dim

    double dx() const { return two_pi / n; }
    double volume() const;           // (2pi)^dim

    // Row-major flattening: (i,j) -> i*n+j for dim=2, (i,j,k) -> (i*n+j)*n+k.
    std::size_t index(int i, int j, int k = 0) const {
        return dim == 2 ? static_cast<std::size_t>(i) * n + j
                        : (static_cast<std::size_t>(i) * n + j) * n + k;
    }
};

// N even, 8 <= N <= 256, dim in {2,3}; throws ConfigError otherwise.
Grid make_grid(int dim, int n);

// Calls fn(flat_index, k0, k1, k2) for every mode; k2 = 0 when dim = 2.
template <class F>
void for_each_mode(const Grid& g, F&& fn) {
    std::size_t idx = 0;
    if (g.dim == 2) {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                fn(idx++, g.freq[i], g.freq[j], 0.0);
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int k = 0; k < g.n; ++k)
                    fn(idx++, g.freq[i], g.freq[j], g.freq[k]);
    }
}

// Calls fn(flat_index, x, y, z) for every grid point; z = 0 when dim = 2.
template <class F>
void for_each_point(const Grid& g, F&& fn) {
    const double h = g.dx();
    std::size_t idx = 0;
    if (g.dim == 2) {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                fn(idx++, i * h, j * h, 0.0);
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int k = 0; k < g.n; ++k)
                    fn(idx++, i * h, j * h, k * h);
    }
}

} // namespace qnmhd
