#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qnmhd/grid.hpp"

namespace qnmhd {

// Real-space sample values on the grid. Value semantics throughout; the
// arithmetic below is what the RK stepper needs.
struct ScalarField {
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0) : v(g.size, fill) {}

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    ScalarField& operator+=(const ScalarField& o) {
        assert(v.size() == o.v.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        assert(v.size() == o.v.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
        return *this;
    }
    ScalarField& operator*=(double a) {
        for (double& x : v) x *= a;
        return *this;
    }
};

inline ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
inline ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
inline ScalarField operator*(double a, ScalarField f) { return f *= a; }

// Vector fields always carry 3 components, also on 2D grids.
struct VectorField {
    std::array<ScalarField, 3> c;

    VectorField() = default;
    explicit VectorField(const Grid& g)
        : c{ScalarField(g), ScalarField(g), ScalarField(g)} {}

    ScalarField& operator[](int i) { return c[i]; }
    const ScalarField& operator[](int i) const { return c[i]; }

    VectorField& operator+=(const VectorField& o) {
        for (int i = 0; i < 3; ++i) c[i] += o.c[i];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
        return *this;
    }
    VectorField& operator*=(double a) {
        for (int i = 0; i < 3; ++i) c[i] *= a;
        return *this;
    }
};

inline VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
inline VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
inline VectorField operator*(double a, VectorField f) { return f *= a; }

inline ScalarField pointwise_mul(const ScalarField& a, const ScalarField& b) {
    ScalarField r = a;
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] *= b.v[i];
    return r;
}

inline VectorField cross(const VectorField& a, const VectorField& b) {
    VectorField r;
    for (int i = 0; i < 3; ++i) r[i].v.resize(a[0].size());
    for (std::size_t p = 0; p < a[0].size(); ++p) {
        r[0].v[p] = a[1][p] * b[2][p] - a[2][p] * b[1][p];
        r[1].v[p] = a[2][p] * b[0][p] - a[0][p] * b[2][p];
        r[2].v[p] = a[0][p] * b[1][p] - a[1][p] * b[0][p];
    }
    return r;
}

inline bool finite(const ScalarField& f) {
    for (double x : f.v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline bool finite(const VectorField& f) {
    return finite(f[0]) && finite(f[1]) && finite(f[2]);
}

} // namespace qnmhd
