#pragma once

#include <string>

#include "qnmhd/field.hpp"
#include "qnmhd/grid.hpp"
#include "qnmhd/spectral.hpp"

namespace qnmhd {

// The 7-component unknown W = (n, u, B) of the compressible system.
struct PlasmaState {
    ScalarField n;
    VectorField u;
    VectorField B;

    PlasmaState() = default;
    explicit PlasmaState(const Grid& g) : n(g, 1.0), u(g), B(g) {}

    PlasmaState& operator+=(const PlasmaState& o) {
        n += o.n; u += o.u; B += o.B;
        return *this;
    }
    PlasmaState& operator*=(double a) {
        n *= a; u *= a; B *= a;
        return *this;
    }
};

inline PlasmaState operator+(PlasmaState a, const PlasmaState& b) { return a += b; }
inline PlasmaState operator*(double a, PlasmaState s) { return s *= a; }

inline bool finite(const PlasmaState& s) { return finite(s.n) && finite(s.u) && finite(s.B); }

// Limit solution (u0, B0) with diagnostically recovered mean-zero pressure p0.
struct MhdState {
    VectorField u;
    VectorField B;
    ScalarField p;

    MhdState() = default;
    explicit MhdState(const Grid& g) : u(g), B(g), p(g) {}

    MhdState& operator+=(const MhdState& o) {
        u += o.u; B += o.B; p += o.p;
        return *this;
    }
    MhdState& operator*=(double a) {
        u *= a; B *= a; p *= a;
        return *this;
    }
};

inline MhdState operator+(MhdState a, const MhdState& b) { return a += b; }
inline MhdState operator*(double a, MhdState s) { return s *= a; }

inline bool finite(const MhdState& s) { return finite(s.u) && finite(s.B) && finite(s.p); }

// Invariant checks; throw on violation.
void validate_plasma_state(const Grid& g, const PlasmaState& w);
void validate_mhd_state(const Grid& g, const MhdState& s);

} // namespace qnmhd
