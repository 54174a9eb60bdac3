#pragma once

#include <complex>
#include <vector>

#include "qnmhd/field.hpp"
#include "qnmhd/grid.hpp"

namespace qnmhd::spectral {

using Complex = std::complex<double>;

// Convention: f(x) = sum_k fhat_k e^{i k.x}; forward() returns fhat
// (normalized by 1/size), inverse() sums the series and takes the real part.
std::vector<Complex> forward(const Grid& g, const ScalarField& f);
ScalarField inverse(const Grid& g, const std::vector<Complex>& fhat);

double mean(const Grid& g, const ScalarField& f);
double integral(const Grid& g, const ScalarField& f); // mean * (2pi)^dim

// Exact spectral derivative along axis < dim (Nyquist mode dropped).
ScalarField ddx(const Grid& g, const ScalarField& f, int axis);

VectorField grad(const Grid& g, const ScalarField& f); // components axis>=dim are zero
ScalarField divergence(const Grid& g, const VectorField& v);
VectorField curl(const Grid& g, const VectorField& v);

// grad(Delta^{-1} f) for mean-zero f; zero mode of the potential dropped.
// Throws SolvabilityError when |mean(f)| > 1e-10 * ||f||_L2.
VectorField grad_inv_laplacian(const Grid& g, const ScalarField& f);

// v - grad(Delta^{-1} div v); idempotent, annihilates gradients.
VectorField leray_project(const Grid& g, const VectorField& v);

// ( sum_k (1+|k|^2)^s |fhat_k|^2 (2pi)^dim )^{1/2}, s <= 6.
double sobolev_norm(const Grid& g, const ScalarField& f, int s);
double sobolev_norm(const Grid& g, const VectorField& f, int s);

// Two-thirds rule: zero every mode with any |k_i| > n/3.
ScalarField dealias(const Grid& g, const ScalarField& f);
VectorField dealias(const Grid& g, const VectorField& v);

// Relative spectral divergence ||div v||_L2 / ||v||_L2 (0 when v = 0).
double relative_div(const Grid& g, const VectorField& v);

} // namespace qnmhd::spectral
