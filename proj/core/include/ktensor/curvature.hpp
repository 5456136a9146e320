#pragma once

// Curvature acting on symmetric tensors: q(R), the R-ring operator on
// 2-tensors, the Lichnerowicz defect and the modified-Ricci Killing residual.

#include <vector>

#include "ktensor/field.hpp"
#include "ktensor/manifold.hpp"
#include "ktensor/sym_tensor.hpp"

namespace ktensor {

// R_{e_i,e_j} acting on K as a derivation.
SymTensor curvature_act(const RiemannAtPoint& r, int i, int j, const SymTensor& k);

// q(R)K = Σ_{i,j} e_j . (e_i _| R_{e_i,e_j} K)
SymTensor qR_act(const RiemannAtPoint& r, const SymTensor& k);

// (R°h)(X,Y) = Σ_i h(R_{X,e_i} Y, e_i)
SymTensor r_ring(const RiemannAtPoint& r, const SymTensor& h);
// Ric acting on a 2-tensor as a derivation.
SymTensor ricci_act(const RiemannAtPoint& r, const SymTensor& h);
// |q(R)h - 2 R°h + Ric(h)|
double qrh_residual(const RiemannAtPoint& r, const SymTensor& h);

// (δd - dδ)K - (∇*∇ - q(R))K at x, frame components.
SymTensor lichnerowicz_defect(const TensorField& k, const Point<double>& x);

// Ricci tensor as a field (first-order differentiable).
TensorField ricci_field(const ManifoldPtr& base);
// |(∇_X Ric)(X,X) - 2/(n+2) X(scal) g(X,X)| for a frame vector X.
double ricci_killing_residual(const ManifoldPtr& base, const Point<double>& x, const std::vector<double>& x_frame);

// Largest deviation between automatic first/second metric derivatives and
// Richardson-extrapolated central differences, relative to max(1,|g|).
// Steps: 1e-5 for first derivatives, 1e-3 for second (roundoff).
double metric_derivative_selftest(const Chart& chart, const Point<double>& x);

}  // namespace ktensor
