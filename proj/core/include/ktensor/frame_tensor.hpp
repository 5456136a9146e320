#pragma once

// Elements of V (x) Sym^p V and the Cartan projections onto
// Sym^{p+1}_0 (+) Sym^{p-1}_0 (+) Sym^{p,1}.

#include <vector>

#include "ktensor/linalg.hpp"
#include "ktensor/sym_tensor.hpp"

namespace ktensor {

struct FrameTensor {
  int n = 0;
  int p = 0;
  std::vector<SymTensor> slots;  // slots[i] pairs with e_i

  FrameTensor() = default;
  FrameTensor(int dim, int degree);

  FrameTensor& operator+=(const FrameTensor& o);
  FrameTensor& operator-=(const FrameTensor& o);
  FrameTensor& operator*=(double s);
};

FrameTensor operator+(FrameTensor a, const FrameTensor& b);
FrameTensor operator-(FrameTensor a, const FrameTensor& b);
FrameTensor operator*(double s, FrameTensor a);

double inner(const FrameTensor& a, const FrameTensor& b);
double norm(const FrameTensor& a);

// Slot-wise trace-free parts.
FrameTensor trace_free_slots(const FrameTensor& t);

// New frame e'_j = sum_i Q(i,j) e_i (Q orthogonal).
FrameTensor rotate(const FrameTensor& t, const Matrix<double>& q);

// Σ e_i . slot_i and -Σ e_i _| slot_i.
SymTensor symmetrize(const FrameTensor& t);
SymTensor divergence(const FrameTensor& t);

// True for (n,p) where the projection constants are singular.
bool cartan_degenerate(int n, int p);

SymTensor pi1(const FrameTensor& t);                 // Σ (e_i . slot_i)_0
FrameTensor pi1_adjoint(const SymTensor& s);         // slot_i = e_i _| S
SymTensor pi2(const FrameTensor& t);                 // Σ e_i _| slot_i
FrameTensor pi2_adjoint(const SymTensor& s, int p);  // slot_i = (e_i . S)_0

struct CartanParts {
  FrameTensor P1, P2, P3;
  SymTensor pi1, pi2;
};

CartanParts cartan_decompose(const FrameTensor& t, double tol = 1e-9);

// B(T): slot_i = Σ_j [e_j . (e_i _| slot_j) - e_i . (e_j _| slot_j)].
FrameTensor conformal_weight(const FrameTensor& t);

}  // namespace ktensor
