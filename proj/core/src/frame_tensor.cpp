#include "ktensor/frame_tensor.hpp"

#include <cmath>
#include <string>

#include "ktensor/symalg.hpp"

namespace ktensor {

FrameTensor::FrameTensor(int dim, int degree) : n(dim), p(degree), slots(dim, SymTensor(dim, degree)) {}

FrameTensor& FrameTensor::operator+=(const FrameTensor& o) {
  if (o.n != n || o.p != p) throw ShapeError("frame tensor shape mismatch");
  for (int i = 0; i < n; ++i) slots[i] += o.slots[i];
  return *this;
}

FrameTensor& FrameTensor::operator-=(const FrameTensor& o) {
  if (o.n != n || o.p != p) throw ShapeError("frame tensor shape mismatch");
  for (int i = 0; i < n; ++i) slots[i] -= o.slots[i];
  return *this;
}

FrameTensor& FrameTensor::operator*=(double s) {
  for (auto& x : slots) x *= s;
  return *this;
}

FrameTensor operator+(FrameTensor a, const FrameTensor& b) { return a += b; }
FrameTensor operator-(FrameTensor a, const FrameTensor& b) { return a -= b; }
FrameTensor operator*(double s, FrameTensor a) { return a *= s; }

double inner(const FrameTensor& a, const FrameTensor& b) {
  if (a.n != b.n || a.p != b.p) throw ShapeError("frame tensor shape mismatch");
  double s = 0.0;
  for (int i = 0; i < a.n; ++i) s += inner(a.slots[i], b.slots[i]);
  return s;
}

double norm(const FrameTensor& a) { return std::sqrt(std::fmax(inner(a, a), 0.0)); }

FrameTensor trace_free_slots(const FrameTensor& t) {
  FrameTensor out = t;
  for (auto& s : out.slots) s = trace_free_part(s);
  return out;
}

FrameTensor rotate(const FrameTensor& t, const Matrix<double>& q) {
  FrameTensor out(t.n, t.p);
  for (int j = 0; j < t.n; ++j)
    for (int i = 0; i < t.n; ++i)
      if (q(i, j) != 0.0) out.slots[j].axpy(q(i, j), t.slots[i]);
  for (auto& s : out.slots) s = transform(s, q);
  return out;
}

SymTensor symmetrize(const FrameTensor& t) {
  SymTensor out(t.n, t.p + 1);
  for (int i = 0; i < t.n; ++i) out += mult_basis(i, t.slots[i]);
  return out;
}

SymTensor divergence(const FrameTensor& t) {
  if (t.p < 1) throw DegreeError("divergence needs degree >= 1");
  SymTensor out(t.n, t.p - 1);
  for (int i = 0; i < t.n; ++i) out -= contract_basis(i, t.slots[i]);
  return out;
}

bool cartan_degenerate(int n, int p) { return p < 1 || n + 2 * p - 4 <= 0 || n + p - 3 <= 0; }

namespace {

void require_nondegenerate(int n, int p) {
  if (cartan_degenerate(n, p))
    throw DegenerateShapeError("Cartan projections are singular for (n,p) = (" + std::to_string(n) + "," +
                               std::to_string(p) + ")");
}

}  // namespace

SymTensor pi1(const FrameTensor& t) {
  SymTensor out(t.n, t.p + 1);
  for (int i = 0; i < t.n; ++i) out += mult_basis(i, t.slots[i]);
  return trace_free_part(out);
}

FrameTensor pi1_adjoint(const SymTensor& s) {
  if (s.degree() < 1) throw DegreeError("pi1_adjoint needs degree >= 1");
  FrameTensor out(s.dim(), s.degree() - 1);
  for (int i = 0; i < s.dim(); ++i) out.slots[i] = contract_basis(i, s);
  return out;
}

SymTensor pi2(const FrameTensor& t) {
  if (t.p < 1) throw DegreeError("pi2 needs degree >= 1");
  SymTensor out(t.n, t.p - 1);
  for (int i = 0; i < t.n; ++i) out += contract_basis(i, t.slots[i]);
  return out;
}

FrameTensor pi2_adjoint(const SymTensor& s, int p) {
  if (s.degree() != p - 1) throw DegreeError("pi2_adjoint: degree mismatch");
  const int n = s.dim();
  FrameTensor out(n, p);
  for (int i = 0; i < n; ++i) {
    out.slots[i] = mult_basis(i, s);
    if (p >= 2) out.slots[i].axpy(-1.0 / (n + 2.0 * (p - 2)), mult_L(contract_basis(i, s)));
  }
  return out;
}

CartanParts cartan_decompose(const FrameTensor& t, double tol) {
  const int n = t.n;
  const int p = t.p;
  require_nondegenerate(n, p);
  for (const auto& s : t.slots)
    if (!is_trace_free(s, tol)) throw NotTraceFreeError("cartan_decompose: slot is not trace-free");
  CartanParts parts;
  parts.pi1 = pi1(t);
  parts.pi2 = pi2(t);
  parts.P1 = (1.0 / (p + 1)) * pi1_adjoint(parts.pi1);
  const double c2 = (n + 2.0 * p - 4.0) / ((n + 2.0 * p - 2.0) * (n + p - 3.0));
  parts.P2 = c2 * pi2_adjoint(parts.pi2, p);
  parts.P3 = t - parts.P1 - parts.P2;
  return parts;
}

FrameTensor conformal_weight(const FrameTensor& t) {
  require_nondegenerate(t.n, t.p);
  const int n = t.n;
  FrameTensor out(n, t.p);
  SymTensor div(n, t.p - 1);
  for (int j = 0; j < n; ++j) div += contract_basis(j, t.slots[j]);
  for (int i = 0; i < n; ++i) {
    SymTensor acc(n, t.p);
    for (int j = 0; j < n; ++j) acc += mult_basis(j, contract_basis(i, t.slots[j]));
    acc -= mult_basis(i, div);
    out.slots[i] = acc;
  }
  return out;
}

}  // namespace ktensor
