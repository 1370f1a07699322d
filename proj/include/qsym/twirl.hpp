#pragma once
// twirl.hpp — Weak and strong group averaging and symmetry membership.
//
// The weak twirl averages conjugation over the group and is trace preserving.
// The strong twirl sandwiches by the trivial-sector projector and is not
// renormalized here: its trace deficit is the physical signal. Use
// renormalized() explicitly when a state is wanted.

#include <cmath>

#include "qsym/group.hpp"
#include "qsym/linalg.hpp"
#include "qsym/types.hpp"

namespace qsym {

enum class SymmetryKind { Weak, Strong };

// (1/n) sum_g U(g); equals the projector onto the trivial charge sector
// (possibly zero when that sector is absent).
inline Matrix group_average(const FiniteAbelianRep& rep) {
  Matrix avg = Matrix::Zero(rep.dim, rep.dim);
  for (const Matrix& u : rep.elements) avg += u;
  return avg / static_cast<double>(rep.order);
}

inline Matrix weak_twirl(const FiniteAbelianRep& rep, const Matrix& m) {
  if (m.rows() != rep.dim || m.cols() != rep.dim)
    throw DimMismatch("weak_twirl: operator does not match the representation");
  Matrix out = Matrix::Zero(rep.dim, rep.dim);
  for (const Matrix& u : rep.elements) out += u * m * u.adjoint();
  return out / static_cast<double>(rep.order);
}

// (1/n^2) sum_{g,g'} U(g) m U(g')^dagger, i.e. the group average applied on
// both sides independently.
inline Matrix strong_twirl(const FiniteAbelianRep& rep, const Matrix& m) {
  if (m.rows() != rep.dim || m.cols() != rep.dim)
    throw DimMismatch("strong_twirl: operator does not match the representation");
  const Matrix avg = group_average(rep);
  return avg * m * avg.adjoint();
}

inline Matrix renormalized(const Matrix& m, double rank_tol = 1e-9) {
  const Complex tr = m.trace();
  if (std::abs(tr) <= rank_tol)
    throw Error("renormalized: trace is below rank_tol");
  return m / tr;
}

inline bool is_weakly_symmetric(const ChargeObservable& charge, const Matrix& a,
                                const Tolerance& tol = {}) {
  if (a.rows() != charge.matrix.rows() || a.cols() != charge.matrix.cols())
    throw DimMismatch("is_weakly_symmetric: shape mismatch");
  return (charge.matrix * a - a * charge.matrix).norm() < tol.eq_tol;
}

inline bool is_strongly_symmetric(const Matrix& trivial_projector,
                                  const Matrix& a, const Tolerance& tol = {}) {
  if (a.rows() != trivial_projector.rows() || a.cols() != trivial_projector.cols())
    throw DimMismatch("is_strongly_symmetric: shape mismatch");
  return (a - trivial_projector * a * trivial_projector).norm() < tol.eq_tol;
}

// Membership is decided by Frobenius norms: weak means commuting with the
// charge observable, strong means supported on the trivial sector.
inline bool is_symmetric(const FiniteAbelianRep& rep, const Matrix& a,
                         SymmetryKind kind, const Tolerance& tol = {}) {
  if (kind == SymmetryKind::Weak) {
    const ChargeObservable c = charge_observable(charge_decomposition(rep, tol), tol);
    return is_weakly_symmetric(c, a, tol);
  }
  return is_strongly_symmetric(group_average(rep), a, tol);
}

}  // namespace qsym
