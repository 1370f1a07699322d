#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qsym/algebra.hpp"
#include "qsym/group.hpp"
#include "qsym/linalg.hpp"
#include "qsym/types.hpp"

namespace qsym {

// Relativization onto a group-valued frame: the frame carries the basis
// {|g>}, and an observed-system operator T is sent to
// sum_g |g><g| (x) U(g) T U(g)^dag, an operator on frame (x) observed.
inline Matrix yen(const FiniteAbelianRep& rep, const Matrix& t) {
  if (t.rows() != rep.dim || t.cols() != rep.dim)
    throw DimMismatch("yen: operator does not act on the observed systems");
  const Index d = rep.dim;
  Matrix out = Matrix::Zero(rep.order * d, rep.order * d);
  for (Index g = 0; g < rep.order; ++g) {
    const Matrix& u = rep(g);
    out.block(g * d, g * d, d, d) = u * t * u.adjoint();
  }
  return out;
}

// The joint representation under which relativized operators are weakly
// symmetric: the frame label shifts along with the observed systems.
inline FiniteAbelianRep frame_product_rep(const FiniteAbelianRep& rep,
                                          Tolerance tol = {}) {
  return make_rep(rep.order, tensor(shift_matrix(rep.order), rep.generator()),
                  tol);
}

struct Relativization {
  Index frame_dim = 0;
  Index target_dim = 0;
  std::function<Matrix(const Matrix&)> map;
};

inline Relativization make_relativization(const FiniteAbelianRep& rep) {
  Relativization r;
  r.frame_dim = rep.order;
  r.target_dim = rep.dim;
  r.map = [rep](const Matrix& t) { return yen(rep, t); };
  return r;
}

// Everything an agent holding the frame can say about the observed systems:
// the algebra generated by all relativized observables.
inline StarAlgebra perspectival_algebra(const FiniteAbelianRep& rep,
                                        Tolerance tol = {}) {
  const Index d = rep.dim;
  std::vector<Matrix> gens;
  gens.reserve(static_cast<std::size_t>(d) * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Matrix unit = Matrix::Zero(d, d);
      unit(i, j) = 1.0;
      gens.push_back(yen(rep, unit));
    }
  return span_closure(gens, tol);
}

// Shift-scenario perspectival algebra with the frame particle at an
// arbitrary wire slot; built frame-first and permuted into place.
inline StarAlgebra perspectival_algebra_at(Index order, Index n_systems,
                                           Index frame_slot,
                                           Tolerance tol = {}) {
  if (n_systems < 1) throw DimMismatch("perspectival_algebra_at: no systems");
  if (frame_slot < 0 || frame_slot >= n_systems)
    throw IndexOutOfRange("perspectival_algebra_at: frame slot out of range");
  const FiniteAbelianRep observed =
      n_systems == 1 ? trivial_representation(order, 1)
                     : shift_representation(order, n_systems - 1, 4096, tol);
  StarAlgebra alg = perspectival_algebra(observed, tol);
  if (frame_slot == 0) return alg;
  const std::vector<Index> dims(static_cast<std::size_t>(n_systems), order);
  std::vector<Index> perm(static_cast<std::size_t>(n_systems));
  for (Index p = 0; p < n_systems; ++p)
    perm[static_cast<std::size_t>(p)] =
        p < frame_slot ? p + 1 : (p == frame_slot ? 0 : p);
  for (Matrix& b : alg.basis) b = reorder_systems(b, dims, perm);
  return alg;
}

inline StarAlgebra collaborative_algebra(const std::vector<StarAlgebra>& parts,
                                         Tolerance tol = {}) {
  if (parts.empty())
    throw DimMismatch("collaborative_algebra: empty perspective list");
  StarAlgebra acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k)
    acc = join(acc, parts[k], tol);
  return acc;
}

inline bool charge_accessible(const FiniteAbelianRep& rep,
                              const StarAlgebra& collaborative,
                              Tolerance tol = {}) {
  if (rep.dim != collaborative.dim)
    throw DimMismatch("charge_accessible: dimension mismatch");
  const ChargeObservable obs =
      charge_observable(charge_decomposition(rep, tol));
  return contains(collaborative, obs.matrix, tol);
}

struct NamedAlgebra {
  std::string name;
  StarAlgebra algebra;
};

struct PerspectiveReport {
  std::vector<NamedAlgebra> perspectival_algebras;
  StarAlgebra collaborative;
  bool charge_in_collaborative = false;
  std::vector<bool> charge_in_each_perspective;
};

// One perspectival algebra per choice of frame particle, their join, and
// where the total charge lands.
inline PerspectiveReport perspective_report(Index order, Index n_systems,
                                            Tolerance tol = {}) {
  if (n_systems < 2)
    throw DimMismatch("perspective_report: needs at least two systems");
  const FiniteAbelianRep joint =
      shift_representation(order, n_systems, 4096, tol);
  PerspectiveReport rep;
  std::vector<StarAlgebra> parts;
  for (Index slot = 0; slot < n_systems; ++slot) {
    std::string observed;
    for (Index s = 0; s < n_systems; ++s)
      if (s != slot) observed.push_back(static_cast<char>('A' + s));
    const std::string name =
        observed + "|" + static_cast<char>('A' + slot);
    StarAlgebra alg = perspectival_algebra_at(order, n_systems, slot, tol);
    rep.charge_in_each_perspective.push_back(
        charge_accessible(joint, alg, tol));
    parts.push_back(alg);
    rep.perspectival_algebras.push_back({name, std::move(alg)});
  }
  rep.collaborative = collaborative_algebra(parts, tol);
  rep.charge_in_collaborative =
      charge_accessible(joint, rep.collaborative, tol);
  return rep;
}

// Shifts each generator by alpha times a central element; relative
// structure (all pairwise commutators) is certified unchanged.
inline std::vector<Matrix> central_shift(const std::vector<Matrix>& gens,
                                         const Matrix& central, double alpha,
                                         Tolerance tol = {}) {
  validate(tol);
  if (central.rows() != central.cols())
    throw DimMismatch("central_shift: central element is not square");
  for (const Matrix& g : gens) {
    if (g.rows() != central.rows() || g.cols() != central.cols())
      throw DimMismatch("central_shift: generator dimension mismatch");
    if (max_abs(central * g - g * central) >= tol.eq_tol)
      throw NotCentral("central_shift: element does not commute with all generators");
  }
  std::vector<Matrix> shifted;
  shifted.reserve(gens.size());
  for (const Matrix& g : gens) shifted.push_back(g + alpha * central);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Matrix before = gens[i] * gens[j] - gens[j] * gens[i];
      const Matrix after =
          shifted[i] * shifted[j] - shifted[j] * shifted[i];
      if (max_abs(after - before) >= tol.eq_tol)
        throw NotCentral("central_shift: commutators changed under the shift");
    }
  return shifted;
}

struct AmbiguityWitness {
  double alpha = 0.0;
  Matrix total;                 // canonical total-charge observable
  std::vector<Matrix> plain;    // local charge observables
  std::vector<Matrix> shifted;  // centrally shifted copies
  StarAlgebra plain_join;
  StarAlgebra shifted_join;
  bool plain_contains_total = false;
  bool shifted_contains_total = false;
};

// Two generator sets with identical relative structure whose generated
// algebras disagree about the total charge. The fractional shift -1/2 is
// realized through the modular inverse of 2, so the order must be odd.
inline AmbiguityWitness momentum_ambiguity_witness(Index order,
                                                   Tolerance tol = {}) {
  if (order < 3 || order % 2 == 0)
    throw Error("momentum_ambiguity_witness: order must be odd and >= 3, "
                "since the shift needs 2 to be invertible mod the order");
  Index inv2 = 0;
  for (Index m = 1; m < order; ++m)
    if ((2 * m) % order == 1) inv2 = m;
  AmbiguityWitness w;
  w.alpha = -static_cast<double>(inv2);
  const FiniteAbelianRep joint = shift_representation(order, 2, 4096, tol);
  w.total = charge_observable(charge_decomposition(joint, tol)).matrix;
  const Matrix local =
      charge_observable(
          charge_decomposition(shift_representation(order, 1, 4096, tol), tol))
          .matrix;
  const Matrix id = Matrix::Identity(order, order);
  w.plain = {tensor(local, id), tensor(id, local)};
  w.shifted = central_shift(w.plain, w.total, w.alpha, tol);
  w.plain_join = join(span_closure({w.plain[0]}, tol),
                      span_closure({w.plain[1]}, tol), tol);
  w.shifted_join = join(span_closure({w.shifted[0]}, tol),
                        span_closure({w.shifted[1]}, tol), tol);
  w.plain_contains_total = contains(w.plain_join, w.total, tol);
  w.shifted_contains_total = contains(w.shifted_join, w.total, tol);
  return w;
}

}  // namespace qsym
