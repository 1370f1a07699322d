#pragma once
// group.hpp — Finite cyclic symmetry groups: unitary shift representations,
// charge sector decomposition, and the charge observable.
//
// Charge eigenvalues follow the canonical convention 2*pi*c/n with integer
// labels c in [0, n); this keeps log U single-valued, so the pathological
// freedom lambda_i = lambda_j + 2k*pi never enters.

#include <cmath>
#include <utility>
#include <vector>

#include "qsym/linalg.hpp"
#include "qsym/types.hpp"

namespace qsym {

struct FiniteAbelianRep {
  int order = 0;                  // group order n
  Index dim = 0;
  std::vector<Matrix> elements;   // elements[g] = U(g), U(0) = identity

  const Matrix& operator()(int g) const {
    if (g < 0 || g >= order) throw IndexOutOfRange("FiniteAbelianRep: bad element");
    return elements[static_cast<std::size_t>(g)];
  }
  const Matrix& generator() const { return (*this)(order > 1 ? 1 : 0); }
};

// Builds U(g) = generator^g and verifies the cyclic law.
inline FiniteAbelianRep make_rep(int order, const Matrix& generator,
                                 const Tolerance& tol = {}) {
  validate(tol);
  if (order < 1) throw IndexOutOfRange("make_rep: order must be positive");
  if (generator.rows() != generator.cols() || generator.size() == 0)
    throw DimMismatch("make_rep: generator must be square and nonempty");
  if (!is_unitary(generator, tol.eq_tol))
    throw Error("make_rep: generator is not unitary");
  FiniteAbelianRep rep;
  rep.order = order;
  rep.dim = generator.rows();
  rep.elements.resize(static_cast<std::size_t>(order));
  rep.elements[0] = Matrix::Identity(rep.dim, rep.dim);
  for (int g = 1; g < order; ++g) rep.elements[g] = rep.elements[g - 1] * generator;
  if (!approx_equal(rep.elements[order - 1] * generator,
                    rep.elements[0], tol.eq_tol))
    throw Error("make_rep: generator order does not divide the group order");
  return rep;
}

inline FiniteAbelianRep trivial_representation(int order, Index dim) {
  FiniteAbelianRep rep;
  rep.order = order;
  rep.dim = dim;
  rep.elements.assign(static_cast<std::size_t>(order), Matrix::Identity(dim, dim));
  return rep;
}

// Cyclic shift on one n-level site: S|m> = |m+1 mod n>.
inline Matrix shift_matrix(int n_sites) {
  if (n_sites < 2) throw IndexOutOfRange("shift_matrix: need at least two sites");
  Matrix s = Matrix::Zero(n_sites, n_sites);
  for (int m = 0; m < n_sites; ++m) s((m + 1) % n_sites, m) = 1.0;
  return s;
}

// Diagonal regular shift representation on n_systems sites of n_sites levels:
// the generator is S tensored n_systems times.
inline FiniteAbelianRep shift_representation(int n_sites, int n_systems,
                                             Index dim_cap = 4096,
                                             const Tolerance& tol = {}) {
  if (n_systems < 1)
    throw IndexOutOfRange("shift_representation: need at least one system");
  const Matrix s = shift_matrix(n_sites);
  Matrix gen = s;
  Index dim = n_sites;
  for (int k = 1; k < n_systems; ++k) {
    dim *= n_sites;
    if (dim > dim_cap)
      throw DimOverflow("shift_representation: dimension exceeds cap");
    gen = tensor(gen, s).eval();
  }
  if (dim > dim_cap)
    throw DimOverflow("shift_representation: dimension exceeds cap");
  return make_rep(n_sites, gen, tol);
}

// ---- charge sectors ----

struct ChargeSector {
  int charge = 0;        // integer label c
  Complex eigenvalue;    // exp(2*pi*i*c/n)
  Matrix projector;
  Index dimension = 0;
};

struct ChargeDecomposition {
  int order = 0;
  Index dim = 0;
  std::vector<ChargeSector> sectors;  // ascending charge
  // Unitary change of basis; columns are grouped sector by sector, so
  // conjugating by it displays operators in charge-block form.
  Matrix to_charge_basis;

  const ChargeSector* sector(int charge) const {
    for (const auto& s : sectors)
      if (s.charge == charge) return &s;
    return nullptr;
  }
};

inline ChargeDecomposition charge_decomposition(const FiniteAbelianRep& rep,
                                                const Tolerance& tol = {}) {
  validate(tol);
  const int n = rep.order;
  const detail::SpectralBasis sb = detail::spectral_basis(rep.generator(), tol);
  ChargeDecomposition dec;
  dec.order = n;
  dec.dim = rep.dim;
  dec.to_charge_basis.resize(rep.dim, rep.dim);
  Index col = 0;
  for (std::size_t k = 0; k < sb.values.size(); ++k) {
    const Complex v = sb.values[k];
    const double theta = detail::canonical_angle(v, tol.rank_tol);
    const int c = static_cast<int>(std::lround(theta * n / (2.0 * kPi))) % n;
    const Complex root = std::polar(1.0, 2.0 * kPi * c / n);
    if (std::abs(v - root) > std::sqrt(tol.rank_tol))
      throw Error("charge_decomposition: eigenvalue is not an n-th root of unity");
    if (dec.sector(c) != nullptr)
      throw Error("charge_decomposition: duplicate charge label after clustering");
    const Matrix& cols = sb.columns[k];
    dec.sectors.push_back({c, root, cols * cols.adjoint(), cols.cols()});
    dec.to_charge_basis.middleCols(col, cols.cols()) = cols;
    col += cols.cols();
  }
  if (col != rep.dim)
    throw IncompleteDecomposition("charge_decomposition: sectors do not span");
  return dec;
}

// ---- charge observable ----

struct ChargeObservable {
  int order = 0;
  Matrix matrix;  // sum over sectors of (2*pi*c/n) * P_c
};

inline ChargeObservable charge_observable(const ChargeDecomposition& dec,
                                          const Tolerance& tol = {}) {
  validate(tol);
  Matrix sum_p = Matrix::Zero(dec.dim, dec.dim);
  Matrix c_mat = Matrix::Zero(dec.dim, dec.dim);
  for (const auto& s : dec.sectors) {
    sum_p += s.projector;
    c_mat += (2.0 * kPi * s.charge / dec.order) * s.projector;
  }
  if (!approx_equal(sum_p, Matrix::Identity(dec.dim, dec.dim), tol.eq_tol))
    throw IncompleteDecomposition("charge_observable: projectors do not resolve the identity");
  return {dec.order, c_mat};
}

// ---- two-system charge eigenstates for the three-site example ----

// |c;r> = 3^{-1/2} sum_m exp(-2*pi*i*m*c/3) |m, m+r mod 3> on a pair of
// three-level sites; U(1)|c;r> = exp(2*pi*i*c/3)|c;r>.
inline Vector charge_eigenstate(int charge, int offset) {
  if (charge < 0 || charge >= 3 || offset < 0 || offset >= 3)
    throw IndexOutOfRange("charge_eigenstate: labels must lie in [0, 3)");
  Vector v = Vector::Zero(9);
  for (int m = 0; m < 3; ++m) {
    const Complex phase = std::polar(1.0, -2.0 * kPi * m * charge / 3.0);
    v(3 * m + (m + offset) % 3) = phase / std::sqrt(3.0);
  }
  return v;
}

}  // namespace qsym
