#pragma once
// algebra.hpp — Finite-dimensional *-algebras of matrices: generated closures,
// commutants, centers, and block (Wedderburn) structure.
//
// An algebra is carried as an HS-orthonormal basis of its span. Structural
// queries are free functions and pure, so shared instances can be read from
// multiple threads; the only randomized step (the generic central element in
// block_decomposition) takes an explicit seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qsym/group.hpp"
#include "qsym/linalg.hpp"
#include "qsym/types.hpp"

namespace qsym {

struct StarAlgebra {
  Index dim = 0;               // ambient Hilbert space dimension
  std::vector<Matrix> basis;   // HS-orthonormal, adjoint- and product-closed span
  bool contains_identity = false;

  Index algebra_dim() const { return static_cast<Index>(basis.size()); }
};

// HS projection onto the algebra's span (the trace-preserving conditional
// expectation when the algebra is unital).
inline Matrix project_onto(const StarAlgebra& alg, const Matrix& x) {
  if (x.rows() != alg.dim || x.cols() != alg.dim)
    throw DimMismatch("project_onto: shape mismatch");
  Matrix p = Matrix::Zero(alg.dim, alg.dim);
  for (const Matrix& b : alg.basis) p += hs_inner(b, x) * b;
  return p;
}

inline double containment_residual(const StarAlgebra& alg, const Matrix& x) {
  return hs_norm(x - project_onto(alg, x));
}

inline bool contains(const StarAlgebra& alg, const Matrix& x,
                     const Tolerance& tol = {}) {
  return containment_residual(alg, x) < tol.eq_tol;
}

inline bool algebra_leq(const StarAlgebra& a, const StarAlgebra& b,
                        const Tolerance& tol = {}) {
  for (const Matrix& m : a.basis)
    if (!contains(b, m, tol)) return false;
  return true;
}

inline bool same_span(const StarAlgebra& a, const StarAlgebra& b,
                      const Tolerance& tol = {}) {
  return a.algebra_dim() == b.algebra_dim() && algebra_leq(a, b, tol) &&
         algebra_leq(b, a, tol);
}

namespace detail {

inline bool spans_identity(const std::vector<Matrix>& basis, Index dim,
                           double eq_tol) {
  Matrix id = Matrix::Identity(dim, dim);
  Matrix p = Matrix::Zero(dim, dim);
  for (const Matrix& b : basis) p += hs_inner(b, id) * b;
  return hs_norm(id - p) < eq_tol;
}

}  // namespace detail

// Smallest *-algebra containing the generators. The identity is always
// adjoined. Closure runs a worklist: every accepted element is later combined
// with the whole basis (both product orders and the adjoint), so the loop
// terminates only once the span is multiplicatively closed.
inline StarAlgebra span_closure(const std::vector<Matrix>& generators,
                                const Tolerance& tol = {}) {
  validate(tol);
  if (generators.empty())
    throw DimMismatch("span_closure: no generators given");
  const Index d = generators.front().rows();
  if (d == 0) throw DimMismatch("span_closure: empty generator");
  for (const Matrix& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw DimMismatch("span_closure: generators on different spaces");

  std::vector<Matrix> basis;
  mgs_accept(basis, Matrix::Identity(d, d), tol.rank_tol);
  for (const Matrix& g : generators) mgs_accept(basis, g, tol.rank_tol);

  for (std::size_t u = 0; u < basis.size(); ++u) {
    mgs_accept(basis, basis[u].adjoint(), tol.rank_tol);
    for (std::size_t v = 0; v < basis.size(); ++v) {
      mgs_accept(basis, basis[u] * basis[v], tol.rank_tol);
      if (v != u) mgs_accept(basis, basis[v] * basis[u], tol.rank_tol);
      if (basis.size() == static_cast<std::size_t>(d * d)) break;
    }
    if (basis.size() == static_cast<std::size_t>(d * d)) break;
  }
  if (basis.size() == static_cast<std::size_t>(d * d)) {
    // Full matrix algebra: replace by the canonical matrix-unit basis.
    basis.clear();
    for (Index r = 0; r < d; ++r)
      for (Index c = 0; c < d; ++c) {
        Matrix e = Matrix::Zero(d, d);
        e(r, c) = 1.0;
        basis.push_back(e);
      }
  }
  return {d, std::move(basis), true};
}

inline StarAlgebra join(const StarAlgebra& a, const StarAlgebra& b,
                        const Tolerance& tol = {}) {
  if (a.dim != b.dim) throw DimMismatch("join: ambient dimensions differ");
  std::vector<Matrix> gens = a.basis;
  gens.insert(gens.end(), b.basis.begin(), b.basis.end());
  return span_closure(gens, tol);
}

// Projector onto the union of the ranges of the basis elements; acts as the
// algebra's own unit.
inline Matrix support_projector(const StarAlgebra& alg,
                                const Tolerance& tol = {}) {
  const Index d = alg.dim;
  Matrix stacked(d, d * alg.algebra_dim());
  for (Index k = 0; k < alg.algebra_dim(); ++k)
    stacked.middleCols(k * d, d) = alg.basis[static_cast<std::size_t>(k)];
  Eigen::BDCSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = tol.rank_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  const Matrix u = svd.matrixU().leftCols(rank);
  return u * u.adjoint();
}

// Commutant {x : [x, b] = 0 for all basis b}, computed as the null space of
// the positive operator H = sum_b M_b^dagger M_b on the dim^2-dimensional
// operator space, where M_b vec(x) = vec(x b - b x). Null directions are kept
// at rank_tol relative to the largest eigenvalue.
inline StarAlgebra commutant(const StarAlgebra& alg,
                             const Tolerance& tol = {}) {
  validate(tol);
  const Index d = alg.dim;
  const Index dd = d * d;
  Matrix h = Matrix::Zero(dd, dd);
  const Matrix id = Matrix::Identity(d, d);
  for (const Matrix& b : alg.basis) {
    const Matrix bc = b.conjugate();
    const Matrix bt = b.transpose();
    h += Eigen::kroneckerProduct(Matrix(bc * bt), id);
    h += Eigen::kroneckerProduct(id, Matrix(b.adjoint() * b));
    h -= Eigen::kroneckerProduct(bc, b);
    h -= Eigen::kroneckerProduct(bt, b.adjoint());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw Error("commutant: eigensolver failed");
  const auto& ev = es.eigenvalues();
  const double cut = tol.rank_tol * std::max(1.0, ev(dd - 1));
  std::vector<Matrix> basis;
  for (Index k = 0; k < dd; ++k)
    if (ev(k) <= cut) basis.push_back(unvec(es.eigenvectors().col(k), d, d));
  StarAlgebra out{d, std::move(basis), false};
  out.contains_identity = detail::spans_identity(out.basis, d, tol.eq_tol);
  return out;
}

// Center = alg intersected with its commutant; computed by projecting the
// commutant basis onto alg's span and re-orthonormalizing. The projection is
// the conditional expectation onto alg, which maps the commutant into the
// intersection.
inline StarAlgebra center(const StarAlgebra& alg, const Tolerance& tol = {}) {
  const StarAlgebra com = commutant(alg, tol);
  std::vector<Matrix> projected;
  projected.reserve(com.basis.size());
  for (const Matrix& x : com.basis) projected.push_back(project_onto(alg, x));
  StarAlgebra out{alg.dim, orthonormalize_hs(projected, tol.rank_tol), false};
  out.contains_identity =
      detail::spans_identity(out.basis, alg.dim, tol.eq_tol);
  return out;
}

// ---- block structure ----

struct Block {
  Matrix projector;     // minimal central projector carving out the block
  Index dimension = 0;  // full matrix algebra M_m inside: dimension m
};

struct BlockStructure {
  std::vector<Block> blocks;
  bool is_factor = false;
  Index center_dim = 0;
};

namespace detail {

inline double support_center(const Matrix& p) {
  double weight = 0.0, total = 0.0;
  for (Index k = 0; k < p.rows(); ++k) {
    weight += static_cast<double>(k) * p(k, k).real();
    total += p(k, k).real();
  }
  return total > 0.0 ? weight / total : 0.0;
}

}  // namespace detail

// Wedderburn block data from the spectral projectors of a generic hermitian
// central element. A draw whose spectrum fails to separate the minimal
// central projectors (or collides with the support complement) is rejected
// and retried with fresh randomness, at most five times.
inline BlockStructure block_decomposition(const StarAlgebra& alg,
                                          const Tolerance& tol = {},
                                          std::uint64_t seed = 1) {
  validate(tol);
  const StarAlgebra z = center(alg, tol);
  const Index c = z.algebra_dim();
  if (c == 0) throw Error("block_decomposition: empty center");

  std::vector<Matrix> herm_cand;
  for (const Matrix& m : z.basis) {
    herm_cand.push_back(m + m.adjoint());
    herm_cand.push_back(Complex(0, 1) * (m - m.adjoint()));
  }
  const std::vector<Matrix> herm = orthonormalize_hs(herm_cand, tol.rank_tol);
  if (static_cast<Index>(herm.size()) != c)
    throw Error("block_decomposition: center is not adjoint-closed");

  std::mt19937_64 rng(seed);
  const auto draw = [&rng]() {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1p-53) - 1.0;
  };

  for (int attempt = 0; attempt < 5; ++attempt) {
    Matrix generic = Matrix::Zero(alg.dim, alg.dim);
    for (const Matrix& hmat : herm) generic += draw() * hmat;
    generic = 0.5 * (generic + generic.adjoint()).eval();

    std::vector<EigenPair> pairs;
    try {
      pairs = eigendecompose_normal(generic, tol);
    } catch (const NotNormal&) {
      continue;
    }
    std::vector<std::pair<Complex, Matrix>> kept;
    for (const EigenPair& p : pairs)
      if (contains(alg, p.projector, tol)) kept.push_back({p.value, p.projector});
    if (static_cast<Index>(kept.size()) != c) continue;

    std::vector<Block> blocks;
    std::vector<double> eigs;
    bool clean = true;
    for (const auto& [value, proj] : kept) {
      std::vector<Matrix> compressed;
      compressed.reserve(alg.basis.size());
      for (const Matrix& b : alg.basis) compressed.push_back(proj * b * proj);
      const Index span =
          static_cast<Index>(orthonormalize_hs(compressed, tol.rank_tol).size());
      const Index m = static_cast<Index>(std::lround(std::sqrt(double(span))));
      if (m * m != span) {
        clean = false;
        break;
      }
      blocks.push_back({proj, m});
      eigs.push_back(value.real());
    }
    if (!clean) continue;

    std::vector<std::size_t> idx(blocks.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (blocks[a].dimension != blocks[b].dimension)
        return blocks[a].dimension > blocks[b].dimension;
      const double sa = detail::support_center(blocks[a].projector);
      const double sb = detail::support_center(blocks[b].projector);
      if (std::abs(sa - sb) > 1e-9) return sa < sb;
      return eigs[a] < eigs[b];
    });
    BlockStructure out;
    for (std::size_t k : idx) out.blocks.push_back(std::move(blocks[k]));
    out.center_dim = c;
    out.is_factor = (out.blocks.size() == 1);
    return out;
  }
  throw DegenerateDraw(
      "block_decomposition: no generic central element after five draws");
}

struct IsomorphismReport {
  bool isomorphic = false;
  std::vector<Index> left_profile;   // ascending block dimensions
  std::vector<Index> right_profile;
  std::string reason;
};

namespace detail {

inline std::string profile_string(const std::vector<Index>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace detail

// Two finite-dimensional *-algebras are isomorphic exactly when their block
// dimension multisets agree.
inline IsomorphismReport find_isomorphism(const StarAlgebra& a,
                                          const StarAlgebra& b,
                                          const Tolerance& tol = {},
                                          std::uint64_t seed = 1) {
  IsomorphismReport rep;
  for (const Block& blk : block_decomposition(a, tol, seed).blocks)
    rep.left_profile.push_back(blk.dimension);
  for (const Block& blk : block_decomposition(b, tol, seed).blocks)
    rep.right_profile.push_back(blk.dimension);
  std::sort(rep.left_profile.begin(), rep.left_profile.end());
  std::sort(rep.right_profile.begin(), rep.right_profile.end());
  rep.isomorphic = rep.left_profile == rep.right_profile;
  rep.reason = rep.isomorphic
                   ? "matching block profiles " +
                         detail::profile_string(rep.left_profile)
                   : "block profiles differ: " +
                         detail::profile_string(rep.left_profile) + " vs " +
                         detail::profile_string(rep.right_profile);
  return rep;
}

// ---- symmetry-structured algebras ----

// All operators block diagonal across charge sectors: one full matrix block
// per sector.
inline StarAlgebra weakly_symmetric_algebra(const ChargeDecomposition& dec,
                                            const Tolerance& tol = {}) {
  validate(tol);
  std::vector<Matrix> basis;
  Index col = 0;
  for (const ChargeSector& s : dec.sectors) {
    const Matrix cols = dec.to_charge_basis.middleCols(col, s.dimension);
    for (Index i = 0; i < s.dimension; ++i)
      for (Index j = 0; j < s.dimension; ++j)
        basis.push_back(cols.col(i) * cols.col(j).adjoint());
    col += s.dimension;
  }
  return {dec.dim, std::move(basis), true};
}

// All operators supported on the trivial charge sector. Does not contain the
// ambient identity unless that sector is everything.
inline StarAlgebra strongly_symmetric_algebra(const ChargeDecomposition& dec,
                                              const Tolerance& tol = {}) {
  validate(tol);
  const ChargeSector* s0 = dec.sector(0);
  if (s0 == nullptr)
    throw IncompleteDecomposition(
        "strongly_symmetric_algebra: no trivial sector");
  Index col = 0;
  for (const ChargeSector& s : dec.sectors) {
    if (s.charge == 0) break;
    col += s.dimension;
  }
  const Matrix cols = dec.to_charge_basis.middleCols(col, s0->dimension);
  std::vector<Matrix> basis;
  for (Index i = 0; i < s0->dimension; ++i)
    for (Index j = 0; j < s0->dimension; ++j)
      basis.push_back(cols.col(i) * cols.col(j).adjoint());
  StarAlgebra out{dec.dim, std::move(basis), s0->dimension == dec.dim};
  return out;
}

}  // namespace qsym
