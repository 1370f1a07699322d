#pragma once
// linalg.hpp — Dense complex linear algebra: tensor products, Hilbert-Schmidt
// geometry, and spectral decomposition of normal matrices with clustered,
// deterministically ordered eigenprojectors.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "qsym/types.hpp"

namespace qsym {

// ---- entrywise comparisons ----

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tol;
}

inline bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && approx_equal(m, m.adjoint(), tol);
}

inline bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return approx_equal(m.adjoint() * m, Matrix::Identity(m.rows(), m.cols()),
                      tol);
}

inline bool is_projector(const Matrix& m, double tol) {
  return is_hermitian(m, tol) && approx_equal(m * m, m, tol);
}

// ---- composition ----

// Left factor carries the outer (block) index: block (i,j) of the result is
// a(i,j) * b.
inline Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

inline Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Vector basis_state(Index dim, Index k) {
  if (k < 0 || k >= dim) throw IndexOutOfRange("basis_state: index out of range");
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

// Reorders the tensor factors of an operator on a product space.
// order[p] names the input factor placed at output slot p; slot 0 is the
// outermost (most significant) factor on both sides.
inline Matrix reorder_systems(const Matrix& m, const std::vector<Index>& dims,
                              const std::vector<Index>& order) {
  Index total = 1;
  for (Index d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw DimMismatch("reorder_systems: dims do not factor the matrix");
  if (order.size() != dims.size())
    throw DimMismatch("reorder_systems: order and dims length differ");
  const Index k = static_cast<Index>(dims.size());
  std::vector<Index> in_stride(k, 1);
  for (Index f = k - 2; f >= 0; --f) in_stride[f] = in_stride[f + 1] * dims[f + 1];
  std::vector<Index> sigma(total);
  for (Index idx = 0; idx < total; ++idx) {
    Index out = 0;
    for (Index p = 0; p < k; ++p) {
      const Index f = order[p];
      const Index digit = (idx / in_stride[f]) % dims[f];
      out = out * dims[f] + digit;
    }
    sigma[idx] = out;
  }
  Matrix res(total, total);
  for (Index r = 0; r < total; ++r)
    for (Index c = 0; c < total; ++c) res(sigma[r], sigma[c]) = m(r, c);
  return res;
}

// ---- Hilbert-Schmidt geometry ----

inline Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimMismatch("hs_inner: shape mismatch");
  return a.conjugate().cwiseProduct(b).sum();  // tr(a^dagger b)
}

inline double hs_norm(const Matrix& a) { return a.norm(); }

inline Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimMismatch("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

// Modified Gram-Schmidt over the HS inner product, two passes per candidate;
// residuals below rank_tol are treated as dependent and dropped. Returns true
// when the candidate opened a new direction.
inline bool mgs_accept(std::vector<Matrix>& basis, Matrix v, double rank_tol) {
  double n0 = hs_norm(v);
  if (n0 <= rank_tol) return false;
  v /= n0;
  for (int pass = 0; pass < 2; ++pass)
    for (const Matrix& b : basis) v -= hs_inner(b, v) * b;
  const double r = hs_norm(v);
  if (r <= rank_tol) return false;
  basis.push_back(v / r);
  return true;
}

inline std::vector<Matrix> orthonormalize_hs(const std::vector<Matrix>& cand,
                                             double rank_tol) {
  std::vector<Matrix> basis;
  for (const Matrix& c : cand) mgs_accept(basis, c, rank_tol);
  return basis;
}

// ---- spectral decomposition of normal matrices ----

struct EigenPair {
  Complex value;
  Matrix projector;
  Index dimension;  // rank of the projector
};

namespace detail {

// Canonical sort angle: arguments live in [0, 2*pi); the zero eigenvalue gets
// angle 0, and angles within the cluster radius of 2*pi wrap back to 0 so
// roots of unity order by charge.
inline double canonical_angle(Complex v, double rank_tol) {
  const double mod = std::abs(v);
  if (mod <= rank_tol) return 0.0;
  double th = std::atan2(v.imag(), v.real());
  if (th < 0.0) th += 2.0 * kPi;
  if ((2.0 * kPi - th) * mod <= rank_tol) th = 0.0;
  return th;
}

struct SpectralBasis {
  std::vector<Complex> values;   // cluster representatives, canonical order
  std::vector<Matrix> columns;   // orthonormal column block per cluster
};

inline SpectralBasis spectral_basis(const Matrix& m, const Tolerance& tol) {
  validate(tol);
  if (m.rows() != m.cols() || m.size() == 0)
    throw DimMismatch("eigendecompose_normal: matrix must be square and nonempty");
  // The commutator with the adjoint scales quadratically with the matrix.
  const double scale = std::max(1.0, m.squaredNorm());
  if (max_abs(m * m.adjoint() - m.adjoint() * m) > tol.eq_tol * scale)
    throw NotNormal("eigendecompose_normal: commutator with adjoint exceeds tolerance");

  Eigen::ComplexSchur<Matrix> schur(m, true);
  if (schur.info() != Eigen::Success)
    throw Error("eigendecompose_normal: Schur iteration failed");
  const Matrix& q = schur.matrixU();
  const Vector lam = schur.matrixT().diagonal();
  const Index d = m.rows();

  // Transitive clustering at rank_tol.
  std::vector<Index> parent(d);
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j)
      if (std::abs(lam(i) - lam(j)) <= tol.rank_tol) parent[find(i)] = find(j);

  std::vector<std::vector<Index>> members(d);
  for (Index i = 0; i < d; ++i) members[find(i)].push_back(i);

  struct Cluster {
    Complex value;
    std::vector<Index> cols;
  };
  std::vector<Cluster> clusters;
  for (auto& grp : members) {
    if (grp.empty()) continue;
    Complex mean = 0.0;
    for (Index i : grp) mean += lam(i);
    mean /= static_cast<double>(grp.size());
    clusters.push_back({mean, grp});
  }
  std::sort(clusters.begin(), clusters.end(),
            [&](const Cluster& a, const Cluster& b) {
              const double ta = canonical_angle(a.value, tol.rank_tol);
              const double tb = canonical_angle(b.value, tol.rank_tol);
              if (ta != tb) return ta < tb;
              return std::abs(a.value) < std::abs(b.value);
            });

  SpectralBasis out;
  for (const Cluster& c : clusters) {
    Matrix cols(d, static_cast<Index>(c.cols.size()));
    for (Index k = 0; k < cols.cols(); ++k) cols.col(k) = q.col(c.cols[k]);
    out.values.push_back(c.value);
    out.columns.push_back(std::move(cols));
  }
  return out;
}

}  // namespace detail

// Spectral projectors of a normal matrix. Eigenvalues within rank_tol are
// clustered into one projector; pairs come back sorted by complex argument,
// then modulus. Projectors are hermitian, idempotent, mutually orthogonal,
// and resolve the identity.
inline std::vector<EigenPair> eigendecompose_normal(const Matrix& m,
                                                    const Tolerance& tol = {}) {
  const detail::SpectralBasis sb = detail::spectral_basis(m, tol);
  std::vector<EigenPair> pairs;
  pairs.reserve(sb.values.size());
  for (std::size_t k = 0; k < sb.values.size(); ++k) {
    const Matrix& cols = sb.columns[k];
    pairs.push_back({sb.values[k], cols * cols.adjoint(), cols.cols()});
  }
  return pairs;
}

}  // namespace qsym
