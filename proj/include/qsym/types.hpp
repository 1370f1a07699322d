#pragma once
// types.hpp — Shared dense types, tolerance policy, and error taxonomy.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qsym {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// eq_tol bounds entrywise equality checks; rank_tol decides rank and
// eigenvalue-cluster cutoffs. Kept distinct: equality is stricter than rank.
struct Tolerance {
  double eq_tol = 1e-10;
  double rank_tol = 1e-9;
};

inline void validate(const Tolerance& tol) {
  if (!(tol.eq_tol > 0.0) || !(tol.rank_tol > 0.0))
    throw std::invalid_argument("Tolerance: bounds must be positive");
}

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimMismatch : Error { using Error::Error; };
struct DimOverflow : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct IncompleteDecomposition : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NotCentral : Error { using Error::Error; };
struct DegenerateDraw : Error { using Error::Error; };
struct TheoremViolation : Error { using Error::Error; };

}  // namespace qsym
