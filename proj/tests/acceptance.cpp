// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit 0 exactly
// when every criterion passes. The CLI binary path arrives as argv[1] for
// the determinism criterion; without it that criterion fails.

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qsym/algebra.hpp"
#include "qsym/group.hpp"
#include "qsym/linalg.hpp"
#include "qsym/relativize.hpp"
#include "qsym/scenario.hpp"
#include "qsym/twirl.hpp"
#include "qsym/types.hpp"
#include "test_support.hpp"

namespace {

using namespace qsym;

constexpr double kTol = 1e-10;

// Every algebra a criterion builds lands here; the double-commutant
// criterion then sweeps the whole collection.
std::vector<std::pair<std::string, StarAlgebra>> g_algebras;

void track(const std::string& name, const StarAlgebra& alg) {
  g_algebras.emplace_back(name, alg);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome z3_reproduction() {
  const FiniteAbelianRep rep = shift_representation(3, 2);
  const ChargeDecomposition dec = charge_decomposition(rep);
  std::vector<Index> mult;
  for (const ChargeSector& s : dec.sectors) mult.push_back(s.dimension);
  if (mult != std::vector<Index>{3, 3, 3})
    return {false, "sector multiplicities are not (3,3,3)"};

  const Matrix c = charge_observable(dec).matrix;
  const Matrix& v = dec.to_charge_basis;
  Matrix expected = Matrix::Zero(9, 9);
  for (Index k = 0; k < 9; ++k)
    expected(k, k) = 2.0 * kPi * static_cast<double>(k / 3) / 3.0;
  const double dev = max_abs(v.adjoint() * c * v - expected);
  if (dev >= kTol) return {false, "charge diagonal deviates"};
  std::ostringstream os;
  os << "multiplicities (3,3,3); charge diagonal deviation " << dev;
  return {true, os.str()};
}

Outcome twirl_laws() {
  const FiniteAbelianRep rep = shift_representation(3, 2);
  const ChargeDecomposition dec = charge_decomposition(rep);
  const Matrix c = charge_observable(dec).matrix;
  const Matrix p0 = dec.sector(0)->projector;
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Matrix rho = test::random_density(9, rng);
    const Matrix w = weak_twirl(rep, rho);
    worst = std::max(worst, max_abs(weak_twirl(rep, w) - w));
    worst = std::max(worst, std::abs(w.trace() - rho.trace()));
    worst = std::max(worst, max_abs(c * w - w * c));
    const Matrix s = strong_twirl(rep, rho);
    worst = std::max(worst, max_abs(s - p0 * rho * p0));
    worst = std::max(worst, max_abs(strong_twirl(rep, s) - s));
  }
  std::ostringstream os;
  os << "200 densities, worst residual " << worst;
  return {worst < kTol, os.str()};
}

Outcome algebra_structure() {
  Tolerance tol;  // rank_tol 1e-9
  const ChargeDecomposition dec =
      charge_decomposition(shift_representation(3, 2), tol);
  const StarAlgebra weak = weakly_symmetric_algebra(dec, tol);
  const StarAlgebra strong = strongly_symmetric_algebra(dec, tol);
  track("weakly symmetric (order 3)", weak);
  track("strongly symmetric (order 3)", strong);
  const BlockStructure wb = block_decomposition(weak, tol);
  const BlockStructure sb = block_decomposition(strong, tol);
  const bool pass = weak.algebra_dim() == 27 && wb.center_dim == 3 &&
                    wb.blocks.size() == 3 && !wb.is_factor &&
                    strong.algebra_dim() == 9 && sb.center_dim == 1 &&
                    sb.is_factor;
  std::ostringstream os;
  os << "weak dim " << weak.algebra_dim() << " center " << wb.center_dim
     << " blocks " << wb.blocks.size() << "; strong dim "
     << strong.algebra_dim() << " center " << sb.center_dim
     << (sb.is_factor ? " factor" : " non-factor");
  return {pass, os.str()};
}

Outcome yen_map() {
  const FiniteAbelianRep local = shift_representation(2, 1);
  const ChargeObservable joint_charge =
      charge_observable(charge_decomposition(shift_representation(2, 2)));
  std::mt19937_64 rng(4);
  double worst = 0.0;
  bool symmetric = true;
  for (int k = 0; k < 100; ++k) {
    const Matrix a = test::random_matrix(2, rng);
    const Matrix b = test::random_matrix(2, rng);
    worst = std::max(worst, max_abs(yen(local, a * b) - yen(local, a) * yen(local, b)));
    worst = std::max(worst, max_abs(yen(local, a.adjoint()) - yen(local, a).adjoint()));
    // Injectivity with a modulus: relativization scales the HS norm by the
    // square root of the group order, so distinct operators stay distinct.
    worst = std::max(worst,
                     std::abs(hs_norm(yen(local, a - b)) -
                              std::sqrt(2.0) * hs_norm(a - b)));
    symmetric = symmetric && is_weakly_symmetric(joint_charge, yen(local, a));
  }
  worst = std::max(worst, max_abs(yen(local, test::id2()) - Matrix::Identity(4, 4)));
  const bool exact =
      max_abs(yen(local, test::pauli_z()) -
              tensor(test::pauli_z(), test::pauli_z())) == 0.0 &&
      max_abs(yen(local, test::pauli_x()) -
              tensor(test::id2(), test::pauli_x())) == 0.0;
  std::ostringstream os;
  os << "100 pairs, worst residual " << worst
     << (exact ? "; frozen images exact" : "; frozen images WRONG")
     << (symmetric ? "" : "; image left the weakly symmetric algebra");
  return {worst < kTol && exact && symmetric, os.str()};
}

Outcome theorem_equality() {
  const TheoremReport rep = verify_theorem1();
  const Matrix expected = tensor(test::id2(), test::pauli_x());
  const double obs_dev = max_abs(rep.observable - expected);
  const bool pass = rep.circuit_deviation < 1e-12 && obs_dev < 1e-12 &&
                    is_unitary(rep.alice_unitary, 1e-12);
  std::ostringstream os;
  os << "circuit deviation " << rep.circuit_deviation
     << ", observable deviation " << obs_dev;
  return {pass, os.str()};
}

Outcome charge_accessibility() {
  Tolerance tol;
  const StarAlgebra side_a = perspectival_algebra_at(2, 2, 0, tol);
  const StarAlgebra side_b = perspectival_algebra_at(2, 2, 1, tol);
  const StarAlgebra joined = join(side_a, side_b, tol);
  const ChargeDecomposition dec =
      charge_decomposition(shift_representation(2, 2), tol);
  const StarAlgebra weak = weakly_symmetric_algebra(dec, tol);
  const StarAlgebra strong = strongly_symmetric_algebra(dec, tol);
  track("perspectival B|A (order 2)", side_a);
  track("perspectival A|B (order 2)", side_b);
  track("collaborative join (order 2)", joined);
  track("weakly symmetric (order 2)", weak);
  track("strongly symmetric (order 2)", strong);
  const Matrix xx = tensor(test::pauli_x(), test::pauli_x());
  const double residual = containment_residual(joined, xx);
  const bool pass = residual < kTol && joined.algebra_dim() == 8 &&
                    same_span(joined, weak, tol) && !contains(strong, xx, tol);
  std::ostringstream os;
  os << "X(x)X residual " << residual << ", join dim " << joined.algebra_dim()
     << ", strong-side query " << (contains(strong, xx, tol) ? "true" : "false");
  return {pass, os.str()};
}

Outcome ambiguity_witness() {
  Tolerance tol;
  const AmbiguityWitness w = momentum_ambiguity_witness(3, tol);
  double comm_dev = 0.0;
  for (std::size_t i = 0; i < w.plain.size(); ++i)
    for (std::size_t k = 0; k < w.plain.size(); ++k) {
      const Matrix lhs = w.plain[i] * w.plain[k] - w.plain[k] * w.plain[i];
      const Matrix rhs =
          w.shifted[i] * w.shifted[k] - w.shifted[k] * w.shifted[i];
      comm_dev = std::max(comm_dev, max_abs(lhs - rhs));
    }
  track("plain generator join (order 3)", w.plain_join);
  track("shifted generator join (order 3)", w.shifted_join);
  const bool pass = comm_dev < kTol && w.plain_contains_total &&
                    !w.shifted_contains_total;
  std::ostringstream os;
  os << "commutator deviation " << comm_dev << "; joins "
     << (w.plain_contains_total ? "do" : "do not") << " / "
     << (w.shifted_contains_total ? "do" : "do not")
     << " contain the total charge";
  return {pass, os.str()};
}

Outcome double_commutant() {
  Tolerance tol;
  for (const auto& [name, alg] : g_algebras) {
    const StarAlgebra bicom = commutant(commutant(alg, tol), tol);
    // A non-unital algebra can only recover itself together with the line
    // through the complement of its support: the smallest unital extension.
    StarAlgebra expected = alg;
    if (!alg.contains_identity) {
      std::vector<Matrix> gens = alg.basis;
      gens.push_back(Matrix::Identity(alg.dim, alg.dim));
      expected = span_closure(gens, tol);
    }
    if (!algebra_leq(alg, bicom, tol) || !same_span(bicom, expected, tol))
      return {false, "double commutant mismatch for: " + name};
  }
  std::ostringstream os;
  os << g_algebras.size() << " algebras checked";
  return {true, os.str()};
}

Outcome route_compliance() {
  const ModeSpace ms = build_apparatus();
  const Route base = apparatus_route(ms);

  // Circuits on (register, A, B): push through the mode embedding and
  // check the sector constraint there.
  const Matrix lift = tensor(Matrix::Identity(2, 2), ms.embed);
  std::vector<Matrix> lifted_ps;
  for (const auto& [in, out] : base.sectors)
    lifted_ps.push_back(tensor(Matrix::Identity(2, 2), in));
  const Route lifted = delta_route(lifted_ps);

  double worst = 0.0;
  for (const Circuit& c : {alice_momentum_circuit(Picture::Alice),
                           alice_momentum_circuit(Picture::Eve)}) {
    const Matrix pushed = lift * compile(c) * lift.adjoint();
    worst = std::max(worst, route_deviation(pushed, lifted));
  }

  // The six-wire position circuit natively in the mode description.
  const Matrix e6 = apparatus_register_embed();
  std::vector<Matrix> ps6;
  for (Index a = 0; a < 2; ++a) {
    Matrix sel = Matrix::Zero(16, 16);
    for (Index r = 0; r < 4; ++r)
      for (Index b = 0; b < 2; ++b) sel(r * 4 + a * 2 + b, r * 4 + a * 2 + b) = 1.0;
    ps6.push_back(e6 * sel * e6.adjoint());
  }
  worst = std::max(
      worst,
      route_deviation(compile(alice_position_circuit(Picture::Eve)),
                      delta_route(ps6)));

  // The beam splitter itself preserves the single-excitation sector.
  const Matrix bs = beam_splitter();
  Matrix exc = Matrix::Zero(4, 4);
  exc(1, 1) = 1.0;
  exc(2, 2) = 1.0;
  Matrix rest = Matrix::Identity(4, 4) - exc;
  worst = std::max(worst, route_deviation(bs, delta_route({exc, rest})));

  std::ostringstream os;
  os << "worst route deviation " << worst;
  return {worst < 1e-12, os.str()};
}

std::pair<int, std::string> run_command(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, out};
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  return {pclose(pipe), out};
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "CLI binary path not provided"};
  const std::string quoted = "\"" + cli + "\"";
  for (const std::string& args :
       {std::string("table1 --order 2 --systems 2"), std::string("theorem1")}) {
    const auto first = run_command(quoted + " " + args + " 2>/dev/null");
    const auto second = run_command(quoted + " " + args + " 2>/dev/null");
    if (first.first != 0 || second.first != 0)
      return {false, args + " exited nonzero"};
    if (first.second.empty() || first.second != second.second)
      return {false, args + " output differs between runs"};
  }
  return {true, "table1 and theorem1 byte-identical across two runs"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  int failures = 0;
  const auto run = [&failures](int num, const std::string& name,
                               const std::function<Outcome()>& body) {
    Outcome out;
    try {
      out = body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << num << ". " << name;
    if (!out.detail.empty()) std::cout << " — " << out.detail;
    std::cout << "\n";
    if (!out.pass) ++failures;
  };

  run(1, "order-three reproduction", z3_reproduction);
  run(2, "twirl laws on random densities", twirl_laws);
  run(3, "weak/strong algebra structure", algebra_structure);
  run(4, "relativization map properties", yen_map);
  run(5, "momentum measurement descriptions agree", theorem_equality);
  run(6, "total charge accessibility", charge_accessibility);
  run(7, "momentum ambiguity witness", ambiguity_witness);
  run(8, "double commutant closure", double_commutant);
  run(9, "route compliance", route_compliance);
  run(10, "deterministic CLI reports", [&cli] { return determinism(cli); });

  if (failures == 0) {
    std::cout << "acceptance: all 10 criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << failures << " criteri"
            << (failures == 1 ? "on" : "a") << " failed\n";
  return 1;
}
