#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qsym/linalg.hpp"
#include "qsym/types.hpp"

namespace qsym {

enum class GateKind { Hadamard, PauliX, Swap, BeamSplit };
enum class Picture { Alice, Eve };

struct Control {
  Index wire = 0;
  int polarity = 1;  // gate fires when the wire holds |polarity>
};

struct Gate {
  GateKind kind = GateKind::PauliX;
  std::vector<Index> targets;
  std::vector<Control> controls;
};

// Wire 0 is the most significant bit of a compiled basis index.
struct Circuit {
  std::vector<std::string> wires;
  std::vector<Gate> gates;
};

// Two-mode unitary: Hadamard on the single-excitation pair {|occ,vac>,
// |vac,occ>}, identity on the empty and doubly occupied states.
inline Matrix beam_splitter() {
  Matrix bs = Matrix::Identity(4, 4);
  const double s = 1.0 / std::sqrt(2.0);
  bs(2, 2) = s;
  bs(2, 1) = s;
  bs(1, 2) = s;
  bs(1, 1) = -s;
  return bs;
}

namespace detail {

inline Matrix gate_kernel(GateKind kind) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case GateKind::Hadamard: {
      Matrix h(2, 2);
      h << s, s, s, -s;
      return h;
    }
    case GateKind::PauliX: {
      Matrix x(2, 2);
      x << 0, 1, 1, 0;
      return x;
    }
    case GateKind::Swap: {
      Matrix sw = Matrix::Zero(4, 4);
      sw(0, 0) = 1;
      sw(1, 2) = 1;
      sw(2, 1) = 1;
      sw(3, 3) = 1;
      return sw;
    }
    case GateKind::BeamSplit:
      return beam_splitter();
  }
  throw Error("gate_kernel: unknown gate kind");
}

inline Index gate_target_count(GateKind kind) {
  return (kind == GateKind::Swap || kind == GateKind::BeamSplit) ? 2 : 1;
}

}  // namespace detail

inline Matrix compile(const Circuit& c) {
  const Index k = static_cast<Index>(c.wires.size());
  if (k < 1 || k > 10) throw DimOverflow("compile: wire count out of range");
  const Index dim = Index(1) << k;
  const auto bit_of = [k](Index idx, Index wire) {
    return (idx >> (k - 1 - wire)) & Index(1);
  };
  Matrix u = Matrix::Identity(dim, dim);
  for (const Gate& g : c.gates) {
    const Matrix kernel = detail::gate_kernel(g.kind);
    if (static_cast<Index>(g.targets.size()) !=
        detail::gate_target_count(g.kind))
      throw DimMismatch("compile: wrong number of target wires for gate");
    std::vector<Index> used = g.targets;
    for (const Control& ctl : g.controls) {
      if (ctl.polarity != 0 && ctl.polarity != 1)
        throw IndexOutOfRange("compile: control polarity must be 0 or 1");
      used.push_back(ctl.wire);
    }
    for (Index w : used)
      if (w < 0 || w >= k)
        throw IndexOutOfRange("compile: wire index out of range");
    for (std::size_t i = 0; i < used.size(); ++i)
      for (std::size_t j = i + 1; j < used.size(); ++j)
        if (used[i] == used[j])
          throw DimMismatch("compile: duplicate wire within one gate");
    Matrix gm = Matrix::Zero(dim, dim);
    for (Index col = 0; col < dim; ++col) {
      bool fire = true;
      for (const Control& ctl : g.controls)
        fire = fire && bit_of(col, ctl.wire) == ctl.polarity;
      if (!fire) {
        gm(col, col) = 1.0;
        continue;
      }
      Index in = 0;
      for (Index t : g.targets) in = in * 2 + bit_of(col, t);
      for (Index r = 0; r < kernel.rows(); ++r) {
        if (kernel(r, in) == Complex(0, 0)) continue;
        Index row = col;
        Index digits = r;
        for (std::size_t t = g.targets.size(); t-- > 0;) {
          const Index wire = g.targets[t];
          const Index shift = k - 1 - wire;
          row = (row & ~(Index(1) << shift)) | ((digits & 1) << shift);
          digits >>= 1;
        }
        gm(row, col) += kernel(r, in);
      }
    }
    u = gm * u;
  }
  return u;
}

// Projector onto basis states whose given wire holds |value>.
inline Matrix wire_projector(Index n_wires, Index wire, Index value) {
  if (n_wires < 1 || n_wires > 10)
    throw DimOverflow("wire_projector: wire count out of range");
  if (wire < 0 || wire >= n_wires)
    throw IndexOutOfRange("wire_projector: wire index out of range");
  if (value != 0 && value != 1)
    throw IndexOutOfRange("wire_projector: value must be 0 or 1");
  const Index dim = Index(1) << n_wires;
  Matrix p = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i)
    if (((i >> (n_wires - 1 - wire)) & Index(1)) == value) p(i, i) = 1.0;
  return p;
}

struct ModeSpace {
  std::vector<std::string> modes;
  Index full_dim = 0;
  std::vector<Vector> allowed_basis;
  Matrix embed;         // kinematical space into the allowed mode states
  Matrix restrict_map;  // adjoint of embed
};

// Four modes (A0, A1, B0, B1), leftmost most significant, occupied = |1>.
// The kinematical state |a,b> populates exactly modes A_a and B_b.
inline ModeSpace build_apparatus() {
  ModeSpace ms;
  ms.modes = {"A0", "A1", "B0", "B1"};
  ms.full_dim = 16;
  ms.embed = Matrix::Zero(16, 4);
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) {
      const Index occupied = (a == 0 ? 8 : 4) + (b == 0 ? 2 : 1);
      ms.embed(occupied, a * 2 + b) = 1.0;
      ms.allowed_basis.push_back(basis_state(16, occupied));
    }
  ms.restrict_map = ms.embed.adjoint();
  return ms;
}

struct Route {
  std::vector<std::pair<Matrix, Matrix>> sectors;  // (input, output) pairs
};

inline Route delta_route(const std::vector<Matrix>& projectors) {
  Route r;
  for (const Matrix& p : projectors) r.sectors.push_back({p, p});
  return r;
}

namespace detail {

inline void validate_route(const Matrix& u, const Route& route,
                           Tolerance tol) {
  if (u.rows() != u.cols()) throw DimMismatch("route: map is not square");
  for (const auto& [in, out] : route.sectors) {
    if (in.rows() != u.rows() || in.cols() != u.cols() ||
        out.rows() != u.rows() || out.cols() != u.cols())
      throw DimMismatch("route: sector projector dimension mismatch");
    if (!is_projector(in, tol.eq_tol) || !is_projector(out, tol.eq_tol))
      throw Error("route: sector is not a projector");
  }
  for (std::size_t i = 0; i < route.sectors.size(); ++i)
    for (std::size_t j = i + 1; j < route.sectors.size(); ++j) {
      if (max_abs(route.sectors[i].first * route.sectors[j].first) >=
          tol.eq_tol)
        throw Error("route: input sectors overlap");
      if (max_abs(route.sectors[i].second * route.sectors[j].second) >=
          tol.eq_tol)
        throw Error("route: output sectors overlap");
    }
}

}  // namespace detail

// Largest amplitude violating the sectorial constraint: leakage of any
// declared input sector outside its paired output sector, or transfer
// from the undeclared complement into the declared range.
inline double route_deviation(const Matrix& u, const Route& route,
                              Tolerance tol = {}) {
  validate(tol);
  detail::validate_route(u, route, tol);
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  Matrix in_all = Matrix::Zero(u.rows(), u.cols());
  Matrix out_all = Matrix::Zero(u.rows(), u.cols());
  double dev = 0.0;
  for (const auto& [in, out] : route.sectors) {
    dev = std::max(dev, max_abs((id - out) * u * in));
    in_all += in;
    out_all += out;
  }
  dev = std::max(dev, max_abs(out_all * u * (id - in_all)));
  return dev;
}

inline bool route_compliant(const Matrix& u, const Route& route,
                            Tolerance tol = {}) {
  return route_deviation(u, route, tol) < tol.eq_tol;
}

// The apparatus constraint: each of Alice's path sectors (restricted to
// the allowed occupation states) maps to itself.
inline Route apparatus_route(const ModeSpace& ms) {
  std::vector<Matrix> ps(2, Matrix::Zero(ms.full_dim, ms.full_dim));
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) {
      const Vector& v = ms.allowed_basis[static_cast<std::size_t>(a * 2 + b)];
      ps[static_cast<std::size_t>(a)] += v * v.adjoint();
    }
  return delta_route(ps);
}

// Isometry from (reg0, reg1, kinematical a, b) onto the six-wire mode
// description (reg0, A0, B0, reg1, A1, B1): each path carries its own
// register, and the occupation pattern follows build_apparatus.
inline Matrix apparatus_register_embed() {
  Matrix e = Matrix::Zero(64, 16);
  for (Index r0 = 0; r0 < 2; ++r0)
    for (Index r1 = 0; r1 < 2; ++r1)
      for (Index a = 0; a < 2; ++a)
        for (Index b = 0; b < 2; ++b) {
          const Index col = r0 * 8 + r1 * 4 + a * 2 + b;
          const Index row = r0 * 32 + (a == 0 ? 16 : 0) + (b == 0 ? 8 : 0) +
                            r1 * 4 + (a == 1 ? 2 : 0) + (b == 1 ? 1 : 0);
          e(row, col) = 1.0;
        }
  return e;
}

// Alice writes 1 when Bob shares her path. In her own description that is
// a single anti-controlled write from the relative wire; in Eve's mode
// description each path's register takes a doubly occupation-controlled
// write.
inline Circuit alice_position_circuit(Picture picture) {
  Circuit c;
  if (picture == Picture::Alice) {
    c.wires = {"reg", "B|A"};
    c.gates.push_back({GateKind::PauliX, {0}, {{1, 0}}});
  } else {
    c.wires = {"reg0", "A0", "B0", "reg1", "A1", "B1"};
    c.gates.push_back({GateKind::PauliX, {0}, {{1, 1}, {2, 1}}});
    c.gates.push_back({GateKind::PauliX, {3}, {{4, 1}, {5, 1}}});
  }
  return c;
}

// Momentum measurement with outcome 1 for the + eigenstate: the register
// write fires on the 0 path after the basis change, which makes the two
// descriptions equal gate for gate once compiled.
inline Circuit alice_momentum_circuit(Picture picture) {
  Circuit c;
  c.wires = {"reg", "A", "B"};
  const Gate cx_ab{GateKind::PauliX, {2}, {{1, 1}}};
  const Gate h_b{GateKind::Hadamard, {2}, {}};
  const Gate write_b{GateKind::PauliX, {0}, {{2, 0}}};
  if (picture == Picture::Alice) {
    c.gates = {h_b, write_b, h_b};
  } else {
    const Gate write_a{GateKind::PauliX, {0}, {{1, 1}}};
    c.gates = {cx_ab, h_b, cx_ab, write_b, write_a, cx_ab, h_b, cx_ab};
  }
  return c;
}

struct TheoremReport {
  Matrix alice_unitary;  // 8x8 compile of Alice's description
  Matrix eve_unitary;    // 8x8 compile of Eve's description
  double circuit_deviation = 0.0;
  Matrix observable;  // outcome observable extracted from the compile
  double observable_deviation = 0.0;  // distance from I (x) X
  bool pass = false;
};

// Compiles both descriptions of Alice's momentum measurement, compares
// them entrywise, and extracts the measured observable from the register
// action. The corrupt flag flips one control polarity as a negative
// control for the harness.
inline TheoremReport verify_theorem1(Tolerance tol = {},
                                     bool corrupt = false) {
  validate(tol);
  Circuit alice = alice_momentum_circuit(Picture::Alice);
  Circuit eve = alice_momentum_circuit(Picture::Eve);
  if (corrupt) eve.gates[4].controls[0].polarity ^= 1;
  TheoremReport rep;
  rep.alice_unitary = compile(alice);
  rep.eve_unitary = compile(eve);
  rep.circuit_deviation = max_abs(rep.eve_unitary - rep.alice_unitary);
  const Matrix flip = rep.alice_unitary.block(4, 0, 4, 4);
  const Matrix stay = rep.alice_unitary.block(0, 0, 4, 4);
  rep.observable = flip - stay;
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  rep.observable_deviation =
      max_abs(rep.observable - tensor(Matrix::Identity(2, 2), x));
  rep.pass = rep.circuit_deviation < tol.eq_tol &&
             rep.observable_deviation < tol.eq_tol;
  if (!rep.pass) {
    std::ostringstream msg;
    msg << "verify_theorem1: descriptions disagree; circuit deviation "
        << rep.circuit_deviation << ", observable deviation "
        << rep.observable_deviation;
    throw TheoremViolation(msg.str());
  }
  return rep;
}

}  // namespace qsym
