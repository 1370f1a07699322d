#pragma once
// json_io.hpp — JSON codecs for the core value types: matrices, group
// representations, twirl inputs, generator sets, and circuits.
//
// Matrices travel as flat row-major lists of [re, im] pairs; the enclosing
// document carries the dimensions. Emission uses ordered_json so that a
// document serializes byte-identically run after run.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qsym/group.hpp"
#include "qsym/scenario.hpp"
#include "qsym/types.hpp"

namespace qsym {

inline nlohmann::ordered_json matrix_to_json(const Matrix& m) {
  auto entries = nlohmann::ordered_json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      entries.push_back({m(r, c).real(), m(r, c).imag()});
  return entries;
}

inline Matrix matrix_from_json(const nlohmann::json& j, Index rows, Index cols) {
  if (rows < 1 || cols < 1)
    throw DimMismatch("matrix_from_json: dimensions must be positive");
  if (!j.is_array() || static_cast<Index>(j.size()) != rows * cols)
    throw Error("matrix_from_json: expected " + std::to_string(rows * cols) +
                " row-major entries");
  Matrix m(rows, cols);
  Index k = 0;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw Error("matrix_from_json: each entry must be an [re, im] pair");
    m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
    ++k;
  }
  return m;
}

// Representation document: {order, dim, generator}.
inline nlohmann::ordered_json rep_to_json(const FiniteAbelianRep& rep) {
  nlohmann::ordered_json j;
  j["order"] = rep.order;
  j["dim"] = rep.dim;
  j["generator"] = matrix_to_json(rep.generator());
  return j;
}

inline FiniteAbelianRep rep_from_json(const nlohmann::json& j,
                                      const Tolerance& tol = {}) {
  if (!j.is_object() || !j.contains("order") || !j.contains("dim") ||
      !j.contains("generator"))
    throw Error("rep_from_json: document needs order, dim, and generator");
  const int order = j["order"].get<int>();
  const Index dim = j["dim"].get<Index>();
  return make_rep(order, matrix_from_json(j["generator"], dim, dim), tol);
}

// Twirl input: a representation document extended with the state to twirl.
inline std::pair<FiniteAbelianRep, Matrix> twirl_input_from_json(
    const nlohmann::json& j, const Tolerance& tol = {}) {
  FiniteAbelianRep rep = rep_from_json(j, tol);
  if (!j.contains("state"))
    throw Error("twirl_input_from_json: document needs a state matrix");
  Matrix state = matrix_from_json(j["state"], rep.dim, rep.dim);
  return {std::move(rep), std::move(state)};
}

// Generator-set document: {dim, generators: [matrix, ...]}.
inline std::vector<Matrix> generators_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("generators") ||
      !j["generators"].is_array() || j["generators"].empty())
    throw Error(
        "generators_from_json: document needs dim and a nonempty generators "
        "list");
  const Index dim = j["dim"].get<Index>();
  std::vector<Matrix> gens;
  gens.reserve(j["generators"].size());
  for (const auto& g : j["generators"])
    gens.push_back(matrix_from_json(g, dim, dim));
  return gens;
}

inline std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Hadamard: return "H";
    case GateKind::PauliX: return "X";
    case GateKind::Swap: return "SWAP";
    case GateKind::BeamSplit: return "BS";
  }
  throw Error("gate_kind_name: unknown gate kind");
}

inline GateKind gate_kind_from_name(const std::string& name) {
  if (name == "H") return GateKind::Hadamard;
  if (name == "X") return GateKind::PauliX;
  if (name == "SWAP") return GateKind::Swap;
  if (name == "BS") return GateKind::BeamSplit;
  throw Error("gate_kind_from_name: unknown gate kind \"" + name + "\"");
}

inline nlohmann::ordered_json circuit_to_json(const Circuit& c) {
  nlohmann::ordered_json j;
  j["wires"] = c.wires;
  auto gates = nlohmann::ordered_json::array();
  for (const Gate& g : c.gates) {
    nlohmann::ordered_json gj;
    gj["kind"] = gate_kind_name(g.kind);
    gj["targets"] = g.targets;
    auto controls = nlohmann::ordered_json::array();
    for (const Control& ctl : g.controls)
      controls.push_back({{"wire", ctl.wire}, {"polarity", ctl.polarity}});
    gj["controls"] = controls;
    gates.push_back(std::move(gj));
  }
  j["gates"] = std::move(gates);
  return j;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("wires") || !j.contains("gates"))
    throw Error("circuit_from_json: document needs wires and gates");
  Circuit c;
  c.wires = j["wires"].get<std::vector<std::string>>();
  for (const auto& gj : j["gates"]) {
    if (!gj.is_object() || !gj.contains("kind") || !gj.contains("targets"))
      throw Error("circuit_from_json: each gate needs kind and targets");
    Gate g;
    g.kind = gate_kind_from_name(gj["kind"].get<std::string>());
    g.targets = gj["targets"].get<std::vector<Index>>();
    if (gj.contains("controls"))
      for (const auto& cj : gj["controls"])
        g.controls.push_back(
            {cj.at("wire").get<Index>(), cj.at("polarity").get<int>()});
    c.gates.push_back(std::move(g));
  }
  return c;
}

}  // namespace qsym
