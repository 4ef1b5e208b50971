#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ugm/circuit.hpp"
#include "ugm/common.hpp"

namespace ugm {

using Mat2 = std::array<std::array<cdouble, 2>, 2>;
using Mat4 = std::array<std::array<cdouble, 4>, 4>;

// Fixed single-qubit gate matrices (row = output bit, column = input bit).
// X^1/2 and Y^1/2 square exactly to X and Y; every entry of a non-diagonal
// gate has modulus 1/sqrt(2).
Mat2 gate_matrix(GateKind kind);

// A complex function of Boolean variables, stored as a dense table of
// 2^rank values. Variables are kept strictly ascending and the first
// variable indexes the most significant bit of the table.
template <class Real>
struct FactorT {
  std::vector<int> vars;
  std::vector<std::complex<Real>> table;

  int rank() const { return static_cast<int>(vars.size()); }
};

using Factor = FactorT<double>;

// Variable metadata: worldline state k of qubit j. Variable ids are dense
// and ascend in (vertical rank of qubit, k) order.
struct VarInfo {
  int qubit;
  int step;
};

struct FixedVar {
  int qubit;
  int step;
  uint8_t value;
};

// Per-qubit endpoint condition: a fixed bit or a free (unconstrained) end.
struct Endpoints {
  std::vector<std::optional<uint8_t>> bits;

  static Endpoints fixed(const BitString& b) {
    Endpoints e;
    e.bits.assign(b.begin(), b.end());
    return e;
  }
  static Endpoints zeros(int n) {
    Endpoints e;
    e.bits.assign(n, uint8_t{0});
    return e;
  }
  static Endpoints all_free(int n) {
    Endpoints e;
    e.bits.assign(n, std::nullopt);
    return e;
  }
};

// The sum-of-products form of a circuit amplitude: one Boolean variable per
// worldline state, one factor per gate, and the interaction graph with an
// edge (clique) per factor. Endpoint variables with fixed values are sliced
// out of the factor tables at build time and do not appear in the graph.
struct GraphicalModel {
  int qubit_count = 0;
  std::vector<int> worldline;            // d_j per qubit
  std::vector<VarInfo> vars;             // id -> (qubit, step)
  std::vector<std::vector<int>> var_ids; // (qubit, step) -> id, -1 when fixed
  std::vector<Factor> factors;
  Graph graph;
  std::vector<FixedVar> fixed;
  std::vector<int> free_output_vars;     // ascending ids of free final states
  cdouble scale = 1.0;                   // product of fully-fixed factors
  bool inconsistent = false;             // contradictory endpoints: amplitude 0

  int var_id(int qubit, int step) const {
    if (step < 0 || step >= static_cast<int>(var_ids[qubit].size())) return -1;
    return var_ids[qubit][step];
  }
  int variable_count() const { return static_cast<int>(vars.size()); }
};

// Incrementally maps a gate sequence onto a graphical model. Gates outside
// the fixed set enter through apply_two_qubit with an explicit 4x4 unitary.
class ModelBuilder {
 public:
  ModelBuilder(int rows, int cols);

  void apply(GateKind kind, int qubit);
  void apply_cz(int a, int b);
  void apply_two_qubit(const Mat4& unitary, int a, int b);

  GraphicalModel finish(const Endpoints& output, const Endpoints& input) const;

 private:
  struct Proto {
    std::vector<std::pair<int, int>> vars;  // (qubit, step), axis order as given
    std::vector<cdouble> table;
  };

  int rows_;
  int cols_;
  std::vector<int> step_;
  std::vector<Proto> protos_;
};

// Factor of a circuit gate over explicit variable ids. Non-diagonal
// single-qubit gates take (input, output) variables; T takes one variable
// and CZ two. Ids must ascend.
Factor gate_factor(GateKind kind, const std::vector<int>& vars);

// Rank-4 factor of an arbitrary two-qubit unitary over the variable ids
// (b0, b1, b0', b1'); the table axes are returned sorted by id. Rejects
// matrices that are not unitary to 1e-10.
Factor nondiagonal_two_qubit_factor(const Mat4& unitary, const std::array<int, 4>& vars);

GraphicalModel build_model(const Circuit& circuit, const Endpoints& output,
                           const Endpoints& input);
GraphicalModel build_model(const Circuit& circuit, const Endpoints& output);
GraphicalModel build_model(const Circuit& circuit, const BitString& output);

// Edge list of the interaction graph, one "j:k j:k" pair per line.
std::string graph_edge_dump(const GraphicalModel& model);

}  // namespace ugm
