#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ugm/common.hpp"

namespace ugm {

// Gate set: H, X^1/2 and Y^1/2 (non-diagonal single-qubit), T (diagonal
// single-qubit) and CZ (diagonal two-qubit).
enum class GateKind { H, XHalf, YHalf, T, CZ };

bool is_diagonal(GateKind kind);
int gate_arity(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

struct Gate {
  GateKind kind;
  int cycle;
  int q0;
  int q1 = -1;  // second qubit of a CZ, -1 otherwise

  bool operator==(const Gate&) const = default;
};

// A measurement outcome or basis state; bits[j] is the bit of qubit j.
// Textual form lists qubit 0 first (most significant).
using BitString = std::vector<uint8_t>;

std::string format_bits(const BitString& bits);
BitString parse_bits(std::string_view text);
BitString bits_of_index(uint64_t index, int n);
uint64_t index_of_bits(const BitString& bits);

// An immutable gate list on an R x C qubit grid, grouped by clock cycle.
// Qubit indices are row-major: qubit = row * cols + col. Construction
// validates arity, qubit ranges, per-cycle qubit disjointness, CZ grid
// adjacency, and that no two CZ gates in one cycle touch adjacent qubits.
class Circuit {
 public:
  Circuit(int rows, int cols, int depth, std::vector<Gate> gates);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int depth() const { return depth_; }
  int qubit_count() const { return rows_ * cols_; }
  int min_side() const { return rows_ < cols_ ? rows_ : cols_; }

  const std::vector<std::vector<Gate>>& cycles() const { return cycles_; }
  size_t gate_count() const;

  int row_of(int q) const { return q / cols_; }
  int col_of(int q) const { return q % cols_; }
  int qubit_index(int row, int col) const { return row * cols_ + col; }
  bool neighbors(int a, int b) const;

  // Position of a qubit when worldlines are swept along the shorter grid
  // dimension first; consecutive ranks are grid neighbors along that side.
  int vertical_rank(int q) const;

 private:
  int rows_;
  int cols_;
  int depth_;
  std::vector<std::vector<Gate>> cycles_;
};

struct WorldlineCounts {
  // total[j] = number of non-diagonal gates applied to qubit j.
  std::vector<int> total;
  // prefix[j][t] = number of non-diagonal gates on qubit j in cycles 0..t.
  std::vector<std::vector<int>> prefix;
};

WorldlineCounts worldline_lengths(const Circuit& circuit);

// Pseudo-random circuit family on an R x C grid. Cycle 0 applies H to every
// qubit; cycles t >= 1 lay down one of eight fixed CZ patterns (cycling in
// order) that jointly tile all grid edges while keeping simultaneous CZ
// pairs non-adjacent, and place single-qubit gates on qubits that were in a
// CZ during the previous cycle: the first such gate on a qubit is T, later
// ones alternate between X^1/2 and Y^1/2 with a seeded coin after a T.
Circuit generate_random_circuit(int rows, int cols, int depth, uint64_t seed);

// Text format: first line is the qubit count; every further non-empty line
// is "<cycle> <gate> <q> [<q2>]" with gate in {h, t, x_1_2, y_1_2, cz}.
// Lines starting with '#' are comments; "# grid R C" records the grid
// shape. Without a grid hint, the most square factorization of n that
// satisfies the CZ adjacency rules is used.
Circuit parse_circuit(std::string_view text,
                      std::optional<std::pair<int, int>> grid = std::nullopt);
std::string serialize_circuit(const Circuit& circuit);

}  // namespace ugm
