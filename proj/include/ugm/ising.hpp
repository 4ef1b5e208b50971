#pragma once

#include <string>
#include <vector>

#include "ugm/circuit.hpp"
#include "ugm/common.hpp"

namespace ugm {

// One phase term of the Ising form of an amplitude. Every path accumulates a
// phase that is an integer multiple of pi/4; the per-term units are
//   x_1_2 : 2 * (1 + s s') / 2      (0 or 2)
//   y_1_2 : 4 * (1-s)(1+s') / 4     (0 or 4)
//   t     : 1 * (1-s) / 2           (0 or 1)
//   cz    : 4 * (1-s_i)(1-s_j) / 4  (0 or 4)
//   h     : 4 * (1-s)(1-s') / 4     (0 or 4)
// with s = +1 for bit 0 and s = -1 for bit 1. X^1/2 and Y^1/2 additionally
// carry constant phases of -1 and +1 units per gate, collected once per
// circuit so the path sum reproduces the amplitude exactly rather than up to
// a global phase.
struct IsingTerm {
  enum class Kind { XHalf, YHalf, T, CZ, H };
  Kind kind;
  int q0;
  int q1;      // -1 for single-qubit terms
  int cycle;
  int spin_a;  // dense spin id; the earlier worldline spin for two-spin terms
  int spin_b;  // -1 for T terms
};

// Amplitude as a partition function at imaginary inverse temperature:
//   <x|U|0...0> = 2^{-L/2} * exp(i pi c / 4) * sum_s exp(i pi H_s(x) / 4)
// over all spin configurations s compatible with the endpoint conditions,
// where L counts the non-diagonal gates and c the constant units.
struct IsingPhaseModel {
  int qubit_count = 0;
  std::vector<int> worldline;                  // d_j per qubit
  std::vector<std::vector<int>> spin_id;       // (qubit, k) -> dense spin id
  std::vector<std::pair<int, int>> spin_info;  // id -> (qubit, k)
  int total_spins = 0;                         // sum of (d_j + 1)
  int magnitude_spins = 0;                     // L = sum of d_j
  std::vector<IsingTerm> terms;
  int constant_units = 0;                      // mod 8
};

IsingPhaseModel build_ising(const Circuit& circuit);

// Phase units (mod 8, constant excluded) of one path. spin_bits[id] holds the
// bit of each spin (bit b corresponds to s = 1 - 2b) and must satisfy the
// boundary conditions: worldline starts at 0, worldline ends at x.
int path_phase(const IsingPhaseModel& model, const std::vector<uint8_t>& spin_bits,
               const BitString& x);

// Brute-force path sum over all free spins. Exact (integer path counting per
// phase class); requires at most cap free spins.
cdouble partition_amplitude(const IsingPhaseModel& model, const BitString& x, int cap = 24);

// The set of phase units realized over all paths and output conditions;
// T-free circuits only realize even units. Enumerates exhaustively up to cap
// free spins, otherwise checks sample_paths random paths.
std::vector<int> clifford_phase_profile(const Circuit& circuit, uint64_t sample_paths,
                                        uint64_t seed, int cap = 24);

// "<kind> <qubits...> <cycle> <coefficient in pi/4 units>" per line.
std::string coupling_list(const IsingPhaseModel& model);

}  // namespace ugm
