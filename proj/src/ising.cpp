#include "ugm/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace ugm {

namespace {

int term_units(const IsingTerm& term, const std::vector<uint8_t>& bits) {
  switch (term.kind) {
    case IsingTerm::Kind::XHalf:
      return bits[term.spin_a] == bits[term.spin_b] ? 2 : 0;
    case IsingTerm::Kind::YHalf:
      return bits[term.spin_a] && !bits[term.spin_b] ? 4 : 0;
    case IsingTerm::Kind::T:
      return bits[term.spin_a];
    case IsingTerm::Kind::CZ:
    case IsingTerm::Kind::H:
      return bits[term.spin_a] && bits[term.spin_b] ? 4 : 0;
  }
  return 0;
}

// Eighth roots of unity, e^{i pi h / 4}.
const cdouble kPhase[8] = {
    {1.0, 0.0},
    {std::sqrt(0.5), std::sqrt(0.5)},
    {0.0, 1.0},
    {-std::sqrt(0.5), std::sqrt(0.5)},
    {-1.0, 0.0},
    {-std::sqrt(0.5), -std::sqrt(0.5)},
    {0.0, -1.0},
    {std::sqrt(0.5), -std::sqrt(0.5)},
};

// Visits every assignment of the free spins with single-bit Gray-code flips,
// keeping per-term unit values incrementally. Calls visit(units mod 8) once
// per path.
template <class Visit>
void enumerate_paths(const IsingPhaseModel& model, std::vector<uint8_t>& bits,
                     const std::vector<int>& free_spins, Visit&& visit) {
  const size_t terms = model.terms.size();
  std::vector<int> current(terms);
  long total = 0;
  for (size_t i = 0; i < terms; ++i) {
    current[i] = term_units(model.terms[i], bits);
    total += current[i];
  }
  std::vector<std::vector<int>> touching(free_spins.size());
  for (size_t f = 0; f < free_spins.size(); ++f) {
    for (size_t i = 0; i < terms; ++i) {
      const auto& t = model.terms[i];
      if (t.spin_a == free_spins[f] || t.spin_b == free_spins[f])
        touching[f].push_back(static_cast<int>(i));
    }
  }
  visit(static_cast<int>(total & 7));
  const uint64_t paths = uint64_t{1} << free_spins.size();
  for (uint64_t g = 1; g < paths; ++g) {
    const int f = std::countr_zero(g);
    bits[free_spins[f]] ^= 1;
    for (int i : touching[f]) {
      total -= current[i];
      current[i] = term_units(model.terms[i], bits);
      total += current[i];
    }
    visit(static_cast<int>(total & 7));
  }
}

}  // namespace

IsingPhaseModel build_ising(const Circuit& circuit) {
  IsingPhaseModel model;
  model.qubit_count = circuit.qubit_count();
  const auto counts = worldline_lengths(circuit);
  model.worldline = counts.total;

  model.spin_id.resize(model.qubit_count);
  for (int j = 0; j < model.qubit_count; ++j) {
    model.spin_id[j].resize(model.worldline[j] + 1);
    for (int k = 0; k <= model.worldline[j]; ++k) {
      model.spin_id[j][k] = model.total_spins++;
      model.spin_info.emplace_back(j, k);
    }
    model.magnitude_spins += model.worldline[j];
  }

  std::vector<int> step(model.qubit_count, 0);
  int constant = 0;
  for (const auto& cycle : circuit.cycles()) {
    for (const Gate& g : cycle) {
      IsingTerm term{};
      term.q0 = g.q0;
      term.q1 = g.q1;
      term.cycle = g.cycle;
      switch (g.kind) {
        case GateKind::H:
        case GateKind::XHalf:
        case GateKind::YHalf: {
          term.kind = g.kind == GateKind::H      ? IsingTerm::Kind::H
                      : g.kind == GateKind::XHalf ? IsingTerm::Kind::XHalf
                                                  : IsingTerm::Kind::YHalf;
          term.spin_a = model.spin_id[g.q0][step[g.q0]];
          term.spin_b = model.spin_id[g.q0][step[g.q0] + 1];
          step[g.q0] += 1;
          if (g.kind == GateKind::XHalf) constant -= 1;
          if (g.kind == GateKind::YHalf) constant += 1;
          break;
        }
        case GateKind::T:
          term.kind = IsingTerm::Kind::T;
          term.spin_a = model.spin_id[g.q0][step[g.q0]];
          term.spin_b = -1;
          break;
        case GateKind::CZ:
          term.kind = IsingTerm::Kind::CZ;
          term.spin_a = model.spin_id[g.q0][step[g.q0]];
          term.spin_b = model.spin_id[g.q1][step[g.q1]];
          break;
      }
      model.terms.push_back(term);
    }
  }
  model.constant_units = ((constant % 8) + 8) % 8;
  return model;
}

int path_phase(const IsingPhaseModel& model, const std::vector<uint8_t>& spin_bits,
               const BitString& x) {
  if (static_cast<int>(spin_bits.size()) != model.total_spins)
    throw std::invalid_argument("spin assignment size does not match model");
  if (static_cast<int>(x.size()) != model.qubit_count)
    throw std::invalid_argument("bit-string length does not match model");
  for (int j = 0; j < model.qubit_count; ++j) {
    if (spin_bits[model.spin_id[j][0]] != 0)
      throw std::invalid_argument("path does not start in the all-zero state");
    if (spin_bits[model.spin_id[j][model.worldline[j]]] != x[j])
      throw std::invalid_argument("path does not end in the requested bit-string");
  }
  long total = 0;
  for (const auto& term : model.terms) total += term_units(term, spin_bits);
  return static_cast<int>(total & 7);
}

cdouble partition_amplitude(const IsingPhaseModel& model, const BitString& x, int cap) {
  if (static_cast<int>(x.size()) != model.qubit_count)
    throw std::invalid_argument("bit-string length does not match model");
  std::vector<uint8_t> bits(model.total_spins, 0);
  std::vector<int> free_spins;
  for (int j = 0; j < model.qubit_count; ++j) {
    const int d = model.worldline[j];
    if (d == 0) {
      if (x[j] != 0) return 0.0;  // endpoint contradicts the fixed input
      continue;
    }
    bits[model.spin_id[j][d]] = x[j];
    for (int k = 1; k < d; ++k) free_spins.push_back(model.spin_id[j][k]);
  }
  if (static_cast<int>(free_spins.size()) > cap)
    throw std::invalid_argument("path sum over " + std::to_string(free_spins.size()) +
                                " free spins exceeds the cap of " + std::to_string(cap));

  // Exact integer counting per phase class; the only rounding is the final
  // sqrt(2)/2 combination.
  uint64_t counts[8] = {};
  enumerate_paths(model, bits, free_spins, [&](int units) { ++counts[units]; });

  uint64_t shifted[8] = {};
  for (int h = 0; h < 8; ++h) shifted[(h + model.constant_units) & 7] += counts[h];
  const double s = std::sqrt(0.5);
  const double real = double(int64_t(shifted[0]) - int64_t(shifted[4])) +
                      s * double(int64_t(shifted[1]) - int64_t(shifted[3]) -
                                 int64_t(shifted[5]) + int64_t(shifted[7]));
  const double imag = double(int64_t(shifted[2]) - int64_t(shifted[6])) +
                      s * double(int64_t(shifted[1]) + int64_t(shifted[3]) -
                                 int64_t(shifted[5]) - int64_t(shifted[7]));
  const double prefactor = std::exp2(-0.5 * double(model.magnitude_spins));
  return cdouble{real * prefactor, imag * prefactor};
}

std::vector<int> clifford_phase_profile(const Circuit& circuit, uint64_t sample_paths,
                                        uint64_t seed, int cap) {
  IsingPhaseModel model = build_ising(circuit);
  std::vector<uint8_t> bits(model.total_spins, 0);
  std::vector<int> free_spins;
  for (int j = 0; j < model.qubit_count; ++j)
    for (int k = 1; k <= model.worldline[j]; ++k)
      free_spins.push_back(model.spin_id[j][k]);

  bool realized[8] = {};
  if (static_cast<int>(free_spins.size()) <= cap) {
    enumerate_paths(model, bits, free_spins, [&](int units) { realized[units] = true; });
  } else {
    std::mt19937_64 rng(seed);
    for (uint64_t p = 0; p < sample_paths; ++p) {
      for (int spin : free_spins) bits[spin] = uniform_below(rng, 2);
      long total = 0;
      for (const auto& term : model.terms) total += term_units(term, bits);
      realized[total & 7] = true;
    }
  }
  std::vector<int> out;
  for (int h = 0; h < 8; ++h)
    if (realized[h]) out.push_back(h);
  return out;
}

std::string coupling_list(const IsingPhaseModel& model) {
  std::ostringstream out;
  out << "# constant_units " << model.constant_units << "\n";
  for (const auto& term : model.terms) {
    switch (term.kind) {
      case IsingTerm::Kind::XHalf:
        out << "x_1_2 " << term.q0 << " " << term.cycle << " 2\n";
        break;
      case IsingTerm::Kind::YHalf:
        out << "y_1_2 " << term.q0 << " " << term.cycle << " 4\n";
        break;
      case IsingTerm::Kind::T:
        out << "t " << term.q0 << " " << term.cycle << " 1\n";
        break;
      case IsingTerm::Kind::CZ:
        out << "cz " << term.q0 << " " << term.q1 << " " << term.cycle << " 4\n";
        break;
      case IsingTerm::Kind::H:
        out << "h " << term.q0 << " " << term.cycle << " 4\n";
        break;
    }
  }
  return out.str();
}

}  // namespace ugm
