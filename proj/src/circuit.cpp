#include "ugm/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ugm {

bool is_diagonal(GateKind kind) {
  return kind == GateKind::T || kind == GateKind::CZ;
}

int gate_arity(GateKind kind) { return kind == GateKind::CZ ? 2 : 1; }

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::XHalf: return "x_1_2";
    case GateKind::YHalf: return "y_1_2";
    case GateKind::T: return "t";
    case GateKind::CZ: return "cz";
  }
  return "?";
}

std::optional<GateKind> gate_from_name(std::string_view name) {
  if (name == "h") return GateKind::H;
  if (name == "x_1_2") return GateKind::XHalf;
  if (name == "y_1_2") return GateKind::YHalf;
  if (name == "t") return GateKind::T;
  if (name == "cz") return GateKind::CZ;
  return std::nullopt;
}

std::string format_bits(const BitString& bits) {
  std::string out;
  out.reserve(bits.size());
  for (uint8_t b : bits) out.push_back(b ? '1' : '0');
  return out;
}

BitString parse_bits(std::string_view text) {
  BitString out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      out.push_back(0);
    } else if (c == '1') {
      out.push_back(1);
    } else {
      throw std::invalid_argument("invalid bit character '" + std::string(1, c) +
                                  "' in bit-string");
    }
  }
  return out;
}

BitString bits_of_index(uint64_t index, int n) {
  BitString out(n);
  for (int j = 0; j < n; ++j) out[j] = (index >> (n - 1 - j)) & 1;
  return out;
}

uint64_t index_of_bits(const BitString& bits) {
  uint64_t index = 0;
  for (uint8_t b : bits) index = (index << 1) | (b & 1);
  return index;
}

namespace {

bool grid_adjacent(int cols, int a, int b) {
  int ra = a / cols, ca = a % cols;
  int rb = b / cols, cb = b % cols;
  return std::abs(ra - rb) + std::abs(ca - cb) == 1;
}

}  // namespace

Circuit::Circuit(int rows, int cols, int depth, std::vector<Gate> gates)
    : rows_(rows), cols_(cols), depth_(depth) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  const int n = rows * cols;
  cycles_.resize(depth);
  for (const Gate& g : gates) {
    if (g.cycle < 0 || g.cycle >= depth)
      throw std::invalid_argument("gate cycle " + std::to_string(g.cycle) + " out of range");
    if (g.q0 < 0 || g.q0 >= n)
      throw std::invalid_argument("qubit " + std::to_string(g.q0) + " out of range");
    Gate canon = g;
    if (gate_arity(g.kind) == 2) {
      if (g.q1 < 0 || g.q1 >= n)
        throw std::invalid_argument("qubit " + std::to_string(g.q1) + " out of range");
      if (g.q0 == g.q1) throw std::invalid_argument("cz qubits must be distinct");
      if (!grid_adjacent(cols_, g.q0, g.q1))
        throw std::invalid_argument("cz qubits " + std::to_string(g.q0) + "," +
                                    std::to_string(g.q1) + " are not grid neighbors");
      if (canon.q0 > canon.q1) std::swap(canon.q0, canon.q1);
    } else if (g.q1 != -1) {
      throw std::invalid_argument("single-qubit gate given two qubits");
    }
    cycles_[g.cycle].push_back(canon);
  }
  for (int t = 0; t < depth; ++t) {
    auto& cycle = cycles_[t];
    std::sort(cycle.begin(), cycle.end(),
              [](const Gate& a, const Gate& b) { return a.q0 < b.q0; });
    std::vector<char> used(n, 0);
    for (const Gate& g : cycle) {
      for (int q : {g.q0, g.q1}) {
        if (q < 0) continue;
        if (used[q])
          throw std::invalid_argument("qubit " + std::to_string(q) +
                                      " used twice in cycle " + std::to_string(t));
        used[q] = 1;
      }
    }
    // No two simultaneous CZs may touch neighboring qubits.
    for (size_t i = 0; i < cycle.size(); ++i) {
      if (cycle[i].kind != GateKind::CZ) continue;
      for (size_t j = i + 1; j < cycle.size(); ++j) {
        if (cycle[j].kind != GateKind::CZ) continue;
        for (int a : {cycle[i].q0, cycle[i].q1})
          for (int b : {cycle[j].q0, cycle[j].q1})
            if (grid_adjacent(cols_, a, b))
              throw std::invalid_argument("simultaneous cz gates on adjacent qubits " +
                                          std::to_string(a) + "," + std::to_string(b) +
                                          " in cycle " + std::to_string(t));
      }
    }
  }
}

size_t Circuit::gate_count() const {
  size_t total = 0;
  for (const auto& c : cycles_) total += c.size();
  return total;
}

bool Circuit::neighbors(int a, int b) const { return grid_adjacent(cols_, a, b); }

int Circuit::vertical_rank(int q) const {
  if (rows_ <= cols_) return col_of(q) * rows_ + row_of(q);
  return q;
}

WorldlineCounts worldline_lengths(const Circuit& circuit) {
  const int n = circuit.qubit_count();
  WorldlineCounts counts;
  counts.total.assign(n, 0);
  counts.prefix.assign(n, std::vector<int>(circuit.depth(), 0));
  for (int t = 0; t < circuit.depth(); ++t) {
    for (int j = 0; j < n; ++j) counts.prefix[j][t] = t > 0 ? counts.prefix[j][t - 1] : 0;
    for (const Gate& g : circuit.cycles()[t]) {
      if (!is_diagonal(g.kind)) counts.prefix[g.q0][t] += 1;
    }
  }
  for (int j = 0; j < n; ++j)
    counts.total[j] = circuit.depth() > 0 ? counts.prefix[j][circuit.depth() - 1] : 0;
  return counts;
}

namespace {

// Eight CZ layouts tiling all grid edges. Horizontal layout (a, b) activates
// the edge (r,c)-(r,c+1) when c % 2 == a and (r + c/2) % 2 == b; vertical
// layouts are the transpose. Within one layout active edges form an induced
// matching, so no two simultaneous CZs touch neighboring qubits. Layouts
// alternate orientation in the cycle order H00 V00 H01 V01 H10 V10 H11 V11.
std::vector<std::pair<int, int>> cz_pattern(int rows, int cols, int index) {
  const bool horizontal = (index % 2) == 0;
  const int a = (index / 2) / 2;
  const int b = (index / 2) % 2;
  std::vector<std::pair<int, int>> edges;
  if (horizontal) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c + 1 < cols; ++c)
        if (c % 2 == a && (r + c / 2) % 2 == b)
          edges.emplace_back(r * cols + c, r * cols + c + 1);
  } else {
    for (int r = 0; r + 1 < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (r % 2 == a && (c + r / 2) % 2 == b)
          edges.emplace_back(r * cols + c, (r + 1) * cols + c);
  }
  return edges;
}

}  // namespace

Circuit generate_random_circuit(int rows, int cols, int depth, uint64_t seed) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (depth < 1) throw std::invalid_argument("depth must be at least 1");
  const int n = rows * cols;
  std::mt19937_64 rng(seed);
  std::vector<Gate> gates;
  for (int q = 0; q < n; ++q) gates.push_back({GateKind::H, 0, q, -1});

  std::vector<char> had_t(n, 0);
  std::vector<char> in_cz_prev(n, 0);
  // Sentinel H: a qubit has no single-qubit history until its first T.
  std::vector<GateKind> last_single(n, GateKind::H);

  for (int t = 1; t < depth; ++t) {
    std::vector<char> in_cz_now(n, 0);
    for (auto [a, b] : cz_pattern(rows, cols, (t - 1) % 8)) {
      gates.push_back({GateKind::CZ, t, a, b});
      in_cz_now[a] = in_cz_now[b] = 1;
    }
    for (int q = 0; q < n; ++q) {
      if (in_cz_now[q] || !in_cz_prev[q]) continue;
      GateKind pick;
      if (!had_t[q]) {
        pick = GateKind::T;
        had_t[q] = 1;
      } else if (last_single[q] == GateKind::XHalf) {
        pick = GateKind::YHalf;
      } else if (last_single[q] == GateKind::YHalf) {
        pick = GateKind::XHalf;
      } else {
        pick = uniform_below(rng, 2) == 0 ? GateKind::XHalf : GateKind::YHalf;
      }
      gates.push_back({pick, t, q, -1});
      last_single[q] = pick;
    }
    in_cz_prev = in_cz_now;
  }
  return Circuit(rows, cols, depth, std::move(gates));
}

namespace {

struct GateSpec {
  int line;
  GateKind kind;
  int cycle;
  int q0;
  int q1;
};

[[noreturn]] void parse_fail(int line, const std::string& message) {
  throw std::invalid_argument("line " + std::to_string(line) + ": " + message);
}

// Structural checks that depend on the grid shape; returns an error message
// tagged with the offending line, or nothing if the specs fit the grid.
std::optional<std::string> check_against_grid(int rows, int cols,
                                              const std::vector<GateSpec>& specs) {
  auto adjacent = [cols](int a, int b) { return grid_adjacent(cols, a, b); };
  std::vector<const GateSpec*> by_cycle;
  int max_cycle = -1;
  for (const auto& s : specs) max_cycle = std::max(max_cycle, s.cycle);
  for (int t = 0; t <= max_cycle; ++t) {
    by_cycle.clear();
    for (const auto& s : specs)
      if (s.cycle == t) by_cycle.push_back(&s);
    std::vector<char> used(rows * cols, 0);
    for (const auto* s : by_cycle) {
      for (int q : {s->q0, s->q1}) {
        if (q < 0) continue;
        if (used[q])
          return "line " + std::to_string(s->line) + ": qubit " + std::to_string(q) +
                 " used twice in cycle " + std::to_string(t);
        used[q] = 1;
      }
      if (s->kind == GateKind::CZ && !adjacent(s->q0, s->q1))
        return "line " + std::to_string(s->line) + ": cz qubits " + std::to_string(s->q0) +
               "," + std::to_string(s->q1) + " are not grid neighbors";
    }
    for (size_t i = 0; i < by_cycle.size(); ++i) {
      if (by_cycle[i]->kind != GateKind::CZ) continue;
      for (size_t j = i + 1; j < by_cycle.size(); ++j) {
        if (by_cycle[j]->kind != GateKind::CZ) continue;
        for (int a : {by_cycle[i]->q0, by_cycle[i]->q1})
          for (int b : {by_cycle[j]->q0, by_cycle[j]->q1})
            if (adjacent(a, b))
              return "line " + std::to_string(by_cycle[j]->line) +
                     ": simultaneous cz gates on adjacent qubits in cycle " +
                     std::to_string(t);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Circuit parse_circuit(std::string_view text, std::optional<std::pair<int, int>> grid) {
  std::vector<GateSpec> specs;
  std::optional<std::pair<int, int>> directive;
  int n = -1;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    std::string line(raw);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream in(line);
    std::string first;
    if (!(in >> first)) continue;
    if (first[0] == '#') {
      std::string word;
      int r = 0, c = 0;
      if (line.size() > 1) {
        std::istringstream comment(line.substr(1));
        if (comment >> word && word == "grid" && comment >> r >> c && r > 0 && c > 0)
          directive = {r, c};
      }
      continue;
    }
    if (n < 0) {
      char extra;
      std::istringstream head(line);
      if (!(head >> n) || n < 1 || (head >> extra))
        parse_fail(line_no, "expected qubit count");
      continue;
    }
    GateSpec spec{line_no, GateKind::H, 0, -1, -1};
    std::string name;
    std::istringstream gate_in(line);
    if (!(gate_in >> spec.cycle >> name)) parse_fail(line_no, "malformed gate line");
    auto kind = gate_from_name(name);
    if (!kind) parse_fail(line_no, "unknown gate '" + name + "'");
    spec.kind = *kind;
    if (spec.cycle < 0) parse_fail(line_no, "negative cycle");
    if (!(gate_in >> spec.q0)) parse_fail(line_no, "missing qubit");
    if (gate_arity(spec.kind) == 2) {
      if (!(gate_in >> spec.q1)) parse_fail(line_no, "cz needs two qubits");
    }
    int extra_q;
    if (gate_in >> extra_q) parse_fail(line_no, "too many qubits for gate '" + name + "'");
    for (int q : {spec.q0, spec.q1}) {
      if (q == -1) continue;
      if (q < 0 || q >= n)
        parse_fail(spec.line, "qubit " + std::to_string(q) + " out of range (n=" +
                                  std::to_string(n) + ")");
    }
    if (spec.kind == GateKind::CZ && spec.q0 == spec.q1)
      parse_fail(spec.line, "cz qubits must be distinct");
    specs.push_back(spec);
  }
  if (n < 1) throw std::invalid_argument("missing qubit count line");

  std::vector<std::pair<int, int>> candidates;
  if (grid) {
    if (grid->first * grid->second != n)
      throw std::invalid_argument("grid does not match qubit count");
    candidates.push_back(*grid);
  } else if (directive) {
    if (directive->first * directive->second != n)
      throw std::invalid_argument("grid directive does not match qubit count");
    candidates.push_back(*directive);
  } else {
    for (int r = static_cast<int>(std::sqrt(double(n))); r >= 1; --r)
      if (n % r == 0) candidates.emplace_back(r, n / r);
  }

  std::optional<std::string> first_error;
  for (auto [rows, cols] : candidates) {
    auto err = check_against_grid(rows, cols, specs);
    if (!err) {
      int depth = 0;
      std::vector<Gate> gates;
      gates.reserve(specs.size());
      for (const auto& s : specs) {
        depth = std::max(depth, s.cycle + 1);
        gates.push_back({s.kind, s.cycle, s.q0, s.q1});
      }
      return Circuit(rows, cols, depth, std::move(gates));
    }
    if (!first_error) first_error = err;
  }
  throw std::invalid_argument(first_error ? *first_error : "no valid grid for circuit");
}

std::string serialize_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out << circuit.qubit_count() << "\n";
  out << "# grid " << circuit.rows() << " " << circuit.cols() << "\n";
  for (const auto& cycle : circuit.cycles()) {
    for (const Gate& g : cycle) {
      out << g.cycle << " " << gate_name(g.kind) << " " << g.q0;
      if (g.q1 != -1) out << " " << g.q1;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace ugm
