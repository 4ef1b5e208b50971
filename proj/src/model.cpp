#include "ugm/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ugm {

namespace {

const cdouble kI{0.0, 1.0};

cdouble t_phase() {
  return std::exp(kI * (std::numbers::pi / 4.0));
}

void check_unitary4(const Mat4& u) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      cdouble dot = 0.0;
      for (int k = 0; k < 4; ++k) dot += u[k][i] * std::conj(u[k][j]);
      cdouble expect = i == j ? cdouble{1.0, 0.0} : cdouble{0.0, 0.0};
      if (std::abs(dot - expect) > 1e-10)
        throw std::invalid_argument("two-qubit matrix is not unitary");
    }
  }
}

}  // namespace

Mat2 gate_matrix(GateKind kind) {
  const double s = 1.0 / std::sqrt(2.0);
  const cdouble a = cdouble{0.5, 0.5};    // (1+i)/2
  const cdouble b = cdouble{0.5, -0.5};   // (1-i)/2
  switch (kind) {
    case GateKind::H:
      return {{{cdouble{s}, cdouble{s}}, {cdouble{s}, cdouble{-s}}}};
    case GateKind::XHalf:
      return {{{a, b}, {b, a}}};
    case GateKind::YHalf:
      return {{{a, -a}, {a, a}}};
    case GateKind::T:
      return {{{cdouble{1.0}, cdouble{0.0}}, {cdouble{0.0}, t_phase()}}};
    case GateKind::CZ:
      break;
  }
  throw std::invalid_argument("cz has no single-qubit matrix");
}

Factor gate_factor(GateKind kind, const std::vector<int>& vars) {
  if (static_cast<int>(vars.size()) != (is_diagonal(kind) ? gate_arity(kind) : 2))
    throw std::invalid_argument("variable count does not match gate");
  if (!std::is_sorted(vars.begin(), vars.end()) ||
      std::adjacent_find(vars.begin(), vars.end()) != vars.end())
    throw std::invalid_argument("factor variables must be strictly ascending");
  Factor f;
  f.vars = vars;
  switch (kind) {
    case GateKind::T:
      f.table = {cdouble{1.0}, t_phase()};
      break;
    case GateKind::CZ:
      f.table = {cdouble{1.0}, cdouble{1.0}, cdouble{1.0}, cdouble{-1.0}};
      break;
    default: {
      // vars are (input, output); entry (b, b') holds <b'|U|b>.
      Mat2 m = gate_matrix(kind);
      f.table = {m[0][0], m[1][0], m[0][1], m[1][1]};
      break;
    }
  }
  return f;
}

Factor nondiagonal_two_qubit_factor(const Mat4& unitary, const std::array<int, 4>& vars) {
  check_unitary4(unitary);
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return vars[a] < vars[b]; });
  for (int i = 0; i < 3; ++i)
    if (vars[order[i]] == vars[order[i + 1]])
      throw std::invalid_argument("factor variables must be distinct");
  Factor f;
  f.vars = {vars[order[0]], vars[order[1]], vars[order[2]], vars[order[3]]};
  f.table.resize(16);
  for (int idx = 0; idx < 16; ++idx) {
    int bit[4];  // bit[k] = value of vars[k] in (b0, b1, b0', b1') order
    for (int a = 0; a < 4; ++a) bit[order[a]] = (idx >> (3 - a)) & 1;
    f.table[idx] = unitary[bit[2] * 2 + bit[3]][bit[0] * 2 + bit[1]];
  }
  return f;
}

ModelBuilder::ModelBuilder(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
  step_.assign(rows * cols, 0);
}

void ModelBuilder::apply(GateKind kind, int qubit) {
  if (qubit < 0 || qubit >= static_cast<int>(step_.size()))
    throw std::invalid_argument("qubit out of range");
  Proto p;
  if (kind == GateKind::T) {
    p.vars = {{qubit, step_[qubit]}};
    p.table = {cdouble{1.0}, t_phase()};
  } else if (kind == GateKind::CZ) {
    throw std::invalid_argument("use apply_cz for two-qubit gates");
  } else {
    Mat2 m = gate_matrix(kind);
    p.vars = {{qubit, step_[qubit]}, {qubit, step_[qubit] + 1}};
    p.table = {m[0][0], m[1][0], m[0][1], m[1][1]};
    step_[qubit] += 1;
  }
  protos_.push_back(std::move(p));
}

void ModelBuilder::apply_cz(int a, int b) {
  if (a == b) throw std::invalid_argument("cz qubits must be distinct");
  Proto p;
  p.vars = {{a, step_[a]}, {b, step_[b]}};
  p.table = {cdouble{1.0}, cdouble{1.0}, cdouble{1.0}, cdouble{-1.0}};
  protos_.push_back(std::move(p));
}

void ModelBuilder::apply_two_qubit(const Mat4& unitary, int a, int b) {
  if (a == b) throw std::invalid_argument("two-qubit gate qubits must be distinct");
  check_unitary4(unitary);
  Proto p;
  p.vars = {{a, step_[a]}, {b, step_[b]}, {a, step_[a] + 1}, {b, step_[b] + 1}};
  p.table.resize(16);
  for (int idx = 0; idx < 16; ++idx) {
    int ia = (idx >> 3) & 1, ib = (idx >> 2) & 1, oa = (idx >> 1) & 1, ob = idx & 1;
    p.table[idx] = unitary[oa * 2 + ob][ia * 2 + ib];
  }
  step_[a] += 1;
  step_[b] += 1;
  protos_.push_back(std::move(p));
}

GraphicalModel ModelBuilder::finish(const Endpoints& output, const Endpoints& input) const {
  const int n = static_cast<int>(step_.size());
  if (static_cast<int>(output.bits.size()) != n || static_cast<int>(input.bits.size()) != n)
    throw std::invalid_argument("endpoint size does not match qubit count");

  GraphicalModel model;
  model.qubit_count = n;
  model.worldline = step_;

  // Endpoint deltas: substitute fixed values directly. A gateless qubit with
  // both ends fixed must have consistent bits; otherwise the amplitude is 0.
  // When its single variable is also a free output it stays free and the
  // input constraint becomes an explicit rank-1 factor below.
  std::vector<std::vector<std::optional<uint8_t>>> fixed_value(n);
  for (int j = 0; j < n; ++j) fixed_value[j].assign(step_[j] + 1, std::nullopt);
  for (int j = 0; j < n; ++j) {
    if (input.bits[j] && !(step_[j] == 0 && !output.bits[j]))
      fixed_value[j][0] = input.bits[j];
    if (output.bits[j]) {
      auto& slot = fixed_value[j][step_[j]];
      if (slot && *slot != *output.bits[j]) model.inconsistent = true;
      slot = output.bits[j];
    }
  }
  if (model.inconsistent) model.scale = 0.0;

  // Dense ids over unfixed variables, ascending in (vertical rank, step).
  auto rank_of = [&](int q) {
    int r = q / cols_, c = q % cols_;
    return rows_ <= cols_ ? c * rows_ + r : q;
  };
  std::vector<int> qubit_by_rank(n);
  for (int q = 0; q < n; ++q) qubit_by_rank[rank_of(q)] = q;

  model.var_ids.resize(n);
  for (int j = 0; j < n; ++j) model.var_ids[j].assign(step_[j] + 1, -1);
  for (int r = 0; r < n; ++r) {
    int j = qubit_by_rank[r];
    for (int k = 0; k <= step_[j]; ++k) {
      if (fixed_value[j][k]) {
        model.fixed.push_back({j, k, *fixed_value[j][k]});
      } else {
        model.var_ids[j][k] = static_cast<int>(model.vars.size());
        model.vars.push_back({j, k});
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!output.bits[j]) model.free_output_vars.push_back(model.var_ids[j][step_[j]]);
  }
  std::sort(model.free_output_vars.begin(), model.free_output_vars.end());

  // Slice fixed axes out of every factor; fully fixed factors collapse into
  // the scalar prefactor.
  for (const Proto& proto : protos_) {
    const int r_old = static_cast<int>(proto.vars.size());
    struct Axis {
      int id;
      int old_axis;
    };
    std::vector<Axis> kept;
    uint64_t fixed_bits = 0;
    for (int a = 0; a < r_old; ++a) {
      auto [j, k] = proto.vars[a];
      if (fixed_value[j][k]) {
        if (*fixed_value[j][k]) fixed_bits |= uint64_t{1} << (r_old - 1 - a);
      } else {
        kept.push_back({model.var_ids[j][k], a});
      }
    }
    std::sort(kept.begin(), kept.end(), [](const Axis& a, const Axis& b) { return a.id < b.id; });
    const int r_new = static_cast<int>(kept.size());
    if (r_new == 0) {
      model.scale *= proto.table[fixed_bits];
      continue;
    }
    Factor f;
    f.vars.reserve(r_new);
    for (const Axis& a : kept) f.vars.push_back(a.id);
    f.table.resize(size_t{1} << r_new);
    for (uint64_t idx = 0; idx < f.table.size(); ++idx) {
      uint64_t old_idx = fixed_bits;
      for (int a = 0; a < r_new; ++a) {
        uint64_t bit = (idx >> (r_new - 1 - a)) & 1;
        old_idx |= bit << (r_old - 1 - kept[a].old_axis);
      }
      f.table[idx] = proto.table[old_idx];
    }
    model.factors.push_back(std::move(f));
  }

  // A gateless qubit with fixed input and free output still constrains its
  // single variable; keep that as an explicit rank-1 delta factor.
  for (int j = 0; j < n; ++j) {
    if (step_[j] == 0 && input.bits[j] && !output.bits[j]) {
      Factor f;
      f.vars = {model.var_ids[j][0]};
      f.table = {cdouble{*input.bits[j] == 0 ? 1.0 : 0.0},
                 cdouble{*input.bits[j] == 1 ? 1.0 : 0.0}};
      model.factors.push_back(std::move(f));
    }
  }

  model.graph = Graph(model.variable_count());
  for (const Factor& f : model.factors)
    for (size_t a = 0; a < f.vars.size(); ++a)
      for (size_t b = a + 1; b < f.vars.size(); ++b) model.graph.add_edge(f.vars[a], f.vars[b]);
  return model;
}

GraphicalModel build_model(const Circuit& circuit, const Endpoints& output,
                           const Endpoints& input) {
  ModelBuilder builder(circuit.rows(), circuit.cols());
  for (const auto& cycle : circuit.cycles()) {
    for (const Gate& g : cycle) {
      if (g.kind == GateKind::CZ) {
        builder.apply_cz(g.q0, g.q1);
      } else {
        builder.apply(g.kind, g.q0);
      }
    }
  }
  return builder.finish(output, input);
}

GraphicalModel build_model(const Circuit& circuit, const Endpoints& output) {
  return build_model(circuit, output, Endpoints::zeros(circuit.qubit_count()));
}

GraphicalModel build_model(const Circuit& circuit, const BitString& output) {
  return build_model(circuit, Endpoints::fixed(output),
                     Endpoints::zeros(circuit.qubit_count()));
}

std::string graph_edge_dump(const GraphicalModel& model) {
  std::ostringstream out;
  for (int v = 0; v < model.variable_count(); ++v) {
    for (int u : model.graph.neighbors(v)) {
      if (u <= v) continue;
      out << model.vars[v].qubit << ":" << model.vars[v].step << " " << model.vars[u].qubit
          << ":" << model.vars[u].step << "\n";
    }
  }
  return out.str();
}

}  // namespace ugm
