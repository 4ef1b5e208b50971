#include "ugm/elimination.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ugm {

std::string_view ordering_tag_name(OrderingTag tag) {
  switch (tag) {
    case OrderingTag::Vertical: return "vertical";
    case OrderingTag::MinFill: return "min_fill";
    case OrderingTag::MinDegree: return "min_degree";
    case OrderingTag::External: return "external";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Dense adjacency bit rows for graph elimination replay and greedy scoring.

class BitRows {
 public:
  explicit BitRows(const Graph& g)
      : n_(g.vertex_count()), words_((n_ + 63) / 64), bits_(size_t(n_) * words_, 0) {
    for (int v = 0; v < n_; ++v)
      for (int u : g.neighbors(v)) set(v, u);
  }

  void set(int r, int c) { bits_[size_t(r) * words_ + c / 64] |= uint64_t{1} << (c % 64); }
  void reset(int r, int c) { bits_[size_t(r) * words_ + c / 64] &= ~(uint64_t{1} << (c % 64)); }
  bool test(int r, int c) const {
    return (bits_[size_t(r) * words_ + c / 64] >> (c % 64)) & 1;
  }

  int degree(int r) const {
    const uint64_t* row = &bits_[size_t(r) * words_];
    int count = 0;
    for (int w = 0; w < words_; ++w) count += std::popcount(row[w]);
    return count;
  }

  // |row(a) \ row(b)|
  int count_and_not(int a, int b) const {
    const uint64_t* ra = &bits_[size_t(a) * words_];
    const uint64_t* rb = &bits_[size_t(b) * words_];
    int count = 0;
    for (int w = 0; w < words_; ++w) count += std::popcount(ra[w] & ~rb[w]);
    return count;
  }

  void or_into(int dst, int src) {
    uint64_t* rd = &bits_[size_t(dst) * words_];
    const uint64_t* rs = &bits_[size_t(src) * words_];
    for (int w = 0; w < words_; ++w) rd[w] |= rs[w];
  }

  void clear_row(int r) {
    std::fill_n(&bits_[size_t(r) * words_], words_, 0);
  }

  std::vector<int> row_members(int r) const {
    std::vector<int> out;
    const uint64_t* row = &bits_[size_t(r) * words_];
    for (int w = 0; w < words_; ++w) {
      uint64_t word = row[w];
      while (word) {
        int b = std::countr_zero(word);
        out.push_back(w * 64 + b);
        word &= word - 1;
      }
    }
    return out;
  }

  // Connects all neighbors of v into a clique and removes v.
  void eliminate(int v) {
    auto nb = row_members(v);
    for (int u : nb) {
      or_into(u, v);
      reset(u, u);
      reset(u, v);
    }
    clear_row(v);
  }

 private:
  int n_;
  int words_;
  std::vector<uint64_t> bits_;
};

int fill_count(const BitRows& adj, int v, const std::vector<int>& nb) {
  // Every non-edge between two neighbors is seen from both sides, and each
  // neighbor u also counts itself in row(v) \ row(u).
  int total = 0;
  for (int u : nb) total += adj.count_and_not(v, u) - 1;
  return total / 2;
}

void validate_permutation(const Ordering& ordering, int n) {
  if (static_cast<int>(ordering.order.size()) != n)
    throw std::invalid_argument("ordering size does not match variable count");
  std::vector<char> seen(n, 0);
  for (int v : ordering.order) {
    if (v < 0 || v >= n || seen[v])
      throw std::invalid_argument("ordering is not a permutation of the variables");
    seen[v] = 1;
  }
}

}  // namespace

Ordering vertical_ordering(const GraphicalModel& model) {
  // Ids already ascend in (vertical rank, step); free outputs go last.
  Ordering ordering;
  ordering.tag = OrderingTag::Vertical;
  std::vector<char> is_free(model.variable_count(), 0);
  for (int v : model.free_output_vars) is_free[v] = 1;
  for (int v = 0; v < model.variable_count(); ++v)
    if (!is_free[v]) ordering.order.push_back(v);
  for (int v : model.free_output_vars) ordering.order.push_back(v);
  return ordering;
}

WidthReport simulate_elimination(const Graph& graph, const Ordering& ordering,
                                 int eliminate_count) {
  const int n = graph.vertex_count();
  validate_permutation(ordering, n);
  if (eliminate_count < 0) eliminate_count = n;
  WidthReport report;
  report.tag = ordering.tag;
  if (n == 0) return report;
  BitRows adj(graph);
  for (int i = 0; i < eliminate_count; ++i) {
    const int v = ordering.order[i];
    const int deg = adj.degree(v);
    report.clique_sizes.push_back(deg + 1);
    report.induced_width = std::max(report.induced_width, deg);
    report.est_flops += std::ldexp(1.0, deg + 1);
    report.est_peak_bytes =
        std::max(report.est_peak_bytes, std::ldexp(double(sizeof(cdouble)), deg + 1));
    adj.eliminate(v);
  }
  report.max_clique = report.clique_sizes.empty()
                          ? 0
                          : *std::max_element(report.clique_sizes.begin(),
                                              report.clique_sizes.end());
  return report;
}

std::pair<Ordering, WidthReport> greedy_ordering(const Graph& graph, OrderingTag heuristic,
                                                 int restarts, uint64_t seed,
                                                 std::span<const int> keep_last) {
  if (heuristic != OrderingTag::MinFill && heuristic != OrderingTag::MinDegree)
    throw std::invalid_argument("greedy heuristic must be min_fill or min_degree");
  const int n = graph.vertex_count();
  if (n == 0) throw std::invalid_argument("greedy ordering needs a non-empty graph");
  if (restarts < 1) restarts = 1;

  std::vector<char> frozen(n, 0);
  for (int v : keep_last) frozen[v] = 1;
  const int to_eliminate = n - static_cast<int>(keep_last.size());

  Ordering best_ordering;
  WidthReport best_report;
  bool have_best = false;

  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::mt19937_64 rng(derive_seed(seed, attempt));
    BitRows adj(graph);
    std::vector<char> alive(n, 1);
    Ordering ordering;
    ordering.tag = heuristic;
    WidthReport report;
    report.tag = heuristic;

    std::vector<int> minimal;
    for (int step = 0; step < to_eliminate; ++step) {
      long best_score = -1;
      minimal.clear();
      for (int v = 0; v < n; ++v) {
        if (!alive[v] || frozen[v]) continue;
        long score;
        if (heuristic == OrderingTag::MinDegree) {
          score = adj.degree(v);
        } else {
          auto nb = adj.row_members(v);
          score = fill_count(adj, v, nb);
        }
        if (best_score < 0 || score < best_score) {
          best_score = score;
          minimal.clear();
          minimal.push_back(v);
        } else if (score == best_score) {
          minimal.push_back(v);
        }
      }
      const int v = minimal[uniform_below(rng, minimal.size())];
      const int deg = adj.degree(v);
      report.clique_sizes.push_back(deg + 1);
      report.induced_width = std::max(report.induced_width, deg);
      report.est_flops += std::ldexp(1.0, deg + 1);
      report.est_peak_bytes =
          std::max(report.est_peak_bytes, std::ldexp(double(sizeof(cdouble)), deg + 1));
      adj.eliminate(v);
      alive[v] = 0;
      ordering.order.push_back(v);
    }
    report.max_clique = report.clique_sizes.empty()
                            ? 0
                            : *std::max_element(report.clique_sizes.begin(),
                                                report.clique_sizes.end());
    std::vector<int> tail(keep_last.begin(), keep_last.end());
    std::sort(tail.begin(), tail.end());
    for (int v : tail) ordering.order.push_back(v);

    if (!have_best || report.induced_width < best_report.induced_width ||
        (report.induced_width == best_report.induced_width &&
         report.est_flops < best_report.est_flops)) {
      best_ordering = std::move(ordering);
      best_report = std::move(report);
      have_best = true;
    }
  }
  return {std::move(best_ordering), std::move(best_report)};
}

Graph build_line_graph(const Circuit& circuit) {
  const int n = circuit.qubit_count();
  // Tensor-network nodes: one per input stub, one per gate, one per output
  // stub. Wires between consecutive nodes on a qubit become edges.
  int next_node = n;  // 0..n-1 are input stubs
  std::vector<int> last_node(n);
  std::iota(last_node.begin(), last_node.end(), 0);
  std::vector<std::vector<int>> incident_edges;  // per node
  incident_edges.resize(n);
  int edge_count = 0;
  auto add_wire = [&](int a, int b) {
    const int e = edge_count++;
    incident_edges[a].push_back(e);
    incident_edges[b].push_back(e);
  };
  for (const auto& cycle : circuit.cycles()) {
    for (const Gate& g : cycle) {
      const int node = next_node++;
      incident_edges.emplace_back();
      add_wire(last_node[g.q0], node);
      last_node[g.q0] = node;
      if (g.q1 != -1) {
        add_wire(last_node[g.q1], node);
        last_node[g.q1] = node;
      }
    }
  }
  for (int q = 0; q < n; ++q) {
    const int node = next_node++;
    incident_edges.emplace_back();
    add_wire(last_node[q], node);
  }
  Graph line(edge_count);
  for (const auto& edges : incident_edges)
    for (size_t a = 0; a < edges.size(); ++a)
      for (size_t b = a + 1; b < edges.size(); ++b) line.add_edge(edges[a], edges[b]);
  return line;
}

std::string ordering_to_text(const Ordering& ordering, const GraphicalModel& model) {
  std::ostringstream out;
  for (int v : ordering.order)
    out << model.vars[v].qubit << ":" << model.vars[v].step << "\n";
  return out.str();
}

Ordering parse_ordering(std::string_view text, const GraphicalModel& model) {
  Ordering ordering;
  ordering.tag = OrderingTag::External;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected '<qubit>:<step>'");
    int qubit, step;
    try {
      qubit = std::stoi(line.substr(0, colon));
      step = std::stoi(line.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected '<qubit>:<step>'");
    }
    if (qubit < 0 || qubit >= model.qubit_count)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": qubit out of range");
    const int id = model.var_id(qubit, step);
    if (id < 0)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": variable " +
                                  std::to_string(qubit) + ":" + std::to_string(step) +
                                  " is fixed or absent");
    ordering.order.push_back(id);
  }
  validate_permutation(ordering, model.variable_count());
  return ordering;
}

// ---------------------------------------------------------------------------
// Bucket elimination engine. Factors are relabeled so variable ids equal
// elimination positions; axes then stay ascending by construction and the
// bucket of a factor is simply its first variable.

namespace {

template <class Real>
struct EFactor {
  std::vector<int> pos;
  std::vector<std::complex<Real>> table;
};

// Lookup from a product-table index to a factor-table index. The product
// index is split into 16-bit chunks, each mapped through a precomputed
// table; the factor index is the OR of the chunk contributions.
class GatherMap {
 public:
  GatherMap(const std::vector<int>& union_axes, const std::vector<int>& factor_axes) {
    const int r_union = static_cast<int>(union_axes.size());
    const int r_factor = static_cast<int>(factor_axes.size());
    const int n_chunks = std::max(1, (r_union + 15) / 16);
    chunks_.resize(n_chunks);
    for (int c = 0; c < n_chunks; ++c) {
      const int width = std::clamp(r_union - 16 * c, 0, 16);
      chunks_[c].assign(size_t{1} << width, 0);
    }
    for (int k = 0; k < r_factor; ++k) {
      const auto it = std::lower_bound(union_axes.begin(), union_axes.end(), factor_axes[k]);
      const int axis = static_cast<int>(it - union_axes.begin());
      const int bit = r_union - 1 - axis;  // bit position from the LSB
      const int chunk = bit / 16;
      const int within = bit % 16;
      const uint32_t out = uint32_t{1} << (r_factor - 1 - k);
      auto& table = chunks_[chunk];
      for (size_t m = 0; m < table.size(); ++m)
        if ((m >> within) & 1) table[m] |= out;
    }
  }

  size_t chunk_count() const { return chunks_.size(); }
  const std::vector<uint32_t>& chunk(size_t i) const { return chunks_[i]; }

  uint64_t operator()(uint64_t i) const {
    uint64_t f = chunks_[0][i & 0xffff];
    for (size_t c = 1; c < chunks_.size(); ++c) f |= chunks_[c][(i >> (16 * c)) & 0xffff];
    return f;
  }

 private:
  std::vector<std::vector<uint32_t>> chunks_;
};

template <class Real>
struct EngineState {
  uint64_t budget;
  uint64_t live_bytes = 0;
  ElimStats* stats;

  void allocate(uint64_t bytes, int rank) {
    if (bytes > budget || live_bytes + bytes > budget)
      throw budget_error(rank, live_bytes + bytes, budget);
    live_bytes += bytes;
    stats->peak_bytes = std::max(stats->peak_bytes, live_bytes);
  }
  void release(uint64_t bytes) { live_bytes -= std::min(bytes, live_bytes); }
};

template <class Real>
uint64_t table_bytes(const EFactor<Real>& f) {
  return f.table.size() * sizeof(std::complex<Real>);
}

template <class Real>
EFactor<Real> product_over(std::vector<int> axes,
                           const std::vector<const EFactor<Real>*>& factors,
                           EngineState<Real>& state) {
  const int rank = static_cast<int>(axes.size());
  const uint64_t size = uint64_t{1} << rank;
  state.allocate(size * sizeof(std::complex<Real>), rank);
  EFactor<Real> out;
  out.pos = std::move(axes);
  out.table.resize(size);
  bool first = true;
  for (const EFactor<Real>* f : factors) {
    const GatherMap gather(out.pos, f->pos);
    const std::complex<Real>* src = f->table.data();
    std::complex<Real>* dst = out.table.data();
    if (gather.chunk_count() == 1) {
      const auto& t0 = gather.chunk(0);
      if (first)
        for (uint64_t i = 0; i < size; ++i) dst[i] = src[t0[i]];
      else
        for (uint64_t i = 0; i < size; ++i) dst[i] *= src[t0[i]];
    } else if (gather.chunk_count() == 2) {
      const auto& t0 = gather.chunk(0);
      const auto& t1 = gather.chunk(1);
      if (first)
        for (uint64_t i = 0; i < size; ++i) dst[i] = src[t0[i & 0xffff] | t1[i >> 16]];
      else
        for (uint64_t i = 0; i < size; ++i) dst[i] *= src[t0[i & 0xffff] | t1[i >> 16]];
    } else {
      if (first)
        for (uint64_t i = 0; i < size; ++i) dst[i] = src[gather(i)];
      else
        for (uint64_t i = 0; i < size; ++i) dst[i] *= src[gather(i)];
    }
    first = false;
  }
  if (first) std::fill(out.table.begin(), out.table.end(), std::complex<Real>(1));
  state.stats->multiplies += factors.empty() ? 0 : size * (factors.size() - 1);
  return out;
}

template <class Real>
EFactor<Real> reduce_first_axis(EFactor<Real>&& f, EngineState<Real>& state) {
  const uint64_t half = f.table.size() / 2;
  EFactor<Real> out;
  out.pos.assign(f.pos.begin() + 1, f.pos.end());
  out.table.resize(half);
  for (uint64_t i = 0; i < half; ++i) out.table[i] = f.table[i] + f.table[half + i];
  state.stats->adds += half;
  state.release(table_bytes(f) - table_bytes(out));
  return out;
}

template <class Real>
std::vector<int> merge_axes(const std::vector<EFactor<Real>>& factors) {
  std::vector<int> axes;
  for (const auto& f : factors) {
    std::vector<int> merged;
    merged.reserve(axes.size() + f.pos.size());
    std::set_union(axes.begin(), axes.end(), f.pos.begin(), f.pos.end(),
                   std::back_inserter(merged));
    axes = std::move(merged);
  }
  return axes;
}

template <class Real>
struct RunOutput {
  cdouble scalar = 1.0;
  std::optional<EFactor<Real>> tensor;
};

template <class Real>
RunOutput<Real> run_elimination(int num_vars, int eliminate_count,
                                std::vector<EFactor<Real>> initial, uint64_t budget,
                                ElimStats& stats) {
  EngineState<Real> state{budget, 0, &stats};
  std::vector<std::vector<EFactor<Real>>> buckets(num_vars);
  RunOutput<Real> out;
  for (auto& f : initial) {
    state.allocate(table_bytes(f), static_cast<int>(f.pos.size()));
    if (f.pos.empty()) {
      out.scalar *= cdouble(f.table[0]);
      state.release(table_bytes(f));
    } else {
      const int b = f.pos[0];
      buckets[b].push_back(std::move(f));
    }
  }

  for (int p = 0; p < eliminate_count; ++p) {
    auto& bucket = buckets[p];
    if (bucket.empty()) {
      // Variable untouched by any factor: summing the empty product over its
      // two values contributes a factor of 2.
      out.scalar *= 2.0;
      stats.step_ranks.push_back(1);
      stats.max_rank = std::max(stats.max_rank, 1);
      continue;
    }
    std::vector<const EFactor<Real>*> pointers;
    pointers.reserve(bucket.size());
    for (const auto& f : bucket) pointers.push_back(&f);
    EFactor<Real> product = product_over(merge_axes(bucket), pointers, state);
    const int rank = static_cast<int>(product.pos.size());
    stats.step_ranks.push_back(rank);
    stats.max_rank = std::max(stats.max_rank, rank);
    for (const auto& f : bucket) state.release(table_bytes(f));
    bucket.clear();
    bucket.shrink_to_fit();
    EFactor<Real> reduced = reduce_first_axis(std::move(product), state);
    if (reduced.pos.empty()) {
      out.scalar *= cdouble(reduced.table[0]);
      state.release(table_bytes(reduced));
    } else {
      buckets[reduced.pos[0]].push_back(std::move(reduced));
    }
  }

  if (eliminate_count == num_vars) return out;

  // Gather the leftovers into the joint tensor over the free positions.
  std::vector<int> free_axes(num_vars - eliminate_count);
  std::iota(free_axes.begin(), free_axes.end(), eliminate_count);
  std::vector<const EFactor<Real>*> leftovers;
  for (int p = eliminate_count; p < num_vars; ++p)
    for (const auto& f : buckets[p]) leftovers.push_back(&f);
  EFactor<Real> tensor = product_over(std::move(free_axes), leftovers, state);
  stats.final_rank = static_cast<int>(tensor.pos.size());
  out.tensor = std::move(tensor);
  return out;
}

// Reorders a table whose axes appear in 'perm' order into ascending order.
template <class Real>
std::vector<std::complex<Real>> permute_table(const std::vector<std::complex<Real>>& table,
                                              const std::vector<int>& perm) {
  const int rank = static_cast<int>(perm.size());
  std::vector<std::complex<Real>> out(table.size());
  for (uint64_t idx = 0; idx < out.size(); ++idx) {
    uint64_t src = 0;
    for (int a = 0; a < rank; ++a) {
      const uint64_t bit = (idx >> (rank - 1 - a)) & 1;
      src |= bit << (rank - 1 - perm[a]);
    }
    out[idx] = table[src];
  }
  return out;
}

template <class Real>
EliminationResult eliminate_impl(const GraphicalModel& model, const Ordering& ordering,
                                 const EliminateOptions& options) {
  const int num_vars = model.variable_count();
  validate_permutation(ordering, num_vars);
  const int num_free = static_cast<int>(model.free_output_vars.size());
  const int eliminate_count = num_vars - num_free;
  {
    std::vector<int> tail(ordering.order.begin() + eliminate_count, ordering.order.end());
    std::sort(tail.begin(), tail.end());
    if (tail != model.free_output_vars)
      throw std::invalid_argument("free output variables must come last in the ordering");
  }
  std::vector<int> pos_of(num_vars);
  for (int i = 0; i < num_vars; ++i) pos_of[ordering.order[i]] = i;

  std::vector<EFactor<Real>> initial;
  initial.reserve(model.factors.size());
  for (const Factor& f : model.factors) {
    EFactor<Real> e;
    e.pos.reserve(f.vars.size());
    for (int v : f.vars) e.pos.push_back(pos_of[v]);
    std::vector<int> perm(f.vars.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return e.pos[a] < e.pos[b]; });
    std::sort(e.pos.begin(), e.pos.end());
    std::vector<cdouble> reordered(f.table.size());
    const int rank = f.rank();
    for (uint64_t idx = 0; idx < reordered.size(); ++idx) {
      uint64_t src = 0;
      for (int a = 0; a < rank; ++a) {
        const uint64_t bit = (idx >> (rank - 1 - a)) & 1;
        src |= bit << (rank - 1 - perm[a]);
      }
      reordered[idx] = f.table[src];
    }
    e.table.resize(reordered.size());
    for (size_t i = 0; i < reordered.size(); ++i)
      e.table[i] = std::complex<Real>(reordered[i]);
    initial.push_back(std::move(e));
  }

  EliminationResult result;
  auto run = run_elimination<Real>(num_vars, eliminate_count, std::move(initial),
                                   options.memory_budget, result.stats);
  const cdouble prefactor = run.scalar * model.scale;
  if (!run.tensor) {
    result.scalar = prefactor;
    return result;
  }

  // Relabel positions back to variable ids and sort axes ascending by id.
  Factor tensor;
  const auto& pos = run.tensor->pos;
  std::vector<int> ids(pos.size());
  for (size_t a = 0; a < pos.size(); ++a) ids[a] = ordering.order[pos[a]];
  std::vector<int> perm(ids.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return ids[a] < ids[b]; });
  tensor.vars.resize(ids.size());
  for (size_t a = 0; a < perm.size(); ++a) tensor.vars[a] = ids[perm[a]];
  std::vector<std::complex<Real>> permuted =
      permute_table(run.tensor->table, std::vector<int>(perm.begin(), perm.end()));
  tensor.table.resize(permuted.size());
  for (size_t i = 0; i < permuted.size(); ++i)
    tensor.table[i] = prefactor * cdouble(permuted[i]);
  result.scalar = 1.0;
  result.output_tensor = std::move(tensor);
  return result;
}

}  // namespace

Factor broadcast_product(std::span<const Factor> factors) {
  if (factors.empty()) throw std::invalid_argument("broadcast_product of no factors");
  for (const Factor& f : factors) {
    if (!std::is_sorted(f.vars.begin(), f.vars.end()) ||
        std::adjacent_find(f.vars.begin(), f.vars.end()) != f.vars.end())
      throw std::invalid_argument("factor variables must be strictly ascending");
  }
  ElimStats stats;
  EngineState<double> state{~uint64_t{0}, 0, &stats};
  std::vector<EFactor<double>> efactors;
  efactors.reserve(factors.size());
  for (const Factor& f : factors) efactors.push_back({f.vars, f.table});
  std::vector<const EFactor<double>*> pointers;
  for (const auto& e : efactors) pointers.push_back(&e);
  EFactor<double> product = product_over(merge_axes(efactors), pointers, state);
  return Factor{std::move(product.pos), std::move(product.table)};
}

Factor reduce_first(const Factor& factor) {
  if (factor.vars.empty()) throw std::invalid_argument("cannot reduce a scalar factor");
  Factor out;
  out.vars.assign(factor.vars.begin() + 1, factor.vars.end());
  const uint64_t half = factor.table.size() / 2;
  out.table.resize(half);
  for (uint64_t i = 0; i < half; ++i) out.table[i] = factor.table[i] + factor.table[half + i];
  return out;
}

Factor process_bucket(const Bucket& bucket) {
  if (bucket.factors.empty()) throw std::invalid_argument("cannot process an empty bucket");
  for (const Factor& f : bucket.factors)
    if (f.vars.empty() || f.vars[0] != bucket.variable)
      throw std::invalid_argument("bucket factor does not act on the bucket variable first");
  return reduce_first(broadcast_product(bucket.factors));
}

EliminationResult bucket_eliminate(const GraphicalModel& model, const Ordering& ordering,
                                   const EliminateOptions& options) {
  return eliminate_impl<double>(model, ordering, options);
}

EliminationResult bucket_eliminate_single(const GraphicalModel& model,
                                          const Ordering& ordering,
                                          const EliminateOptions& options) {
  return eliminate_impl<float>(model, ordering, options);
}

}  // namespace ugm
