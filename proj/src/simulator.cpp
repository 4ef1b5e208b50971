#include "ugm/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_set>

namespace ugm {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void apply_single_qubit(std::vector<cdouble>& state, int n, int qubit, const Mat2& m) {
  const uint64_t mask = uint64_t{1} << (n - 1 - qubit);
  const uint64_t size = state.size();
  for (uint64_t base = 0; base < size; base += 2 * mask) {
    for (uint64_t offset = 0; offset < mask; ++offset) {
      const uint64_t i0 = base + offset;
      const uint64_t i1 = i0 + mask;
      const cdouble a0 = state[i0];
      const cdouble a1 = state[i1];
      state[i0] = m[0][0] * a0 + m[0][1] * a1;
      state[i1] = m[1][0] * a0 + m[1][1] * a1;
    }
  }
}

}  // namespace

std::vector<cdouble> statevector_oracle(const Circuit& circuit, int cap) {
  const int n = circuit.qubit_count();
  if (n > cap)
    throw std::invalid_argument("statevector oracle limited to " + std::to_string(cap) +
                                " qubits, circuit has " + std::to_string(n));
  std::vector<cdouble> state(uint64_t{1} << n, 0.0);
  state[0] = 1.0;
  const cdouble t_phase = std::exp(cdouble{0.0, 1.0} * (std::acos(-1.0) / 4.0));
  for (const auto& cycle : circuit.cycles()) {
    for (const Gate& g : cycle) {
      switch (g.kind) {
        case GateKind::T: {
          const uint64_t mask = uint64_t{1} << (n - 1 - g.q0);
          for (uint64_t i = 0; i < state.size(); ++i)
            if (i & mask) state[i] *= t_phase;
          break;
        }
        case GateKind::CZ: {
          const uint64_t mask = (uint64_t{1} << (n - 1 - g.q0)) | (uint64_t{1} << (n - 1 - g.q1));
          for (uint64_t i = 0; i < state.size(); ++i)
            if ((i & mask) == mask) state[i] = -state[i];
          break;
        }
        default:
          apply_single_qubit(state, n, g.q0, gate_matrix(g.kind));
          break;
      }
    }
  }
  return state;
}

std::vector<double> statevector_probabilities(const Circuit& circuit, int cap) {
  auto state = statevector_oracle(circuit, cap);
  std::vector<double> probs(state.size());
  for (size_t i = 0; i < state.size(); ++i) probs[i] = std::norm(state[i]);
  return probs;
}

Ordering choose_ordering(const GraphicalModel& model, const SimOptions& options,
                         WidthReport* report) {
  const int eliminate_count =
      model.variable_count() - static_cast<int>(model.free_output_vars.size());
  auto finish = [&](Ordering ordering, WidthReport width) {
    if (report) *report = std::move(width);
    return ordering;
  };
  if (model.variable_count() == 0) {
    WidthReport trivial;
    trivial.tag = OrderingTag::Vertical;
    return finish(vertical_ordering(model), std::move(trivial));
  }
  switch (options.strategy) {
    case OrderingStrategy::Vertical: {
      Ordering v = vertical_ordering(model);
      return finish(std::move(v), simulate_elimination(model.graph, v, eliminate_count));
    }
    case OrderingStrategy::MinFill:
    case OrderingStrategy::MinDegree: {
      const OrderingTag tag = options.strategy == OrderingStrategy::MinFill
                                  ? OrderingTag::MinFill
                                  : OrderingTag::MinDegree;
      auto [ordering, width] =
          greedy_ordering(model.graph, tag, options.restarts, options.seed,
                          model.free_output_vars);
      return finish(std::move(ordering), std::move(width));
    }
    case OrderingStrategy::Auto:
      break;
  }
  Ordering vertical = vertical_ordering(model);
  WidthReport vertical_width = simulate_elimination(model.graph, vertical, eliminate_count);
  auto [greedy, greedy_width] =
      greedy_ordering(model.graph, OrderingTag::MinFill, options.restarts, options.seed,
                      model.free_output_vars);
  if (greedy_width.max_clique < vertical_width.max_clique ||
      (greedy_width.max_clique == vertical_width.max_clique &&
       greedy_width.est_flops < vertical_width.est_flops)) {
    return finish(std::move(greedy), std::move(greedy_width));
  }
  return finish(std::move(vertical), std::move(vertical_width));
}

namespace {

AmplitudeResult evaluate_with_ordering(const Circuit& circuit, const BitString& x,
                                       const Ordering& ordering, const SimOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  AmplitudeResult result;
  result.x = x;
  result.ordering = ordering.tag;
  GraphicalModel model = build_model(circuit, x);
  EliminateOptions elim{options.memory_budget};
  EliminationResult run = options.precision == Precision::Single
                              ? bucket_eliminate_single(model, ordering, elim)
                              : bucket_eliminate(model, ordering, elim);
  result.amplitude = run.scalar;
  result.probability = std::norm(run.scalar);
  result.width = run.stats.max_rank;
  result.peak_bytes = run.stats.peak_bytes;
  result.seconds = seconds_since(start);
  return result;
}

}  // namespace

AmplitudeResult amplitude(const Circuit& circuit, const BitString& x,
                          const SimOptions& options) {
  if (static_cast<int>(x.size()) != circuit.qubit_count())
    throw std::invalid_argument("bit-string length does not match qubit count");
  GraphicalModel model = build_model(circuit, x);
  Ordering ordering = choose_ordering(model, options);
  return evaluate_with_ordering(circuit, x, ordering, options);
}

std::vector<AmplitudeResult> batch_probabilities(const Circuit& circuit,
                                                 std::span<const BitString> xs,
                                                 const SimOptions& options) {
  std::vector<AmplitudeResult> results(xs.size());
  const int n = circuit.qubit_count();

  // Fixed-output models share one variable layout and interaction graph, so
  // the elimination order is chosen once for the whole batch.
  Ordering shared;
  for (const auto& x : xs) {
    if (static_cast<int>(x.size()) != n) continue;
    GraphicalModel model = build_model(circuit, x);
    shared = choose_ordering(model, options);
    break;
  }

  auto evaluate = [&](size_t i) {
    try {
      if (static_cast<int>(xs[i].size()) != n)
        throw std::invalid_argument("bit-string length does not match qubit count");
      results[i] = evaluate_with_ordering(circuit, xs[i], shared, options);
    } catch (const budget_error& e) {
      results[i].x = xs[i];
      results[i].error = e.what();
      results[i].budget_rank = e.rank;
      results[i].budget_bytes = e.bytes;
    } catch (const std::exception& e) {
      results[i].x = xs[i];
      results[i].error = e.what();
    }
  };
  const int workers = std::max(1, options.workers);
  if (workers == 1 || xs.size() <= 1) {
    for (size_t i = 0; i < xs.size(); ++i) evaluate(i);
    return results;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  const int spawn = int(std::min<size_t>(workers, xs.size()));
  pool.reserve(spawn);
  for (int w = 0; w < spawn; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < xs.size(); i = next.fetch_add(1)) evaluate(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

namespace {

std::vector<uint64_t> draw_distinct_indices(int n, uint64_t t, std::mt19937_64& rng) {
  const uint64_t space = uint64_t{1} << n;
  std::vector<uint64_t> out;
  out.reserve(t);
  if (t == space) {
    out.resize(space);
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  if (n <= 24 && t > space / 2) {
    // Dense draw: partial Fisher-Yates over the full index range.
    std::vector<uint64_t> all(space);
    std::iota(all.begin(), all.end(), 0);
    for (uint64_t i = 0; i < t; ++i) {
      const uint64_t j = i + uniform_below(rng, space - i);
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
    return out;
  }
  std::unordered_set<uint64_t> seen;
  seen.reserve(t * 2);
  while (out.size() < t) {
    const uint64_t candidate = rng() & (space - 1);
    if (seen.insert(candidate).second) out.push_back(candidate);
  }
  return out;
}

}  // namespace

SampleSet sample_outputs(const Circuit& circuit, uint64_t t, uint64_t m, uint64_t seed,
                         const SimOptions& options) {
  const int n = circuit.qubit_count();
  if (m < 1 || t < m) throw std::invalid_argument("need t >= m >= 1");
  if (n < 64 && t > (uint64_t{1} << n))
    throw std::invalid_argument("t exceeds the number of distinct outputs");

  std::mt19937_64 set_rng(derive_seed(seed, 0));
  const auto indices = draw_distinct_indices(n, t, set_rng);

  SampleSet set;
  set.bitstrings.reserve(t);
  for (uint64_t index : indices) set.bitstrings.push_back(bits_of_index(index, n));
  auto results = batch_probabilities(circuit, set.bitstrings, options);
  set.probabilities.reserve(t);
  for (const auto& r : results) {
    if (r.budget_rank > 0) throw budget_error(r.budget_rank, r.budget_bytes, options.memory_budget);
    if (!r.ok()) throw std::runtime_error("evaluation failed for " + format_bits(r.x) + ": " + r.error);
    set.probabilities.push_back(r.probability);
  }
  set.total_probability =
      std::accumulate(set.probabilities.begin(), set.probabilities.end(), 0.0);
  if (set.total_probability <= 0.0)
    throw std::runtime_error("all sampled probabilities are zero; cannot normalize");

  std::vector<double> cumulative(t);
  std::partial_sum(set.probabilities.begin(), set.probabilities.end(), cumulative.begin());
  std::mt19937_64 sample_rng(derive_seed(seed, 1));
  set.samples.reserve(m);
  for (uint64_t i = 0; i < m; ++i) {
    const double u = uniform_double(sample_rng) * set.total_probability;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    set.samples.push_back(static_cast<uint32_t>(
        std::min<size_t>(it - cumulative.begin(), t - 1)));
  }
  return set;
}

}  // namespace ugm
