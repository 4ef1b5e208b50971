#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "ugm/elimination.hpp"
#include "ugm/simulator.hpp"

using namespace ugm;
using testing::brute_force_sum;
using testing::random_factor;
using testing::synthetic_model;

namespace {

// Renames factor variables through a map, reordering table axes so the new
// ids ascend. Test-side helper for setting up explicit bucket layouts.
Factor relabel(const Factor& f, const std::vector<int>& new_id) {
  Factor out;
  out.vars.resize(f.vars.size());
  std::vector<int> perm(f.vars.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    return new_id[f.vars[a]] < new_id[f.vars[b]];
  });
  for (size_t a = 0; a < perm.size(); ++a) out.vars[a] = new_id[f.vars[perm[a]]];
  out.table.resize(f.table.size());
  const int rank = f.rank();
  for (uint64_t idx = 0; idx < out.table.size(); ++idx) {
    uint64_t src = 0;
    for (int a = 0; a < rank; ++a)
      src |= ((idx >> (rank - 1 - a)) & 1) << (rank - 1 - perm[a]);
    out.table[idx] = f.table[src];
  }
  return out;
}

}  // namespace

TEST_CASE("broadcast product merges variables with expansion") {
  std::mt19937_64 rng(1);
  // Variables ordered j < i < k < l as ids 0..3; three factors share j.
  Factor f1 = random_factor(rng, {0, 1});
  Factor f2 = random_factor(rng, {0, 2});
  Factor f3 = random_factor(rng, {0, 3});
  std::vector<Factor> bucket = {f1, f2, f3};
  Factor product = broadcast_product(bucket);
  CHECK(product.vars == std::vector<int>{0, 1, 2, 3});
  for (uint64_t idx = 0; idx < 16; ++idx) {
    int j = (idx >> 3) & 1, i = (idx >> 2) & 1, k = (idx >> 1) & 1, l = idx & 1;
    cdouble expect = f1.table[j * 2 + i] * f2.table[j * 2 + k] * f3.table[j * 2 + l];
    CHECK(std::abs(product.table[idx] - expect) < 1e-14);
  }
  Factor summed = process_bucket({0, bucket});
  CHECK(summed.vars == std::vector<int>{1, 2, 3});
  for (uint64_t idx = 0; idx < 8; ++idx) {
    cdouble expect =
        brute_force_sum(bucket, 4, {{1, int(idx >> 2) & 1}, {2, int(idx >> 1) & 1}, {3, int(idx) & 1}});
    CHECK(std::abs(summed.table[idx] - expect) < 1e-13);
  }
}

TEST_CASE("a single rank-1 bucket reduces to a scalar") {
  const double s = 1.0 / std::sqrt(2.0);
  Factor f{{0}, {cdouble{s}, cdouble{s}}};
  Factor result = process_bucket({0, {f}});
  CHECK(result.vars.empty());
  CHECK(std::abs(result.table[0] - std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("process_bucket validates its invariant") {
  Factor f{{1, 2}, {1.0, 1.0, 1.0, 1.0}};
  CHECK_THROWS_AS(process_bucket({0, {f}}), std::invalid_argument);
  CHECK_THROWS_AS(process_bucket({0, {}}), std::invalid_argument);
  Factor unsorted{{2, 1}, {1.0, 1.0, 1.0, 1.0}};
  CHECK_THROWS_AS(broadcast_product(std::vector<Factor>{unsorted}), std::invalid_argument);
}

TEST_CASE("bucket elimination equals exhaustive summation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    const int num_vars = 3 + int(uniform_below(rng, 4));  // 3..6
    std::vector<Factor> factors;
    const int count = 2 + int(uniform_below(rng, 4));
    for (int i = 0; i < count; ++i) {
      std::vector<int> vars;
      for (int v = 0; v < num_vars; ++v)
        if (uniform_below(rng, 2) && int(vars.size()) < 4) vars.push_back(v);
      if (vars.empty()) vars.push_back(int(uniform_below(rng, num_vars)));
      factors.push_back(random_factor(rng, vars));
    }
    cdouble expect = brute_force_sum(factors, num_vars);
    auto model = synthetic_model(num_vars, factors);
    Ordering ordering{std::vector<int>(num_vars), OrderingTag::External};
    std::iota(ordering.order.begin(), ordering.order.end(), 0);
    auto result = bucket_eliminate(model, ordering);
    CHECK(std::abs(result.scalar - expect) < 1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("every ordering yields the same scalar") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    const int num_vars = 4 + int(uniform_below(rng, 2));  // 4..5
    std::vector<Factor> factors;
    for (int i = 0; i < 4; ++i) {
      std::vector<int> vars;
      for (int v = 0; v < num_vars; ++v)
        if (uniform_below(rng, 2)) vars.push_back(v);
      if (vars.empty()) vars.push_back(0);
      factors.push_back(random_factor(rng, vars));
    }
    auto model = synthetic_model(num_vars, factors);
    std::vector<int> order(num_vars);
    std::iota(order.begin(), order.end(), 0);
    cdouble reference = brute_force_sum(factors, num_vars);
    do {
      auto result = bucket_eliminate(model, {order, OrderingTag::External});
      CHECK(std::abs(result.scalar - reference) < 1e-12 * std::max(1.0, std::abs(reference)));
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST_CASE("worked two-qubit example: product, partial sums, amplitude") {
  auto circuit = testing::two_qubit_hadamard_cz();
  auto model = build_model(circuit, parse_bits("00"));
  REQUIRE(model.factors.size() == 5);

  // Eliminate qubit 1's variable first: relabel (1,1) -> 0, (0,1) -> 1.
  std::vector<Factor> factors;
  for (const Factor& f : model.factors) factors.push_back(relabel(f, {1, 0}));
  Factor tau1 = broadcast_product(factors);
  REQUIRE(tau1.table.size() == 4);
  CHECK(std::abs(tau1.table[0] - 0.25) < 1e-12);
  CHECK(std::abs(tau1.table[1] - 0.25) < 1e-12);
  CHECK(std::abs(tau1.table[2] - 0.25) < 1e-12);
  CHECK(std::abs(tau1.table[3] + 0.25) < 1e-12);

  Factor tau2 = reduce_first(tau1);
  REQUIRE(tau2.table.size() == 2);
  CHECK(std::abs(tau2.table[0] - 0.5) < 1e-12);
  CHECK(std::abs(tau2.table[1]) < 1e-12);

  Factor final = reduce_first(tau2);
  CHECK(std::abs(final.table[0] - 0.5) < 1e-12);

  auto result = bucket_eliminate(model, vertical_ordering(model));
  CHECK(std::abs(result.scalar - 0.5) < 1e-12);
}

TEST_CASE("vertical ordering follows worldlines") {
  auto circuit = testing::two_qubit_hadamard_cz();
  auto free_model = build_model(circuit, Endpoints::all_free(2), Endpoints::all_free(2));
  auto ordering = vertical_ordering(free_model);
  // Free outputs (ids 2 and 5) move to the back; the rest keep vertical order.
  CHECK(ordering.order == std::vector<int>{0, 1, 3, 4, 2, 5});
  auto fixed_model = build_model(circuit, parse_bits("00"));
  CHECK(vertical_ordering(fixed_model).order == std::vector<int>{0, 1});
}

TEST_CASE("graph elimination replay counts cliques") {
  Graph clique2(2);
  clique2.add_edge(0, 1);
  Ordering fwd{{0, 1}, OrderingTag::External};
  auto report = simulate_elimination(clique2, fwd);
  CHECK(report.max_clique == 2);
  CHECK(report.induced_width == 1);
  CHECK(report.clique_sizes == std::vector<int>{2, 1});

  Graph path(10);
  for (int v = 0; v + 1 < 10; ++v) path.add_edge(v, v + 1);
  Ordering along{std::vector<int>(10), OrderingTag::External};
  std::iota(along.order.begin(), along.order.end(), 0);
  CHECK(simulate_elimination(path, along).induced_width == 1);

  Graph k5(5);
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) k5.add_edge(a, b);
  Ordering any{{2, 0, 4, 1, 3}, OrderingTag::External};
  CHECK(simulate_elimination(k5, any).induced_width == 4);
  CHECK(simulate_elimination(k5, any).max_clique == 5);
}

TEST_CASE("simulated cliques equal realized tensor ranks") {
  std::mt19937_64 rng(11);
  for (uint64_t seed : {1, 2}) {
    auto circuit = generate_random_circuit(3, 3, 8, seed);
    auto model = build_model(circuit, BitString(9, 0));
    std::vector<Ordering> orderings;
    orderings.push_back(vertical_ordering(model));
    orderings.push_back(greedy_ordering(model.graph, OrderingTag::MinFill, 2, seed).first);
    Ordering shuffled = vertical_ordering(model);
    for (size_t i = shuffled.order.size(); i > 1; --i)
      std::swap(shuffled.order[i - 1], shuffled.order[uniform_below(rng, i)]);
    shuffled.tag = OrderingTag::External;
    orderings.push_back(shuffled);
    for (const auto& ordering : orderings) {
      auto predicted = simulate_elimination(model.graph, ordering);
      auto run = bucket_eliminate(model, ordering);
      CHECK(run.stats.step_ranks == predicted.clique_sizes);
      CHECK(run.stats.max_rank == predicted.max_clique);
    }
  }
}

TEST_CASE("random sparse models realize the simulated cliques") {
  std::mt19937_64 rng(41);
  const int num_vars = 20;
  std::vector<Factor> factors;
  for (int i = 0; i < 28; ++i) {
    int a = int(uniform_below(rng, num_vars));
    int b = int(uniform_below(rng, num_vars));
    if (a == b) b = (b + 1) % num_vars;
    factors.push_back(testing::random_factor(rng, {std::min(a, b), std::max(a, b)}));
  }
  auto model = synthetic_model(num_vars, factors);
  Ordering ordering{std::vector<int>(num_vars), OrderingTag::External};
  std::iota(ordering.order.begin(), ordering.order.end(), 0);
  for (size_t i = ordering.order.size(); i > 1; --i)
    std::swap(ordering.order[i - 1], ordering.order[uniform_below(rng, i)]);
  auto predicted = simulate_elimination(model.graph, ordering);
  auto run = bucket_eliminate(model, ordering);
  CHECK(run.stats.step_ranks == predicted.clique_sizes);
  CHECK(run.stats.max_rank == predicted.max_clique);
  cdouble expect = brute_force_sum(factors, num_vars);
  CHECK(std::abs(run.scalar - expect) < 1e-9 * std::max(1.0, std::abs(expect)));
}

TEST_CASE("greedy orderings on known graphs") {
  // Trees have width 1 under min-degree.
  std::mt19937_64 rng(5);
  Graph tree(15);
  for (int v = 1; v < 15; ++v) tree.add_edge(int(uniform_below(rng, v)), v);
  auto [tree_order, tree_report] = greedy_ordering(tree, OrderingTag::MinDegree, 2, 0);
  CHECK(tree_report.induced_width == 1);

  // A clique has width k-1 under any ordering.
  Graph k6(6);
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) k6.add_edge(a, b);
  CHECK(greedy_ordering(k6, OrderingTag::MinFill, 1, 0).second.induced_width == 5);

  CHECK_THROWS_AS(greedy_ordering(Graph(0), OrderingTag::MinFill, 1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(greedy_ordering(k6, OrderingTag::Vertical, 1, 0), std::invalid_argument);
}

TEST_CASE("line graph of the two-qubit example") {
  auto circuit = testing::two_qubit_hadamard_cz();
  Graph line = build_line_graph(circuit);
  CHECK(line.vertex_count() == 8);
  CHECK(line.edge_count() == 10);
  auto [order, report] = greedy_ordering(line, OrderingTag::MinFill, 8, 0);
  CHECK(report.max_clique == 4);

  // The direct model of the same amplitude has max clique 2.
  auto model = build_model(circuit, parse_bits("00"));
  auto direct = greedy_ordering(model.graph, OrderingTag::MinFill, 8, 0).second;
  CHECK(direct.max_clique == 2);
}

TEST_CASE("single-gate circuit line graph is one edge") {
  Circuit circuit(1, 1, 1, {{GateKind::H, 0, 0, -1}});
  Graph line = build_line_graph(circuit);
  CHECK(line.vertex_count() == 2);
  CHECK(line.edge_count() == 1);
  CHECK(greedy_ordering(line, OrderingTag::MinFill, 1, 0).second.induced_width == 1);
}

TEST_CASE("direct models never beat their line graphs on width") {
  for (uint64_t seed : {1, 2, 3}) {
    auto circuit = generate_random_circuit(2, 3, 8, seed);
    auto model = build_model(circuit, BitString(6, 0));
    auto direct = greedy_ordering(model.graph, OrderingTag::MinFill, 8, seed).second;
    auto line = greedy_ordering(build_line_graph(circuit), OrderingTag::MinFill, 8, seed).second;
    CHECK(direct.max_clique <= line.max_clique);
  }
}

TEST_CASE("vertical width on a deep grid stays in range and replays") {
  auto circuit = generate_random_circuit(6, 6, 25, 5);
  auto model = build_model(circuit, BitString(36, 0));
  auto ordering = vertical_ordering(model);
  auto a = simulate_elimination(model.graph, ordering);
  auto b = simulate_elimination(model.graph, ordering);
  CHECK(a.induced_width == b.induced_width);
  CHECK(a.clique_sizes == b.clique_sizes);
  CHECK(a.induced_width >= circuit.min_side());
  CHECK(a.induced_width < model.variable_count());
}

TEST_CASE("vertical width grows with depth") {
  int previous = 0;
  for (int depth : {10, 14, 18, 22}) {
    auto circuit = generate_random_circuit(6, 6, depth, 5);
    auto model = build_model(circuit, BitString(36, 0));
    auto report = simulate_elimination(model.graph, vertical_ordering(model));
    CHECK(report.max_clique >= previous);
    previous = report.max_clique;
  }
}

TEST_CASE("memory budget aborts with a structured error") {
  auto circuit = generate_random_circuit(3, 3, 12, 1);
  auto model = build_model(circuit, BitString(9, 0));
  auto ordering = vertical_ordering(model);
  try {
    bucket_eliminate(model, ordering, {1024});
    FAIL_CHECK("expected budget_error");
  } catch (const budget_error& e) {
    CHECK(e.rank > 0);
    CHECK(e.bytes > 1024);
    CHECK(std::string(e.what()).find("memory budget") != std::string::npos);
  }
}

TEST_CASE("ordering import and export round trip") {
  auto circuit = generate_random_circuit(2, 3, 8, 4);
  auto model = build_model(circuit, BitString(6, 0));
  auto ordering = greedy_ordering(model.graph, OrderingTag::MinFill, 2, 9).first;
  auto text = ordering_to_text(ordering, model);
  auto parsed = parse_ordering(text, model);
  CHECK(parsed.order == ordering.order);
  CHECK(parsed.tag == OrderingTag::External);
  CHECK_THROWS_AS(parse_ordering("0:0\n", model), std::invalid_argument);
  CHECK_THROWS_AS(parse_ordering("garbage\n", model), std::invalid_argument);
}

TEST_CASE("free output variables must close the ordering") {
  auto circuit = testing::two_qubit_hadamard_cz();
  auto model = build_model(circuit, Endpoints::all_free(2), Endpoints::zeros(2));
  auto good = vertical_ordering(model);
  CHECK_NOTHROW(bucket_eliminate(model, good));
  Ordering bad = good;
  std::swap(bad.order.front(), bad.order.back());
  CHECK_THROWS_AS(bucket_eliminate(model, bad), std::invalid_argument);
}

TEST_CASE("free outputs produce the joint amplitude tensor") {
  auto circuit = testing::two_qubit_hadamard_cz();
  auto model = build_model(circuit, Endpoints::all_free(2), Endpoints::zeros(2));
  auto result = bucket_eliminate(model, vertical_ordering(model));
  REQUIRE(result.output_tensor.has_value());
  auto reference = statevector_oracle(circuit);
  REQUIRE(result.output_tensor->table.size() == reference.size());
  for (size_t i = 0; i < reference.size(); ++i)
    CHECK(std::abs(result.output_tensor->table[i] - reference[i]) < 1e-12);
  CHECK(result.stats.final_rank == 2);
}

TEST_CASE("joint tensors on wide grids follow variable order") {
  // On a 2x3 grid the vertical rank interleaves the qubit indices, so the
  // tensor axes are not in raw qubit order; map through the variable table.
  auto circuit = generate_random_circuit(2, 3, 6, 4);
  const int n = 6;
  auto model = build_model(circuit, Endpoints::all_free(n), Endpoints::zeros(n));
  auto result = bucket_eliminate(model, vertical_ordering(model));
  REQUIRE(result.output_tensor.has_value());
  const auto& tensor = *result.output_tensor;
  REQUIRE(tensor.rank() == n);
  auto reference = statevector_oracle(circuit);
  for (uint64_t i = 0; i < reference.size(); ++i) {
    auto x = bits_of_index(i, n);
    uint64_t index = 0;
    for (int v : tensor.vars) index = (index << 1) | x[model.vars[v].qubit];
    CHECK(std::abs(tensor.table[index] - reference[i]) < 1e-12);
  }
}

TEST_CASE("variables without factors contribute a factor of two") {
  std::mt19937_64 rng(2);
  Factor f = random_factor(rng, {1});
  auto model = synthetic_model(2, {f});
  Ordering ordering{{0, 1}, OrderingTag::External};
  auto result = bucket_eliminate(model, ordering);
  cdouble expect = 2.0 * (f.table[0] + f.table[1]);
  CHECK(std::abs(result.scalar - expect) < 1e-14);
}

TEST_CASE("disconnected components multiply") {
  std::mt19937_64 rng(8);
  Factor a = random_factor(rng, {0, 1});
  Factor b = random_factor(rng, {2, 3});
  auto model = synthetic_model(4, {a, b});
  Ordering ordering{{0, 1, 2, 3}, OrderingTag::External};
  auto result = bucket_eliminate(model, ordering);
  cdouble expect = brute_force_sum(std::vector<Factor>{a, b}, 4);
  CHECK(std::abs(result.scalar - expect) < 1e-12);
}
