#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ugm/common.hpp"
#include "ugm/model.hpp"

namespace ugm {

enum class OrderingTag { Vertical, MinFill, MinDegree, External };

std::string_view ordering_tag_name(OrderingTag tag);

// A total elimination order over variable ids.
struct Ordering {
  std::vector<int> order;
  OrderingTag tag = OrderingTag::External;
};

// Result of replaying vertex elimination on a graph. clique_sizes[i] is the
// size of the clique formed when the i-th vertex is removed (the vertex plus
// its remaining neighbors), which equals the rank of the product tensor a
// real elimination run materializes at that step. induced_width is the
// classic count that omits the eliminated vertex itself: max clique size
// minus one.
struct WidthReport {
  OrderingTag tag = OrderingTag::External;
  int induced_width = 0;
  int max_clique = 0;
  std::vector<int> clique_sizes;
  double est_flops = 0.0;       // sum of 2^clique over steps
  double est_peak_bytes = 0.0;  // largest 2^clique * sizeof(complex double)
};

// Variables sorted by (vertical rank of qubit, worldline step), with free
// output variables moved to the back so they survive elimination.
Ordering vertical_ordering(const GraphicalModel& model);

// Replays elimination on the graph alone (no tensors). Only the first
// eliminate_count vertices of the ordering are removed; -1 means all.
WidthReport simulate_elimination(const Graph& graph, const Ordering& ordering,
                                 int eliminate_count = -1);

// Best-of-restarts greedy ordering under min-fill or min-degree scoring with
// seeded uniform tie-breaking. Vertices listed in keep_last are never
// eliminated and are appended (ascending) after the greedy prefix.
std::pair<Ordering, WidthReport> greedy_ordering(const Graph& graph, OrderingTag heuristic,
                                                 int restarts, uint64_t seed,
                                                 std::span<const int> keep_last = {});

// Tensor-network graph of a circuit (state and measurement stubs included)
// collapsed to its line graph: one vertex per wire segment, cliques between
// segments meeting at a gate.
Graph build_line_graph(const Circuit& circuit);

// One "j:k" variable id per line.
std::string ordering_to_text(const Ordering& ordering, const GraphicalModel& model);
Ordering parse_ordering(std::string_view text, const GraphicalModel& model);

// ---------------------------------------------------------------------------
// Bucket elimination.

// A bucket holds every live factor whose lowest variable is the bucket's
// variable. Variable ids double as the elimination order for these
// primitives: lower id means eliminated earlier.
struct Bucket {
  int variable;
  std::vector<Factor> factors;
};

// Elementwise product with broadcasting: the result ranges over the sorted
// union of the input variables and missing axes are expanded implicitly.
Factor broadcast_product(std::span<const Factor> factors);

// Sums out the first (lowest) variable; a rank-0 result is a scalar table.
Factor reduce_first(const Factor& factor);

// broadcast_product of the bucket followed by reduce_first, eliminating the
// bucket's variable.
Factor process_bucket(const Bucket& bucket);

struct ElimStats {
  int max_rank = 0;            // largest product tensor rank over all steps
  std::vector<int> step_ranks; // product rank per eliminated variable
  int final_rank = 0;          // rank of the free-variable tensor, if any
  uint64_t peak_bytes = 0;     // high-water mark of live table storage
  uint64_t multiplies = 0;
  uint64_t adds = 0;
};

struct EliminateOptions {
  uint64_t memory_budget = kDefaultMemoryBudget;
};

// Scalar amplitude, or the joint tensor over free output variables when the
// model has any (those must sit at the end of the ordering). Scalars from
// disconnected components are multiplied together; the model's prefactor is
// folded in. Tensor axes follow ascending variable ids (vertical rank order
// of the qubits, the first axis most significant), so consumers index it
// through the model's variable metadata rather than raw qubit order.
struct EliminationResult {
  cdouble scalar = 1.0;
  std::optional<Factor> output_tensor;
  ElimStats stats;
};

EliminationResult bucket_eliminate(const GraphicalModel& model, const Ordering& ordering,
                                   const EliminateOptions& options = {});

// Same contract evaluated in single precision (results widened to double).
EliminationResult bucket_eliminate_single(const GraphicalModel& model,
                                          const Ordering& ordering,
                                          const EliminateOptions& options = {});

}  // namespace ugm
