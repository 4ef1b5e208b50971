#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "ugm/circuit.hpp"
#include "ugm/elimination.hpp"
#include "ugm/model.hpp"

namespace ugm {

enum class OrderingStrategy { Auto, Vertical, MinFill, MinDegree };
enum class Precision { Double, Single };

struct SimOptions {
  OrderingStrategy strategy = OrderingStrategy::Auto;
  int restarts = 4;          // greedy ordering restarts
  uint64_t seed = 0;         // tie-breaking seed for greedy orderings
  Precision precision = Precision::Double;
  uint64_t memory_budget = kDefaultMemoryBudget;
  int workers = 1;
  int statevector_cap = 26;  // largest qubit count the dense oracle accepts
};

struct AmplitudeResult {
  BitString x;
  cdouble amplitude = 0.0;
  double probability = 0.0;
  double seconds = 0.0;
  int width = 0;             // largest tensor rank materialized during elimination
  uint64_t peak_bytes = 0;   // high-water mark of live tensor storage
  OrderingTag ordering = OrderingTag::Vertical;
  std::string error;         // non-empty when evaluation aborted (batch mode)
  int budget_rank = 0;       // rank of the over-budget tensor, 0 if none
  uint64_t budget_bytes = 0;

  bool ok() const { return error.empty(); }
};

// Picks the elimination ordering for a model. Auto compares the widths the
// vertical and greedy min-fill orderings would induce (graph replay only, no
// tensor work) and takes the cheaper one.
Ordering choose_ordering(const GraphicalModel& model, const SimOptions& options,
                         WidthReport* report = nullptr);

// Exact amplitude <x|U|0...0> via model construction and bucket
// elimination. Throws budget_error when the memory cap is exceeded.
AmplitudeResult amplitude(const Circuit& circuit, const BitString& x,
                          const SimOptions& options = {});

// Evaluates many outputs, distributing over options.workers threads.
// Results keep the input order; per-item failures are recorded in the item
// and do not stop the batch.
std::vector<AmplitudeResult> batch_probabilities(const Circuit& circuit,
                                                 std::span<const BitString> xs,
                                                 const SimOptions& options = {});

// Dense statevector simulation, the independent oracle for everything else.
std::vector<cdouble> statevector_oracle(const Circuit& circuit, int cap = 26);
std::vector<double> statevector_probabilities(const Circuit& circuit, int cap = 26);

// A computed set of output probabilities plus a sample drawn from it.
struct SampleSet {
  std::vector<BitString> bitstrings;   // the set T, t distinct outputs
  std::vector<double> probabilities;   // exact p(x) for each member
  std::vector<uint32_t> samples;       // m indices into bitstrings
  double total_probability = 0.0;      // sum of probabilities over T
};

// Draws t distinct uniform-random bit-strings, computes their exact
// probabilities, and samples m outputs from the normalized set.
SampleSet sample_outputs(const Circuit& circuit, uint64_t t, uint64_t m, uint64_t seed,
                         const SimOptions& options = {});

}  // namespace ugm
