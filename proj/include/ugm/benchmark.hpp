#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ugm/circuit.hpp"
#include "ugm/simulator.hpp"

namespace ugm {

inline constexpr double kEulerGamma = 0.5772156649015329;

// Natural-log cross entropy -1/m * sum log p of the ideal probabilities
// assigned to a measured sample. Throws if any probability is not positive.
double cross_entropy(std::span<const double> sample_probs);

struct PorterThomas {
  double h0;    // cross entropy of an uncorrelated distribution, n log 2 + gamma
  double h_pt;  // entropy of the exponential distribution, n log 2 - 1 + gamma
};

PorterThomas porter_thomas_constants(int n);

struct FidelityEstimate {
  double alpha = 0.0;
  double cross_entropy = 0.0;  // S of the sample
  double h0 = 0.0;
  double h_ideal = 0.0;        // H(p) used in the denominator
  size_t m = 0;
  double stderr_cross = 0.0;   // central-limit error of S
  double stderr_alpha = 0.0;
};

// alpha = (H0 - S) / (H0 - H(p)), the cross-entropy fidelity estimate.
FidelityEstimate fidelity_estimate(std::span<const double> sample_probs, double h0,
                                   double h_ideal);

struct PTBin {
  double lo = 0.0;
  double hi = 0.0;
  uint64_t count = 0;
  double expected = 0.0;  // expected count under the exponential law
};

struct PTStats {
  std::vector<PTBin> bins;
  double ks = 0.0;              // Kolmogorov-Smirnov distance of N*p to Exp(1)
  double entropy = 0.0;         // -(2^n / t) * sum p log p over the set
  double entropy_stderr = 0.0;  // bootstrap error of the entropy estimate
  size_t samples = 0;
};

// Histogram of the scaled probabilities N*p (N = 2^n) in log-spaced bins
// against the exponential density, KS distance, and the set-based entropy
// estimate with a bootstrap error bar.
PTStats pt_check(std::span<const double> probs, int n, int bins, int resamples = 200,
                 uint64_t seed = 0);

// -(2^n / t) * sum p log p: entropy of the output distribution estimated
// from probabilities of t uniform-random outputs.
double entropy_from_set(std::span<const double> probs, int n);

// Standard deviation of a statistic over with-replacement resamples.
double bootstrap_error(std::span<const double> values,
                       const std::function<double(std::span<const double>)>& statistic,
                       int resamples, uint64_t seed);

// Distribution of the sampled cross entropy predicted for a set of t
// computed probabilities and m drawn samples: mean H plus three fluctuation
// terms with the given coefficients on two independent unit normals and
// their product.
struct XebErrorModel {
  double mean = 0.0;
  double coef_set = 0.0;     // multiplies the set-size normal, sqrt(2/t) * H
  double coef_sample = 0.0;  // multiplies the sample-size normal, sqrt((pi^2/6-1)/m)
  double coef_cross = 0.0;   // multiplies the product term, n^2/sqrt(2tm(pi^2/6-1))

  double total_spread() const;
};

XebErrorModel xeb_error_model(uint64_t t, uint64_t m, double h, int n);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo estimate of a diagonal observable from a computed probability
// set: sum of normalized probabilities times the observable, with a
// bootstrap error bar of order 1/sqrt(t).
Estimate expectation_mc(const Circuit& circuit,
                        const std::function<double(const BitString&)>& observable,
                        uint64_t t, uint64_t m, uint64_t seed,
                        const SimOptions& options = {});

// ---------------------------------------------------------------------------
// Synthetic measurement generators (stand-ins for experimental samples) and
// measured-bit-string ingestion.

// m indices drawn from the distribution given by probs (need not be
// normalized).
std::vector<uint64_t> sample_from_distribution(std::span<const double> probs, size_t m,
                                               uint64_t seed);

// m indices from alpha * p + (1 - alpha) * uniform over probs.size() outcomes.
std::vector<uint64_t> sample_mixture(std::span<const double> probs, double alpha, size_t m,
                                     uint64_t seed);

// One bit-string per line; '#' lines are comments. Validates length n.
std::vector<BitString> read_bitstrings(std::istream& in, int n);

}  // namespace ugm
