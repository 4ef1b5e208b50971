#include "ugm/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>

namespace ugm {

double cross_entropy(std::span<const double> sample_probs) {
  if (sample_probs.empty()) throw std::invalid_argument("cross entropy of an empty sample");
  double total = 0.0;
  for (double p : sample_probs) {
    if (!(p > 0.0))
      throw std::invalid_argument("non-positive probability in cross entropy sample");
    total += std::log(p);
  }
  return -total / double(sample_probs.size());
}

PorterThomas porter_thomas_constants(int n) {
  if (n < 1) throw std::invalid_argument("need at least one qubit");
  const double base = n * std::log(2.0) + kEulerGamma;
  return {base, base - 1.0};
}

FidelityEstimate fidelity_estimate(std::span<const double> sample_probs, double h0,
                                   double h_ideal) {
  if (h0 == h_ideal) throw std::invalid_argument("degenerate cross-entropy difference");
  FidelityEstimate est;
  est.h0 = h0;
  est.h_ideal = h_ideal;
  est.m = sample_probs.size();
  est.cross_entropy = cross_entropy(sample_probs);
  // Central-limit error of S from the empirical spread of log p.
  double var = 0.0;
  for (double p : sample_probs) {
    const double d = -std::log(p) - est.cross_entropy;
    var += d * d;
  }
  var /= est.m > 1 ? double(est.m - 1) : 1.0;
  est.stderr_cross = std::sqrt(var / double(est.m));
  est.alpha = (h0 - est.cross_entropy) / (h0 - h_ideal);
  est.stderr_alpha = est.stderr_cross / std::abs(h0 - h_ideal);
  return est;
}

double entropy_from_set(std::span<const double> probs, int n) {
  double total = 0.0;
  for (double p : probs)
    if (p > 0.0) total += p * std::log(p);
  return -std::ldexp(total, n) / double(probs.size());
}

double bootstrap_error(std::span<const double> values,
                       const std::function<double(std::span<const double>)>& statistic,
                       int resamples, uint64_t seed) {
  if (values.empty()) throw std::invalid_argument("bootstrap of an empty sample");
  if (resamples < 2) throw std::invalid_argument("need at least two resamples");
  std::mt19937_64 rng(seed);
  std::vector<double> resample(values.size());
  std::vector<double> stats(resamples);
  for (int r = 0; r < resamples; ++r) {
    for (auto& v : resample) v = values[uniform_below(rng, values.size())];
    stats[r] = statistic(resample);
  }
  const double mean = std::accumulate(stats.begin(), stats.end(), 0.0) / resamples;
  double var = 0.0;
  for (double s : stats) var += (s - mean) * (s - mean);
  return std::sqrt(var / double(resamples - 1));
}

PTStats pt_check(std::span<const double> probs, int n, int bins, int resamples,
                 uint64_t seed) {
  if (probs.empty()) throw std::invalid_argument("no probabilities given");
  if (bins < 1) throw std::invalid_argument("need at least one bin");
  PTStats stats;
  stats.samples = probs.size();

  // Scale to u = N * p so the reference law is Exp(1).
  std::vector<double> scaled(probs.size());
  for (size_t i = 0; i < probs.size(); ++i) scaled[i] = std::ldexp(probs[i], n);
  std::sort(scaled.begin(), scaled.end());

  const double u_max = scaled.back();
  double u_min = 0.0;
  for (double u : scaled)
    if (u > 0.0) {
      u_min = u;
      break;
    }
  if (u_min <= 0.0) u_min = u_max > 0.0 ? u_max : 1.0;

  const double total = double(probs.size());
  if (u_max <= u_min * (1.0 + 1e-12)) {
    PTBin bin;
    bin.lo = u_min;
    bin.hi = u_max;
    bin.count = probs.size();
    bin.expected = total * (std::exp(-bin.lo) - std::exp(-bin.hi));
    stats.bins.push_back(bin);
  } else {
    const double ratio = std::pow(u_max / u_min, 1.0 / bins);
    size_t cursor = 0;
    // Zeros and underflow collect in a leading [0, u_min) bin.
    PTBin under;
    under.lo = 0.0;
    under.hi = u_min;
    while (cursor < scaled.size() && scaled[cursor] < u_min) {
      ++under.count;
      ++cursor;
    }
    under.expected = total * (1.0 - std::exp(-under.hi));
    if (under.count > 0) stats.bins.push_back(under);
    double lo = u_min;
    for (int b = 0; b < bins; ++b) {
      PTBin bin;
      bin.lo = lo;
      bin.hi = b + 1 == bins ? u_max : lo * ratio;
      while (cursor < scaled.size() &&
             (scaled[cursor] < bin.hi || (b + 1 == bins && scaled[cursor] <= bin.hi))) {
        ++bin.count;
        ++cursor;
      }
      bin.expected = total * (std::exp(-bin.lo) - std::exp(-bin.hi));
      stats.bins.push_back(bin);
      lo = bin.hi;
    }
  }

  // KS distance of the empirical CDF against 1 - exp(-u).
  double ks = 0.0;
  for (size_t i = 0; i < scaled.size(); ++i) {
    const double ref = 1.0 - std::exp(-scaled[i]);
    ks = std::max(ks, std::abs(double(i + 1) / total - ref));
    ks = std::max(ks, std::abs(double(i) / total - ref));
  }
  stats.ks = ks;

  std::vector<double> raw(probs.begin(), probs.end());
  stats.entropy = entropy_from_set(raw, n);
  stats.entropy_stderr = bootstrap_error(
      raw, [n](std::span<const double> xs) { return entropy_from_set(xs, n); }, resamples,
      derive_seed(seed, 2));
  return stats;
}

double XebErrorModel::total_spread() const {
  return std::sqrt(coef_set * coef_set + coef_sample * coef_sample + coef_cross * coef_cross);
}

XebErrorModel xeb_error_model(uint64_t t, uint64_t m, double h, int n) {
  if (t < 1 || m < 1) throw std::invalid_argument("need t, m >= 1");
  const double pi = std::acos(-1.0);
  const double var_log = pi * pi / 6.0 - 1.0;
  XebErrorModel model;
  model.mean = h;
  model.coef_set = std::sqrt(2.0 / double(t)) * h;
  model.coef_sample = std::sqrt(var_log / double(m));
  model.coef_cross = double(n) * double(n) / std::sqrt(2.0 * double(t) * double(m) * var_log);
  return model;
}

Estimate expectation_mc(const Circuit& circuit,
                        const std::function<double(const BitString&)>& observable,
                        uint64_t t, uint64_t m, uint64_t seed, const SimOptions& options) {
  SampleSet set = sample_outputs(circuit, t, m, seed, options);
  const size_t count = set.bitstrings.size();
  std::vector<double> weighted(count), weights(count);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < count; ++i) {
    const double value = observable(set.bitstrings[i]);
    weighted[i] = set.probabilities[i] * value;
    weights[i] = set.probabilities[i];
    num += weighted[i];
    den += weights[i];
  }
  Estimate est;
  est.value = num / den;

  // Bootstrap the ratio over the computed set; the spread scales as 1/sqrt(t).
  std::mt19937_64 rng(derive_seed(seed, 3));
  const int resamples = 200;
  std::vector<double> stats(resamples);
  for (int r = 0; r < resamples; ++r) {
    double rn = 0.0, rd = 0.0;
    for (size_t i = 0; i < count; ++i) {
      const size_t j = uniform_below(rng, count);
      rn += weighted[j];
      rd += weights[j];
    }
    stats[r] = rd > 0.0 ? rn / rd : 0.0;
  }
  const double mean = std::accumulate(stats.begin(), stats.end(), 0.0) / resamples;
  double var = 0.0;
  for (double s : stats) var += (s - mean) * (s - mean);
  est.std_error = std::sqrt(var / double(resamples - 1));
  return est;
}

std::vector<uint64_t> sample_from_distribution(std::span<const double> probs, size_t m,
                                               uint64_t seed) {
  if (probs.empty()) throw std::invalid_argument("empty distribution");
  std::vector<double> cumulative(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
  const double total = cumulative.back();
  if (!(total > 0.0)) throw std::invalid_argument("distribution has no mass");
  std::mt19937_64 rng(seed);
  std::vector<uint64_t> out;
  out.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    const double u = uniform_double(rng) * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    out.push_back(std::min<uint64_t>(it - cumulative.begin(), probs.size() - 1));
  }
  return out;
}

std::vector<uint64_t> sample_mixture(std::span<const double> probs, double alpha, size_t m,
                                     uint64_t seed) {
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("alpha must be in [0, 1]");
  std::vector<double> cumulative(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
  const double total = cumulative.back();
  std::mt19937_64 rng(seed);
  std::vector<uint64_t> out;
  out.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    if (uniform_double(rng) < alpha) {
      const double u = uniform_double(rng) * total;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      out.push_back(std::min<uint64_t>(it - cumulative.begin(), probs.size() - 1));
    } else {
      out.push_back(uniform_below(rng, probs.size()));
    }
  }
  return out;
}

std::vector<BitString> read_bitstrings(std::istream& in, int n) {
  std::vector<BitString> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    BitString bits;
    try {
      bits = parse_bits(line);
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (static_cast<int>(bits.size()) != n)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(n) + " bits, got " +
                                  std::to_string(bits.size()));
    out.push_back(std::move(bits));
  }
  return out;
}

}  // namespace ugm
