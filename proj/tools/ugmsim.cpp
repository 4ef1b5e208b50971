// ugmsim: exact output amplitudes and probabilities of low-depth 2D circuits
// through complex graphical models and bucket elimination, plus sampling,
// cross-entropy benchmarking, width analysis, and oracle cross-checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ugm/benchmark.hpp"
#include "ugm/circuit.hpp"
#include "ugm/elimination.hpp"
#include "ugm/ising.hpp"
#include "ugm/model.hpp"
#include "ugm/simulator.hpp"

using json = nlohmann::ordered_json;
using namespace ugm;

namespace {

constexpr const char* kVersion = "0.1.0";

struct VerifyMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

uint64_t parse_bytes(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty byte count");
  uint64_t scale = 1;
  std::string digits = text;
  switch (std::tolower(digits.back())) {
    case 'k': scale = 1ull << 10; digits.pop_back(); break;
    case 'm': scale = 1ull << 20; digits.pop_back(); break;
    case 'g': scale = 1ull << 30; digits.pop_back(); break;
    default: break;
  }
  return std::stoull(digits) * scale;
}

uint64_t default_memory_budget() {
  if (const char* env = std::getenv("UGMSIM_MEMORY_BUDGET")) {
    try {
      return parse_bytes(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("UGMSIM_MEMORY_BUDGET is not a byte count");
    }
  }
  return kDefaultMemoryBudget;
}

// --- circuit source ---------------------------------------------------------

struct CircuitSource {
  std::string path;
  int rows = 0, cols = 0, depth = 0;
  uint64_t circuit_seed = 1;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--circuit", path, "circuit file to load");
    cmd->add_option("--rows", rows, "grid rows for a generated circuit");
    cmd->add_option("--cols", cols, "grid columns for a generated circuit");
    cmd->add_option("--depth", depth, "cycle count for a generated circuit");
    cmd->add_option("--circuit-seed", circuit_seed, "generator seed (default 1)");
  }

  bool generated() const { return path.empty(); }

  Circuit load() const {
    if (!path.empty()) {
      if (rows || cols || depth)
        throw std::invalid_argument("give either --circuit or generator parameters, not both");
      std::ifstream in(path);
      if (!in) throw std::invalid_argument("cannot open circuit file: " + path);
      std::stringstream buffer;
      buffer << in.rdbuf();
      return parse_circuit(buffer.str());
    }
    if (rows < 1 || cols < 1 || depth < 1)
      throw std::invalid_argument("need --circuit or all of --rows/--cols/--depth");
    return generate_random_circuit(rows, cols, depth, circuit_seed);
  }

  void describe(json& meta) const {
    if (!path.empty()) {
      meta["circuit_file"] = path;
    } else {
      meta["rows"] = rows;
      meta["cols"] = cols;
      meta["depth"] = depth;
      meta["circuit_seed"] = circuit_seed;
    }
  }
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write to " + path);
  out << content;
}

std::string meta_comment_lines(const json& meta) {
  std::ostringstream out;
  out << "# ugmsim " << kVersion << "\n";
  for (auto& [key, value] : meta.items())
    out << "# " << key << " " << (value.is_string() ? value.get<std::string>() : value.dump())
        << "\n";
  return out.str();
}

OrderingStrategy parse_strategy(const std::string& name) {
  if (name == "auto") return OrderingStrategy::Auto;
  if (name == "vertical") return OrderingStrategy::Vertical;
  if (name == "minfill") return OrderingStrategy::MinFill;
  if (name == "mindegree") return OrderingStrategy::MinDegree;
  throw std::invalid_argument("unknown ordering strategy: " + name);
}

// --- shared evaluation options ----------------------------------------------

struct EvalFlags {
  std::string ordering = "auto";
  std::string ordering_file;
  int restarts = 4;
  uint64_t seed = 0;
  std::string precision = "double";
  std::string memory_budget_text;
  int workers = 1;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--ordering", ordering, "auto|vertical|minfill|mindegree (default auto)");
    cmd->add_option("--ordering-file", ordering_file, "import an elimination order (j:k lines)");
    cmd->add_option("--restarts", restarts, "greedy ordering restarts (default 4)");
    cmd->add_option("--seed", seed, "master seed for all run randomness (default 0)");
    cmd->add_option("--precision", precision, "double|single (default double)");
    cmd->add_option("--memory-budget", memory_budget_text,
                    "tensor memory cap in bytes, K/M/G suffix allowed");
    cmd->add_option("--workers", workers, "worker threads for batches (default 1)");
  }

  SimOptions sim_options() const {
    SimOptions options;
    options.strategy = parse_strategy(ordering);
    options.restarts = restarts;
    options.seed = seed;
    if (precision == "single") {
      options.precision = Precision::Single;
    } else if (precision != "double") {
      throw std::invalid_argument("precision must be double or single");
    }
    options.memory_budget =
        memory_budget_text.empty() ? default_memory_budget() : parse_bytes(memory_budget_text);
    options.workers = workers;
    return options;
  }

  void describe(json& meta) const {
    meta["ordering"] = ordering;
    if (!ordering_file.empty()) meta["ordering_file"] = ordering_file;
    meta["restarts"] = restarts;
    meta["seed"] = seed;
    meta["precision"] = precision;
    meta["workers"] = workers;
  }
};

// --- generate ----------------------------------------------------------------

struct GenerateCmd {
  int rows = 0, cols = 0, depth = 0;
  uint64_t seed = 1;
  std::string out = "-";

  int run() const {
    Circuit circuit = generate_random_circuit(rows, cols, depth, seed);
    std::string text = serialize_circuit(circuit);
    std::ostringstream comment;
    comment << "# generator rows=" << rows << " cols=" << cols << " depth=" << depth
            << " seed=" << seed << "\n";
    // The qubit count stays on the first line; metadata follows it.
    const size_t first_newline = text.find('\n');
    text.insert(first_newline + 1, comment.str());
    write_output(out, text);
    return 0;
  }
};

// --- amplitude ----------------------------------------------------------------

struct AmplitudeCmd {
  CircuitSource source;
  EvalFlags eval;
  std::vector<std::string> bits;
  std::string bits_file;
  bool all = false;
  std::string format = "csv";
  std::string out = "-";

  int run() const {
    Circuit circuit = source.load();
    const int n = circuit.qubit_count();
    std::vector<BitString> xs;
    for (const auto& b : bits) xs.push_back(parse_bits(b));
    if (!bits_file.empty()) {
      std::ifstream in(bits_file);
      if (!in) throw std::invalid_argument("cannot open " + bits_file);
      auto more = read_bitstrings(in, n);
      xs.insert(xs.end(), more.begin(), more.end());
    }
    if (all) {
      if (n > 24) throw std::invalid_argument("--all is limited to 24 qubits");
      for (uint64_t i = 0; i < (uint64_t{1} << n); ++i) xs.push_back(bits_of_index(i, n));
    }
    if (xs.empty()) throw std::invalid_argument("no output bit-strings given");
    for (const auto& x : xs)
      if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("bit-string length does not match qubit count");

    SimOptions options = eval.sim_options();
    std::vector<AmplitudeResult> results;
    if (!eval.ordering_file.empty()) {
      // Amplitude models share one variable layout, so one imported order
      // serves every output.
      std::ifstream in(eval.ordering_file);
      if (!in) throw std::invalid_argument("cannot open " + eval.ordering_file);
      std::stringstream buffer;
      buffer << in.rdbuf();
      results.reserve(xs.size());
      for (const auto& x : xs) {
        GraphicalModel model = build_model(circuit, x);
        Ordering ordering = parse_ordering(buffer.str(), model);
        AmplitudeResult r;
        r.x = x;
        const auto start = std::chrono::steady_clock::now();
        try {
          auto run = options.precision == Precision::Single
                         ? bucket_eliminate_single(model, ordering, {options.memory_budget})
                         : bucket_eliminate(model, ordering, {options.memory_budget});
          r.amplitude = run.scalar;
          r.probability = std::norm(run.scalar);
          r.width = run.stats.max_rank;
          r.ordering = OrderingTag::External;
        } catch (const std::exception& e) {
          r.error = e.what();
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
      }
    } else {
      results = batch_probabilities(circuit, xs, options);
    }

    json meta;
    source.describe(meta);
    eval.describe(meta);
    meta["outputs"] = xs.size();

    std::ostringstream body;
    bool budget_hit = false, failed = false;
    if (format == "csv") {
      body << meta_comment_lines(meta);
      body << "bitstring,re,im,prob,width,seconds\n";
      for (const auto& r : results) {
        if (!r.ok()) {
          body << format_bits(r.x) << ",,,,,\n";
          continue;
        }
        body << format_bits(r.x) << "," << fmt_double(r.amplitude.real()) << ","
             << fmt_double(r.amplitude.imag()) << "," << fmt_double(r.probability) << ","
             << r.width << "," << fmt_double(r.seconds) << "\n";
      }
    } else if (format == "jsonl") {
      for (const auto& r : results) {
        json row;
        row["bitstring"] = format_bits(r.x);
        if (r.ok()) {
          row["re"] = r.amplitude.real();
          row["im"] = r.amplitude.imag();
          row["prob"] = r.probability;
          row["width"] = r.width;
          row["peak_bytes"] = r.peak_bytes;
          row["seconds"] = r.seconds;
          row["ordering"] = std::string(ordering_tag_name(r.ordering));
        } else {
          row["error"] = r.error;
        }
        body << row.dump() << "\n";
      }
    } else {
      throw std::invalid_argument("format must be csv or jsonl");
    }
    for (const auto& r : results) {
      if (r.ok()) continue;
      failed = true;
      if (r.budget_rank > 0) budget_hit = true;
      std::cerr << "error: " << format_bits(r.x) << ": " << r.error << "\n";
    }
    write_output(out, body.str());
    if (budget_hit) return 3;
    return failed ? 1 : 0;
  }
};

// --- width ---------------------------------------------------------------------

struct WidthCmd {
  CircuitSource source;
  std::string depths;  // lo:hi[:step] sweep for generated circuits
  std::vector<std::string> orderings{"vertical", "minfill"};
  bool line_graph = false;
  bool free_endpoints = false;
  int restarts = 4;
  uint64_t seed = 0;
  std::string format = "csv";
  std::string out = "-";
  std::string dump_graph;     // interaction graph edge list, one pair per line
  std::string emit_ordering;  // first computed ordering as j:k lines

  int run() const {
    std::vector<int> depth_list;
    if (!depths.empty()) {
      if (!source.generated())
        throw std::invalid_argument("--depths sweeps need generator parameters");
      int lo = 0, hi = 0, step = 1;
      char c1 = 0, c2 = 0;
      std::istringstream in(depths);
      if (!(in >> lo >> c1 >> hi) || c1 != ':' || lo < 1 || hi < lo)
        throw std::invalid_argument("--depths wants lo:hi[:step]");
      if (in >> c2 >> step) {
        if (c2 != ':' || step < 1) throw std::invalid_argument("--depths wants lo:hi[:step]");
      }
      for (int d = lo; d <= hi; d += step) depth_list.push_back(d);
    } else {
      depth_list.push_back(0);  // single circuit as configured
    }

    json meta;
    source.describe(meta);
    meta["line_graph"] = line_graph;
    meta["restarts"] = restarts;
    meta["seed"] = seed;

    std::ostringstream csv;
    csv << meta_comment_lines(meta);
    csv << "rows,cols,depth,graph,ordering,vertices,width,max_clique,est_log2_flops,"
           "est_peak_bytes\n";
    json rows_json = json::array();

    for (int depth : depth_list) {
      CircuitSource src = source;
      if (depth > 0) src.depth = depth;
      Circuit circuit = src.load();
      GraphicalModel model =
          free_endpoints
              ? build_model(circuit, Endpoints::all_free(circuit.qubit_count()),
                            Endpoints::all_free(circuit.qubit_count()))
              : build_model(circuit, BitString(circuit.qubit_count(), 0));
      Graph graph = line_graph ? build_line_graph(circuit) : model.graph;
      if (!dump_graph.empty()) {
        if (line_graph)
          throw std::invalid_argument("--dump-graph applies to the direct model only");
        write_output(dump_graph, graph_edge_dump(model));
      }
      bool ordering_written = false;
      for (const auto& name : orderings) {
        WidthReport report;
        Ordering chosen;
        if (name == "vertical") {
          if (line_graph)
            throw std::invalid_argument("the vertical ordering is undefined on line graphs");
          chosen = vertical_ordering(model);
          report = simulate_elimination(graph, chosen);
        } else if (name == "minfill" || name == "mindegree") {
          const OrderingTag tag =
              name == "minfill" ? OrderingTag::MinFill : OrderingTag::MinDegree;
          if (graph.vertex_count() == 0) {
            chosen.tag = tag;
            report.tag = tag;
          } else {
            auto [ordering, rep] = greedy_ordering(graph, tag, restarts, seed);
            chosen = std::move(ordering);
            report = std::move(rep);
          }
        } else {
          throw std::invalid_argument("unknown ordering: " + name);
        }
        if (!emit_ordering.empty() && !ordering_written) {
          if (line_graph)
            throw std::invalid_argument("--emit-ordering applies to the direct model only");
          write_output(emit_ordering, ordering_to_text(chosen, model));
          ordering_written = true;
        }
        csv << circuit.rows() << "," << circuit.cols() << "," << circuit.depth() << ","
            << (line_graph ? "line" : "direct") << "," << name << "," << graph.vertex_count()
            << "," << report.induced_width << "," << report.max_clique << ","
            << fmt_double(report.est_flops > 0 ? std::log2(report.est_flops) : 0.0) << ","
            << fmt_double(report.est_peak_bytes) << "\n";
        json row;
        row["rows"] = circuit.rows();
        row["cols"] = circuit.cols();
        row["depth"] = circuit.depth();
        row["graph"] = line_graph ? "line" : "direct";
        row["ordering"] = name;
        row["vertices"] = graph.vertex_count();
        row["width"] = report.induced_width;
        row["max_clique"] = report.max_clique;
        row["clique_sizes"] = report.clique_sizes;
        row["est_flops"] = report.est_flops;
        row["est_peak_bytes"] = report.est_peak_bytes;
        rows_json.push_back(std::move(row));
      }
    }

    if (format == "csv") {
      write_output(out, csv.str());
    } else if (format == "json") {
      json doc;
      doc["meta"] = meta;
      doc["reports"] = rows_json;
      write_output(out, doc.dump(2) + "\n");
    } else {
      throw std::invalid_argument("format must be csv or json");
    }
    return 0;
  }
};

// --- sample ---------------------------------------------------------------------

struct SampleCmd {
  CircuitSource source;
  EvalFlags eval;
  uint64_t t = 0, m = 0;
  std::string prefix = "sample";

  int run() const {
    Circuit circuit = source.load();
    SimOptions options = eval.sim_options();
    SampleSet set = sample_outputs(circuit, t, m, eval.seed, options);

    json meta;
    source.describe(meta);
    eval.describe(meta);
    meta["t"] = t;
    meta["m"] = m;

    std::ostringstream samples;
    samples << meta_comment_lines(meta);
    for (uint32_t index : set.samples) samples << format_bits(set.bitstrings[index]) << "\n";
    write_output(prefix + ".samples.txt", samples.str());

    std::ostringstream setcsv;
    setcsv << meta_comment_lines(meta);
    setcsv << "bitstring,prob\n";
    for (size_t i = 0; i < set.bitstrings.size(); ++i)
      setcsv << format_bits(set.bitstrings[i]) << "," << fmt_double(set.probabilities[i])
             << "\n";
    write_output(prefix + ".set.csv", setcsv.str());

    json stats;
    stats["meta"] = meta;
    stats["total_probability"] = set.total_probability;
    stats["entropy_estimate"] = entropy_from_set(set.probabilities, circuit.qubit_count());
    stats["set_size"] = set.bitstrings.size();
    stats["sample_size"] = set.samples.size();
    write_output(prefix + ".meta.json", stats.dump(2) + "\n");
    return 0;
  }
};

// --- xeb -----------------------------------------------------------------------

struct XebCmd {
  CircuitSource source;
  EvalFlags eval;
  std::string measured;
  double h0 = 0.0, h_ideal = 0.0;
  std::string out = "-";

  int run(bool have_h0, bool have_h_ideal) const {
    Circuit circuit = source.load();
    const int n = circuit.qubit_count();
    std::ifstream in(measured);
    if (!in) throw std::invalid_argument("cannot open " + measured);
    auto xs = read_bitstrings(in, n);
    if (xs.empty()) throw std::invalid_argument("no measured bit-strings in " + measured);

    SimOptions options = eval.sim_options();
    auto results = batch_probabilities(circuit, xs, options);
    std::vector<double> probs;
    probs.reserve(results.size());
    for (const auto& r : results) {
      if (r.budget_rank > 0)
        throw budget_error(r.budget_rank, r.budget_bytes, options.memory_budget);
      if (!r.ok()) throw std::runtime_error("evaluation failed: " + r.error);
      probs.push_back(r.probability);
    }

    PorterThomas pt = porter_thomas_constants(n);
    FidelityEstimate est = fidelity_estimate(probs, have_h0 ? h0 : pt.h0,
                                             have_h_ideal ? h_ideal : pt.h_pt);

    json meta;
    source.describe(meta);
    eval.describe(meta);
    meta["measured_file"] = measured;

    json doc;
    doc["meta"] = meta;
    doc["alpha"] = est.alpha;
    doc["cross_entropy"] = est.cross_entropy;
    doc["h0"] = est.h0;
    doc["h_ideal"] = est.h_ideal;
    doc["m"] = est.m;
    doc["stderr_cross_entropy"] = est.stderr_cross;
    doc["stderr_alpha"] = est.stderr_alpha;
    write_output(out, doc.dump(2) + "\n");
    return 0;
  }
};

// --- pt ------------------------------------------------------------------------

struct PtCmd {
  CircuitSource source;
  EvalFlags eval;
  bool full = false;
  uint64_t t = 0;
  int bins = 40;
  int resamples = 200;
  std::string probs_file;
  std::string prefix = "pt";

  int run() const {
    std::vector<double> probs;
    int n = 0;
    json meta;
    eval.describe(meta);
    if (!probs_file.empty()) {
      std::ifstream in(probs_file);
      if (!in) throw std::invalid_argument("cannot open " + probs_file);
      double value;
      while (in >> value) probs.push_back(value);
      if (probs.empty()) throw std::invalid_argument("no probabilities in " + probs_file);
      // Without the circuit, take the scale from the mean: N ~ 1 / mean(p).
      const double mean = std::accumulate(probs.begin(), probs.end(), 0.0) / probs.size();
      n = std::max(1, static_cast<int>(std::lround(std::log2(1.0 / mean))));
      meta["probs_file"] = probs_file;
    } else {
      Circuit circuit = source.load();
      n = circuit.qubit_count();
      source.describe(meta);
      if (full) {
        probs = statevector_probabilities(circuit, eval.sim_options().statevector_cap);
      } else {
        if (t == 0) throw std::invalid_argument("need --full or --t N");
        SampleSet set = sample_outputs(circuit, t, 1, eval.seed, eval.sim_options());
        probs = set.probabilities;
      }
    }
    meta["bins"] = bins;
    meta["resamples"] = resamples;

    PTStats stats = pt_check(probs, n, bins, resamples, eval.seed);

    std::ostringstream hist;
    hist << meta_comment_lines(meta);
    hist << "bin_lo,bin_hi,count,reference_density\n";
    for (const auto& bin : stats.bins)
      hist << fmt_double(bin.lo) << "," << fmt_double(bin.hi) << "," << bin.count << ","
           << fmt_double(bin.expected) << "\n";
    write_output(prefix + ".hist.csv", hist.str());

    json doc;
    doc["meta"] = meta;
    doc["n"] = n;
    doc["samples"] = stats.samples;
    doc["ks"] = stats.ks;
    doc["entropy"] = stats.entropy;
    doc["entropy_stderr"] = stats.entropy_stderr;
    doc["porter_thomas_entropy"] = porter_thomas_constants(n).h_pt;
    if (stats.samples >= 100000)
      doc["porter_thomas"] = stats.ks < 0.01;
    else
      doc["porter_thomas"] = nullptr;
    write_output(prefix + ".stats.json", doc.dump(2) + "\n");
    return 0;
  }
};

// --- verify ----------------------------------------------------------------------

struct VerifyCmd {
  CircuitSource source;
  EvalFlags eval;
  int xs_count = 20;
  double tolerance = 1e-10;
  int ising_cap = 24;
  std::string out = "-";

  int run() const {
    Circuit circuit = source.load();
    const int n = circuit.qubit_count();
    SimOptions options = eval.sim_options();

    auto t0 = std::chrono::steady_clock::now();
    auto state = statevector_oracle(circuit, options.statevector_cap);
    const double sv_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<uint64_t> indices;
    if ((uint64_t{1} << n) <= uint64_t(xs_count)) {
      indices.resize(uint64_t{1} << n);
      std::iota(indices.begin(), indices.end(), 0);
    } else {
      std::mt19937_64 rng(derive_seed(eval.seed, 17));
      for (int i = 0; i < xs_count; ++i) indices.push_back(rng() & ((uint64_t{1} << n) - 1));
      std::sort(indices.begin(), indices.end());
      indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    }
    std::vector<BitString> xs;
    for (uint64_t i : indices) xs.push_back(bits_of_index(i, n));

    t0 = std::chrono::steady_clock::now();
    auto results = batch_probabilities(circuit, xs, options);
    const double elim_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    // Errors below the typical amplitude scale 2^{-n/2} are measured against
    // that scale so near-zero outputs do not inflate the relative error.
    const double scale = std::exp2(-0.5 * n);
    double max_abs = 0.0, max_rel = 0.0;
    int width = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (results[i].budget_rank > 0)
        throw budget_error(results[i].budget_rank, results[i].budget_bytes,
                           options.memory_budget);
      if (!results[i].ok()) throw std::runtime_error("evaluation failed: " + results[i].error);
      const cdouble ref = state[indices[i]];
      const double abs_err = std::abs(results[i].amplitude - ref);
      max_abs = std::max(max_abs, abs_err);
      max_rel = std::max(max_rel, abs_err / std::max(std::abs(ref), scale));
      width = std::max(width, results[i].width);
    }

    json doc;
    json meta;
    source.describe(meta);
    eval.describe(meta);
    meta["xs"] = xs.size();
    meta["tolerance"] = tolerance;
    doc["meta"] = meta;
    doc["qubits"] = n;
    doc["statevector"] = {{"seconds", sv_seconds}};
    doc["elimination"] = {{"seconds", elim_seconds},
                          {"max_abs_error", max_abs},
                          {"max_rel_error", max_rel},
                          {"width", width}};

    bool pass = max_rel <= tolerance;

    IsingPhaseModel ising = build_ising(circuit);
    int free_spins = 0;
    for (int d : ising.worldline) free_spins += std::max(0, d - 1);
    if (free_spins <= ising_cap) {
      t0 = std::chrono::steady_clock::now();
      double ising_rel = 0.0;
      for (size_t i = 0; i < xs.size(); ++i) {
        const cdouble a = partition_amplitude(ising, xs[i], ising_cap);
        const cdouble b = results[i].amplitude;
        ising_rel = std::max(ising_rel, std::abs(a - b) / std::max(std::abs(b), scale));
      }
      const double ising_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      doc["ising"] = {{"enabled", true},
                      {"seconds", ising_seconds},
                      {"max_rel_error", ising_rel},
                      {"free_spins", free_spins}};
      pass = pass && ising_rel <= tolerance;
    } else {
      doc["ising"] = {{"enabled", false}, {"free_spins", free_spins}};
    }

    bool has_t = false;
    for (const auto& cycle : circuit.cycles())
      for (const Gate& g : cycle) has_t = has_t || g.kind == GateKind::T;
    if (!has_t) {
      auto units = clifford_phase_profile(circuit, 10000, derive_seed(eval.seed, 23), ising_cap);
      bool even_only = true;
      for (int u : units) even_only = even_only && u % 2 == 0;
      doc["clifford_profile"] = {{"checked", true}, {"units", units}, {"even_only", even_only}};
      pass = pass && even_only;
    } else {
      doc["clifford_profile"] = {{"checked", false}};
    }

    doc["pass"] = pass;
    write_output(out, doc.dump(2) + "\n");
    if (!pass) throw VerifyMismatch("oracle comparison exceeded tolerance");
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"low-depth quantum circuits as complex graphical models"};
  app.set_version_flag("--version", std::string("ugmsim ") + kVersion);
  app.require_subcommand(1);

  GenerateCmd generate;
  auto* gen = app.add_subcommand("generate", "generate a pseudo-random grid circuit");
  gen->add_option("--rows", generate.rows, "grid rows")->required();
  gen->add_option("--cols", generate.cols, "grid columns")->required();
  gen->add_option("--depth", generate.depth, "number of cycles including the initial H layer")
      ->required();
  gen->add_option("--seed", generate.seed, "generator seed (default 1)");
  gen->add_option("-o,--out", generate.out, "output file (default stdout)");

  AmplitudeCmd amp;
  auto* amp_cmd = app.add_subcommand("amplitude", "exact output amplitudes");
  amp.source.add_options(amp_cmd);
  amp.eval.add_options(amp_cmd);
  amp_cmd->add_option("--bits", amp.bits, "output bit-strings (qubit 0 first)");
  amp_cmd->add_option("--bits-file", amp.bits_file, "file of output bit-strings");
  amp_cmd->add_flag("--all", amp.all, "evaluate every output (small circuits)");
  amp_cmd->add_option("--format", amp.format, "csv|jsonl (default csv)");
  amp_cmd->add_option("-o,--out", amp.out, "output file (default stdout)");

  WidthCmd width;
  auto* width_cmd = app.add_subcommand("width", "elimination width analysis");
  width.source.add_options(width_cmd);
  width_cmd->add_option("--depths", width.depths, "sweep generated depths lo:hi[:step]");
  width_cmd->add_option("--orderings", width.orderings,
                        "orderings to report (vertical, minfill, mindegree)")
      ->delimiter(',');
  width_cmd->add_flag("--line-graph", width.line_graph,
                      "analyze the tensor-network line graph instead");
  width_cmd->add_flag("--free-endpoints", width.free_endpoints,
                      "leave inputs and outputs unconstrained");
  width_cmd->add_option("--restarts", width.restarts, "greedy restarts (default 4)");
  width_cmd->add_option("--seed", width.seed, "tie-breaking seed");
  width_cmd->add_option("--format", width.format, "csv|json (default csv)");
  width_cmd->add_option("-o,--out", width.out, "output file (default stdout)");
  width_cmd->add_option("--dump-graph", width.dump_graph,
                        "write the interaction graph edge list to a file");
  width_cmd->add_option("--emit-ordering", width.emit_ordering,
                        "write the first computed ordering to a file (j:k lines)");

  SampleCmd sample;
  auto* sample_cmd = app.add_subcommand("sample", "sample outputs from a computed set");
  sample.source.add_options(sample_cmd);
  sample.eval.add_options(sample_cmd);
  sample_cmd->add_option("--t", sample.t, "number of distinct outputs to evaluate")->required();
  sample_cmd->add_option("--m", sample.m, "number of samples to draw")->required();
  sample_cmd->add_option("--prefix", sample.prefix, "output file prefix (default sample)");

  XebCmd xeb;
  auto* xeb_cmd = app.add_subcommand("xeb", "cross-entropy fidelity estimate");
  xeb.source.add_options(xeb_cmd);
  xeb.eval.add_options(xeb_cmd);
  xeb_cmd->add_option("--measured", xeb.measured, "file of measured bit-strings")->required();
  auto* h0_opt = xeb_cmd->add_option("--h0", xeb.h0, "uncorrelated cross entropy (default analytic)");
  auto* hi_opt = xeb_cmd->add_option("--h-ideal", xeb.h_ideal, "ideal entropy (default analytic)");
  xeb_cmd->add_option("-o,--out", xeb.out, "report file (default stdout)");

  PtCmd pt;
  auto* pt_cmd = app.add_subcommand("pt", "output probability distribution checks");
  pt.source.add_options(pt_cmd);
  pt.eval.add_options(pt_cmd);
  pt_cmd->add_flag("--full", pt.full, "use the full output distribution (dense oracle)");
  pt_cmd->add_option("--t", pt.t, "size of a sampled probability set");
  pt_cmd->add_option("--bins", pt.bins, "histogram bins (default 40)");
  pt_cmd->add_option("--resamples", pt.resamples, "bootstrap resamples (default 200)");
  pt_cmd->add_option("--probs-file", pt.probs_file, "analyze raw probabilities from a file");
  pt_cmd->add_option("--prefix", pt.prefix, "output file prefix (default pt)");

  VerifyCmd verify;
  auto* verify_cmd = app.add_subcommand("verify", "cross-check elimination against oracles");
  verify.source.add_options(verify_cmd);
  verify.eval.add_options(verify_cmd);
  verify_cmd->add_option("--xs", verify.xs_count, "number of outputs to compare (default 20)");
  verify_cmd->add_option("--tolerance", verify.tolerance, "relative tolerance (default 1e-10)");
  verify_cmd->add_option("--ising-cap", verify.ising_cap,
                         "free-spin cap for the path-sum oracle (default 24)");
  verify_cmd->add_option("-o,--out", verify.out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) return generate.run();
    if (*amp_cmd) return amp.run();
    if (*width_cmd) return width.run();
    if (*sample_cmd) return sample.run();
    if (*xeb_cmd) return xeb.run(h0_opt->count() > 0, hi_opt->count() > 0);
    if (*pt_cmd) return pt.run();
    if (*verify_cmd) return verify.run();
  } catch (const VerifyMismatch& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 4;
  } catch (const budget_error& e) {
    std::cerr << "resource budget: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
