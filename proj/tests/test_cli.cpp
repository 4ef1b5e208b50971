#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"
#include "oracles.hpp"
#include "ugm/benchmark.hpp"
#include "ugm/simulator.hpp"

using namespace ugm;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "ugmsim_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

RunResult run(const std::string& args, const std::string& env = "") {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  std::string cmd = "cd " + work_dir().string() + " && " + env + " " + UGMSIM_BIN + " " + args +
                    " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

// Splits CSV output into data rows (comment and header lines dropped).
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_skipped) {
      header_skipped = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string drop_column(const std::string& text, size_t column) {
  std::ostringstream out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') {
      std::vector<std::string> cells;
      std::istringstream cells_in(line);
      std::string cell;
      while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
      if (column < cells.size()) cells.erase(cells.begin() + column);
      for (size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << "\n";
    } else {
      out << line << "\n";
    }
  }
  return out.str();
}

const std::string kExamplePath = "example.circ";

void write_example_circuit() {
  spit(work_dir() / kExamplePath, serialize_circuit(testing::two_qubit_hadamard_cz()));
}

}  // namespace

TEST_CASE("version and usage errors") {
  CHECK(run("--version").exit_code == 0);
  CHECK(run("").exit_code == 2);
  CHECK(run("amplitude --no-such-flag").exit_code == 2);
  CHECK(run("generate --rows 2 --cols 2 --depth 0").exit_code == 2);
  CHECK(run("amplitude --rows 2 --cols 2 --depth 4").exit_code == 2);  // no bit-strings
}

TEST_CASE("generate is reproducible byte for byte") {
  auto a = run("generate --rows 3 --cols 3 --depth 9 --seed 4 -o a.circ");
  auto b = run("generate --rows 3 --cols 3 --depth 9 --seed 4 -o b.circ");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(slurp(work_dir() / "a.circ") == slurp(work_dir() / "b.circ"));
  CHECK(slurp(work_dir() / "a.circ").find("# grid 3 3") != std::string::npos);
  auto c = run("generate --rows 3 --cols 3 --depth 9 --seed 5 -o c.circ");
  CHECK(slurp(work_dir() / "a.circ") != slurp(work_dir() / "c.circ"));
}

TEST_CASE("amplitude of the worked example") {
  write_example_circuit();
  auto result = run("amplitude --circuit " + kExamplePath + " --bits 00");
  REQUIRE(result.exit_code == 0);
  auto rows = csv_rows(result.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][0] == "00");
  CHECK(std::stod(rows[0][3]) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(result.out.find("# ugmsim") != std::string::npos);
  CHECK(result.out.find("# seed") != std::string::npos);

  auto vertical = run("amplitude --circuit " + kExamplePath + " --bits 00 --ordering vertical");
  auto minfill = run("amplitude --circuit " + kExamplePath + " --bits 00 --ordering minfill");
  CHECK(csv_rows(vertical.out)[0][3] == csv_rows(minfill.out)[0][3]);

  auto all = run("amplitude --circuit " + kExamplePath + " --all --format jsonl");
  REQUIRE(all.exit_code == 0);
  std::istringstream lines(all.out);
  std::string line;
  int count = 0;
  double total = 0.0;
  while (std::getline(lines, line)) {
    auto row = nlohmann::json::parse(line);
    total += row["prob"].get<double>();
    ++count;
  }
  CHECK(count == 4);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("amplitude rows keep the request order under workers") {
  auto result = run(
      "amplitude --rows 2 --cols 3 --depth 8 --circuit-seed 2 "
      "--bits 000000 --bits 111111 --bits 010101 --workers 4");
  REQUIRE(result.exit_code == 0);
  auto rows = csv_rows(result.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0] == "000000");
  CHECK(rows[1][0] == "111111");
  CHECK(rows[2][0] == "010101");
}

TEST_CASE("amplitude reruns are identical apart from timings") {
  write_example_circuit();
  auto a = run("amplitude --circuit " + kExamplePath + " --all");
  auto b = run("amplitude --circuit " + kExamplePath + " --all");
  CHECK(drop_column(a.out, 5) == drop_column(b.out, 5));
}

TEST_CASE("imported orderings are honored") {
  write_example_circuit();
  spit(work_dir() / "order.txt", "1:1\n0:1\n");
  auto result = run("amplitude --circuit " + kExamplePath +
                    " --bits 00 --ordering-file order.txt");
  REQUIRE(result.exit_code == 0);
  CHECK(std::stod(csv_rows(result.out)[0][3]) == doctest::Approx(0.25).epsilon(1e-12));
  spit(work_dir() / "bad.txt", "0:1\n");
  CHECK(run("amplitude --circuit " + kExamplePath + " --bits 00 --ordering-file bad.txt")
            .exit_code == 2);
}

TEST_CASE("width reports both conventions and the line-graph gap") {
  write_example_circuit();
  auto direct = run("width --circuit " + kExamplePath + " --orderings minfill --restarts 8");
  REQUIRE(direct.exit_code == 0);
  auto rows = csv_rows(direct.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][4] == "minfill");
  CHECK(rows[0][7] == "2");  // max_clique of the simplified model

  auto line = run("width --circuit " + kExamplePath +
                  " --line-graph --orderings minfill --restarts 8");
  REQUIRE(line.exit_code == 0);
  CHECK(csv_rows(line.out)[0][7] == "4");

  CHECK(run("width --circuit " + kExamplePath + " --line-graph --orderings vertical")
            .exit_code == 2);

  // A single worldline is a path graph: induced width 1.
  spit(work_dir() / "chain.circ", "1\n0 h 0\n1 h 0\n2 h 0\n3 h 0\n4 h 0\n");
  auto chain = run("width --circuit chain.circ --orderings vertical");
  REQUIRE(chain.exit_code == 0);
  CHECK(csv_rows(chain.out)[0][6] == "1");

  auto sweep = run("width --rows 2 --cols 3 --depths 4:8:2 --orderings vertical");
  REQUIRE(sweep.exit_code == 0);
  CHECK(csv_rows(sweep.out).size() == 3);

  auto both = run("width --rows 2 --cols 3 --depth 6 --orderings vertical,minfill");
  REQUIRE(both.exit_code == 0);
  CHECK(csv_rows(both.out).size() == 2);
}

TEST_CASE("width exports graphs and orderings") {
  write_example_circuit();
  auto result = run("width --circuit " + kExamplePath +
                    " --orderings vertical --dump-graph graph.txt --emit-ordering order.out");
  REQUIRE(result.exit_code == 0);
  CHECK(slurp(work_dir() / "graph.txt") == "0:1 1:1\n");
  CHECK(slurp(work_dir() / "order.out") == "0:1\n1:1\n");
  // The exported ordering feeds straight back into amplitude evaluation.
  auto reuse = run("amplitude --circuit " + kExamplePath +
                   " --bits 00 --ordering-file order.out");
  REQUIRE(reuse.exit_code == 0);
  CHECK(std::stod(csv_rows(reuse.out)[0][3]) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("sample outputs are reproducible") {
  auto a = run("sample --rows 2 --cols 3 --depth 8 --circuit-seed 3 --t 32 --m 16 --seed 5 "
               "--prefix s1");
  REQUIRE(a.exit_code == 0);
  auto b = run("sample --rows 2 --cols 3 --depth 8 --circuit-seed 3 --t 32 --m 16 --seed 5 "
               "--prefix s2");
  REQUIRE(b.exit_code == 0);
  CHECK(slurp(work_dir() / "s1.samples.txt") == slurp(work_dir() / "s2.samples.txt"));
  CHECK(slurp(work_dir() / "s1.set.csv") == slurp(work_dir() / "s2.set.csv"));
  auto meta = nlohmann::json::parse(slurp(work_dir() / "s1.meta.json"));
  CHECK(meta["set_size"] == 32);
  CHECK(meta["sample_size"] == 16);
  CHECK(meta["entropy_estimate"].get<double>() > 0.0);
  CHECK(meta["total_probability"].get<double>() > 0.0);
}

TEST_CASE("sampled entropy tracks the dense oracle") {
  auto result = run("sample --rows 4 --cols 4 --depth 12 --circuit-seed 2 --t 1024 --m 4 "
                    "--seed 9 --workers 4 --prefix ent");
  REQUIRE(result.exit_code == 0);
  auto meta = nlohmann::json::parse(slurp(work_dir() / "ent.meta.json"));
  auto probs = statevector_probabilities(generate_random_circuit(4, 4, 12, 2));
  double exact = 0.0;
  for (double p : probs)
    if (p > 0.0) exact -= p * std::log(p);
  double bound = 3.0 * std::sqrt(2.0 / 1024.0) * exact;
  CHECK(std::abs(meta["entropy_estimate"].get<double>() - exact) < bound);
}

TEST_CASE("xeb recovers the mixture weight") {
  // Synthetic measurements drawn from alpha * p + (1 - alpha) * uniform.
  auto circuit = generate_random_circuit(3, 3, 14, 5);
  spit(work_dir() / "xeb.circ", serialize_circuit(circuit));
  auto probs = statevector_probabilities(circuit);
  double h = 0.0, h0 = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
    h0 -= std::log(p);
  }
  h0 /= double(probs.size());
  const size_t m = 20000;
  auto write_measured = [&](const std::string& name, double alpha, uint64_t seed) {
    std::ostringstream out;
    for (uint64_t index : sample_mixture(probs, alpha, m, seed))
      out << format_bits(bits_of_index(index, 9)) << "\n";
    spit(work_dir() / name, out.str());
  };
  write_measured("exact.txt", 1.0, 1);
  write_measured("uniform.txt", 0.0, 2);
  write_measured("mixed.txt", 0.5, 3);

  char constants[128];
  std::snprintf(constants, sizeof constants, "--h0 %.17g --h-ideal %.17g", h0, h);
  for (auto [file, alpha] :
       std::vector<std::pair<std::string, double>>{{"exact.txt", 1.0},
                                                   {"uniform.txt", 0.0},
                                                   {"mixed.txt", 0.5}}) {
    auto result = run("xeb --circuit xeb.circ --measured " + file + " " + constants +
                      " --workers 4 -o report.json");
    REQUIRE(result.exit_code == 0);
    auto report = nlohmann::json::parse(slurp(work_dir() / "report.json"));
    CHECK(report["m"] == m);
    const double got = report["alpha"].get<double>();
    const double se = report["stderr_alpha"].get<double>();
    CHECK(std::abs(got - alpha) < 3.5 * se);
  }
}

TEST_CASE("pt analyzes a raw probability file") {
  std::mt19937_64 rng(3);
  std::ostringstream fixture;
  const int n = 20;
  for (int i = 0; i < 200000; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12e\n", -std::log(1.0 - uniform_double(rng)) / std::exp2(n));
    fixture << buf;
  }
  spit(work_dir() / "exp.txt", fixture.str());
  auto result = run("pt --probs-file exp.txt --bins 30 --resamples 50 --prefix ptexp");
  REQUIRE(result.exit_code == 0);
  auto stats = nlohmann::json::parse(slurp(work_dir() / "ptexp.stats.json"));
  CHECK(stats["ks"].get<double>() < 0.01);
  CHECK(stats["porter_thomas"] == true);
  CHECK(slurp(work_dir() / "ptexp.hist.csv").find("bin_lo,bin_hi,count,reference_density") !=
        std::string::npos);
}

TEST_CASE("pt works on whole circuits") {
  auto result =
      run("pt --rows 2 --cols 3 --depth 10 --circuit-seed 6 --full --resamples 50 --prefix ptc");
  REQUIRE(result.exit_code == 0);
  auto stats = nlohmann::json::parse(slurp(work_dir() / "ptc.stats.json"));
  CHECK(stats["samples"] == 64);
  CHECK(stats["porter_thomas"].is_null());  // too few samples for a verdict
}

TEST_CASE("verify passes on a well-formed circuit and reports oracles") {
  auto result = run("verify --rows 2 --cols 3 --depth 8 --circuit-seed 2 -o verify.json");
  REQUIRE(result.exit_code == 0);
  auto report = nlohmann::json::parse(slurp(work_dir() / "verify.json"));
  CHECK(report["pass"] == true);
  CHECK(report["elimination"]["max_rel_error"].get<double>() < 1e-10);
  CHECK(report["ising"]["enabled"] == true);
  CHECK(report["statevector"]["seconds"].is_number());
}

TEST_CASE("verify flags clifford-only phase profiles") {
  // All gates Clifford: profile restricted to even quarter-turn units.
  std::ostringstream text;
  text << "6\n# grid 2 3\n";
  for (int q = 0; q < 6; ++q) text << "0 h " << q << "\n";
  text << "1 cz 0 1\n2 x_1_2 0\n2 x_1_2 1\n3 cz 4 5\n4 y_1_2 4\n";
  spit(work_dir() / "clifford.circ", text.str());
  auto result = run("verify --circuit clifford.circ -o clifford.json");
  REQUIRE(result.exit_code == 0);
  auto report = nlohmann::json::parse(slurp(work_dir() / "clifford.json"));
  CHECK(report["clifford_profile"]["checked"] == true);
  CHECK(report["clifford_profile"]["even_only"] == true);
}

TEST_CASE("verify signals mismatches through exit code 4") {
  auto result = run("verify --rows 3 --cols 3 --depth 10 --circuit-seed 1 --tolerance 0");
  CHECK(result.exit_code == 4);
}

TEST_CASE("reports are byte-identical across reruns") {
  auto w1 = run("width --rows 3 --cols 3 --depths 4:10:3 --orderings vertical,minfill "
                "--seed 3 -o w1.csv");
  auto w2 = run("width --rows 3 --cols 3 --depths 4:10:3 --orderings vertical,minfill "
                "--seed 3 -o w2.csv");
  REQUIRE(w1.exit_code == 0);
  REQUIRE(w2.exit_code == 0);
  CHECK(slurp(work_dir() / "w1.csv") == slurp(work_dir() / "w2.csv"));

  auto p1 = run("pt --rows 2 --cols 3 --depth 8 --circuit-seed 4 --full --resamples 50 "
                "--seed 5 --prefix r1");
  auto p2 = run("pt --rows 2 --cols 3 --depth 8 --circuit-seed 4 --full --resamples 50 "
                "--seed 5 --prefix r2");
  REQUIRE(p1.exit_code == 0);
  REQUIRE(p2.exit_code == 0);
  CHECK(slurp(work_dir() / "r1.hist.csv") == slurp(work_dir() / "r2.hist.csv"));
  CHECK(slurp(work_dir() / "r1.stats.json") == slurp(work_dir() / "r2.stats.json"));

  write_example_circuit();
  spit(work_dir() / "meas.txt", "00\n01\n11\n");
  auto x1 = run("xeb --circuit " + kExamplePath + " --measured meas.txt -o x1.json");
  auto x2 = run("xeb --circuit " + kExamplePath + " --measured meas.txt -o x2.json");
  REQUIRE(x1.exit_code == 0);
  CHECK(slurp(work_dir() / "x1.json") == slurp(work_dir() / "x2.json"));
}

TEST_CASE("generated files start with the qubit count") {
  auto result = run("generate --rows 2 --cols 2 --depth 3 --seed 1 -o head.circ");
  REQUIRE(result.exit_code == 0);
  auto text = slurp(work_dir() / "head.circ");
  CHECK(text.rfind("4\n#", 0) == 0);
}

TEST_CASE("budget aborts propagate out of sampling") {
  auto result = run("sample --rows 4 --cols 4 --depth 16 --circuit-seed 1 --t 4 --m 2 "
                    "--memory-budget 2k --prefix bad");
  CHECK(result.exit_code == 3);
}

TEST_CASE("memory budgets abort with exit code 3") {
  auto flag = run("amplitude --rows 4 --cols 4 --depth 16 --circuit-seed 1 --bits "
                  "0000000000000000 --memory-budget 2k");
  CHECK(flag.exit_code == 3);
  auto env = run("amplitude --rows 4 --cols 4 --depth 16 --circuit-seed 1 --bits "
                 "0000000000000000",
                 "UGMSIM_MEMORY_BUDGET=2k");
  CHECK(env.exit_code == 3);
}
