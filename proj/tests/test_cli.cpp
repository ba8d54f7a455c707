#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ebvariant/cli.hpp"
#include "ebvariant/data_io.hpp"
#include "ebvariant/simulator.hpp"

using namespace ebvariant;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("ebvariant_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string simulated_counts(std::size_t p, double pi1, int pools = 5) {
  SimulationSpec spec;
  spec.p = p;
  spec.pi1 = pi1;
  spec.a = 0.05;
  spec.design.pools = pools;
  spec.seed = 3;
  std::ostringstream os;
  write_counts(os, simulate(spec).counts);
  return os.str();
}

}  // namespace

TEST_CASE("call writes a call set and a summary") {
  const auto input = write_file("sim.tsv", simulated_counts(5000, 0.02));
  const auto r = run({"call", "--input", input, "--output", "-"});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("rejected=") != std::string::npos);
  std::istringstream in(r.out);
  const auto calls = read_calls(in);
  CHECK(calls.site_ids.size() == 5000);
  CHECK(calls.metadata.at("mode") == "empirical");

  const auto to_file = (scratch() / "calls.tsv").string();
  CHECK(run({"call", "--input", input, "--output", to_file}).code == kExitOk);
  std::ifstream f(to_file);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == r.out);
}

TEST_CASE("oracle and fixed hyperparameters") {
  const auto input = write_file("sim2.tsv", simulated_counts(2000, 0.02));
  const auto oracle = run({"call", "--input", input, "--output", "-", "--oracle-pi1", "0.02",
                           "--oracle-a", "0.05"});
  CHECK(oracle.code == kExitOk);
  CHECK(oracle.out.find("#mode=oracle") != std::string::npos);
  CHECK(oracle.out.find("#raw_pi1") == std::string::npos);
  const auto fixed =
      run({"call", "--input", input, "--output", "-", "--fixed-pi1", "0.02", "--fixed-a", "0.05"});
  CHECK(fixed.code == kExitOk);
  CHECK(fixed.out.find("#mode=fixed") != std::string::npos);
  CHECK(run({"call", "--input", input, "--output", "-", "--oracle-pi1", "0.02"}).code ==
        kExitUsage);
  CHECK(run({"call", "--input", input, "--output", "-", "--oracle-pi1", "0.02", "--oracle-a",
             "0.05", "--fixed-pi1", "0.1", "--fixed-a", "0.1"})
            .code == kExitUsage);
  CHECK(run({"call", "--input", input, "--output", "-", "--oracle-pi1", "0.02", "--oracle-a",
             "1.5"})
            .code == kExitUsage);
}

TEST_CASE("usage and input errors exit 2") {
  const auto input = write_file("sim3.tsv", simulated_counts(200, 0.02));
  CHECK(run({"call", "--input", input, "--output", "-", "--alpha", "0"}).code == kExitUsage);
  CHECK(run({"call", "--input", input, "--output", "-", "--alpha", "1"}).code == kExitUsage);
  CHECK(run({"call", "--input", (scratch() / "absent.tsv").string(), "--output", "-"}).code ==
        kExitUsage);
  const auto bad = write_file("bad.tsv", "site_id\tpool_id\tdepth\talt_count\ns\t1\t2\t3\n");
  const auto r = run({"call", "--input", bad, "--output", "-"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"call", "--output", "-"}).code == kExitUsage);
  CHECK(run({"--threads", "0", "call", "--input", input, "--output", "-"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("estimation failures exit 3") {
  std::string text = "site_id\tpool_id\tdepth\talt_count\n";
  for (int i = 0; i < 20; ++i)
    for (int j = 1; j <= 5; ++j) text += "s" + std::to_string(i) + "\t" + std::to_string(j) + "\t1\t0\n";
  const auto ones = write_file("ones.tsv", text);
  CHECK(run({"call", "--input", ones, "--output", "-"}).code == kExitData);
  CHECK(run({"estimate", "--input", ones}).code == kExitData);

  const auto input = write_file("sim4.tsv", simulated_counts(500, 0.02));
  CHECK(run({"call", "--input", input, "--output", "-", "--pool-size", "1"}).code == kExitData);
  CHECK(run({"call", "--input", input, "--output", "-", "--pool-size", "1", "--oracle-pi1",
             "0.02", "--oracle-a", "0.05"})
            .code == kExitOk);
}

TEST_CASE("gold-standard summary") {
  const auto input = write_file("two.tsv",
                                "site_id\tpool_id\tdepth\talt_count\n"
                                "v\t1\t50\t20\nv\t2\t50\t18\n"
                                "r\t1\t50\t0\nr\t2\t50\t0\n");
  const auto gold = write_file("gold.tsv", "site_id\tis_variant\nv\t1\nr\t0\n");
  const auto r = run({"call", "--input", input, "--output", "-", "--pools", "2", "--oracle-pi1",
                      "0.1", "--oracle-a", "0.5", "--gold", gold});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("gold: tp=1 fp=0 other=0 fdr=0") != std::string::npos);
}

TEST_CASE("simulate writes counts and truth") {
  const auto prefix = (scratch() / "simout").string();
  const auto r = run({"simulate", "--p", "300", "--pi1", "0.1", "--seed", "4", "--out-prefix", prefix});
  CHECK(r.code == kExitOk);
  std::ifstream counts(prefix + ".counts.tsv");
  CHECK(read_counts(counts, 5).sites() == 300);
  std::ifstream truth(prefix + ".truth.tsv");
  std::string header;
  std::getline(truth, header);
  if (header[0] == '#') std::getline(truth, header);
  CHECK(header.rfind("site_id\tmu\ttheta_1", 0) == 0);
  CHECK(run({"simulate", "--p", "10", "--pi1", "1.0", "--out-prefix", prefix}).code == kExitUsage);
}

TEST_CASE("benchmark and roc tables; threads leave bytes unchanged") {
  const std::vector<std::string> bench{"benchmark", "--pi1", "0.01", "--a", "0.02", "--p", "3000",
                                       "--replications", "2", "--methods", "embayes,snver,meta",
                                       "--out", "-"};
  auto with_threads = [](std::vector<std::string> a, const char* t) {
    a.insert(a.begin(), {"--threads", t});
    return a;
  };
  const auto b1 = run(with_threads(bench, "1"));
  const auto b4 = run(with_threads(bench, "4"));
  CHECK(b1.code == kExitOk);
  CHECK(b1.out == b4.out);
  CHECK(b1.out.find("method\tpi1\ta\tp\treplications\tER\tEV\tFDR\tFNR\tsensitivity") !=
        std::string::npos);
  CHECK(std::count(b1.out.begin(), b1.out.end(), '\n') == 2 + 3);

  const std::vector<std::string> roc{"roc", "--pi1", "0.01", "--a", "0.02", "--p", "2000",
                                     "--replications", "2", "--max-calls", "25", "--out", "-"};
  const auto r1 = run(with_threads(roc, "1"));
  const auto r3 = run(with_threads(roc, "3"));
  CHECK(r1.code == kExitOk);
  CHECK(r1.out == r3.out);
  CHECK(r1.out.find("pi1\ta\tmethod\tk\tfdr\tsensitivity") != std::string::npos);
  CHECK(std::count(r1.out.begin(), r1.out.end(), '\n') == 2 + 4 * 25);

  CHECK(run({"benchmark", "--preset", "nope", "--out", "-"}).code == kExitUsage);
  CHECK(run({"benchmark", "--pi1", "0.01", "--a", "0.02", "--p", "100", "--methods", "magic",
             "--out", "-"})
            .code == kExitUsage);
}

TEST_CASE("estimate prints moment summaries") {
  const auto input = write_file("sim5.tsv", simulated_counts(3000, 0.05));
  const auto r = run({"estimate", "--input", input});
  CHECK(r.code == kExitOk);
  for (const char* key : {"m1\t", "m2\t", "raw_pi1\t", "pi1\t", "a\t", "truncated_a\t"})
    CHECK(r.out.find(key) != std::string::npos);
}
