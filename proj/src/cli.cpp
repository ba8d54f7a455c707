#include "ebvariant/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "ebvariant/baselines.hpp"
#include "ebvariant/benchmark.hpp"
#include "ebvariant/data_io.hpp"
#include "ebvariant/embayes.hpp"
#include "ebvariant/errors.hpp"
#include "ebvariant/evaluation.hpp"
#include "ebvariant/moments.hpp"
#include "ebvariant/parallel.hpp"
#include "ebvariant/simulator.hpp"

namespace ebvariant {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DesignFlags {
  int pools = 5;
  int pool_size = 20;
  double error_rate = 0.01;

  PoolDesign design() const {
    PoolDesign d{pools, pool_size, error_rate};
    try {
      d.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return d;
  }
};

void add_design_flags(CLI::App* cmd, DesignFlags& f) {
  cmd->add_option("--pools", f.pools, "Number of pools M")->capture_default_str();
  cmd->add_option("--pool-size", f.pool_size, "Haploids per pool N")->capture_default_str();
  cmd->add_option("--error-rate", f.error_rate, "Sequencing error rate")->capture_default_str();
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

// Writes to `path`, or to `fallback` when path is "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct GridFlags {
  std::string preset;
  std::vector<double> pi1;
  std::vector<double> a;
  std::size_t p = 200000;
  std::size_t replications = 20;
  std::uint64_t seed = 1;
  double coverage_mean = 30.0;
  double coverage_shape = 3.0;

  std::vector<GridCell> cells() const {
    if (!preset.empty()) {
      if (preset != "table1") throw UsageError("unknown preset '" + preset + "'");
      if (!pi1.empty() || !a.empty()) throw UsageError("--preset excludes --pi1/--a");
      return table1_grid();
    }
    if (pi1.empty() || a.empty()) throw UsageError("give --preset or both --pi1 and --a");
    std::vector<GridCell> out;
    for (double x : pi1)
      for (double y : a) out.push_back({x, y});
    return out;
  }
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--preset", g.preset, "Named grid (table1)");
  cmd->add_option("--pi1", g.pi1, "Comma-separated variant proportions")->delimiter(',');
  cmd->add_option("--a", g.a, "Comma-separated MAF prior bounds")->delimiter(',');
  cmd->add_option("--p", g.p, "Sites per replication")->capture_default_str();
  cmd->add_option("--replications", g.replications, "Replications per cell")
      ->capture_default_str();
  cmd->add_option("--seed", g.seed, "Base random seed")->capture_default_str();
  cmd->add_option("--coverage-mean", g.coverage_mean)->capture_default_str();
  cmd->add_option("--coverage-shape", g.coverage_shape)->capture_default_str();
}

BenchmarkConfig make_benchmark_config(const GridFlags& g, const DesignFlags& d,
                                      const std::string& methods, double alpha, int threads) {
  BenchmarkConfig cfg;
  cfg.base.p = g.p;
  cfg.base.design = d.design();
  cfg.base.replications = g.replications;
  cfg.base.seed = g.seed;
  cfg.base.coverage_mean = g.coverage_mean;
  cfg.base.coverage_shape = g.coverage_shape;
  cfg.alpha = alpha;
  cfg.threads = threads;
  try {
    cfg.methods = parse_methods(methods);
    for (const auto& cell : g.cells()) {
      SimulationSpec s = cfg.base;
      s.pi1 = cell.pi1;
      s.a = cell.a;
      s.validate();
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Empirical Bayes variant calling for pooled sequencing counts", "ebvariant"};
  app.require_subcommand(1);

  std::optional<int> threads_flag;
  app.add_option("--threads", threads_flag,
                 "Worker threads (default: EBVARIANT_THREADS or all cores)");

  // call
  auto* call = app.add_subcommand("call", "Call variants from a count table");
  std::string call_input, call_output, call_gold;
  DesignFlags call_design;
  double call_alpha = 0.05;
  std::optional<double> oracle_pi1, oracle_a, fixed_pi1, fixed_a;
  call->add_option("--input", call_input, "Count table (TSV)")->required();
  call->add_option("--output", call_output, "Call set file, '-' for stdout")->required();
  add_design_flags(call, call_design);
  call->add_option("--alpha", call_alpha, "Nominal Bayes FDR level")->capture_default_str();
  call->add_option("--oracle-pi1", oracle_pi1, "Known variant proportion");
  call->add_option("--oracle-a", oracle_a, "Known MAF prior bound");
  call->add_option("--fixed-pi1", fixed_pi1, "User-chosen variant proportion");
  call->add_option("--fixed-a", fixed_a, "User-chosen MAF prior bound");
  call->add_option("--gold", call_gold, "Gold-standard TSV (site_id, is_variant)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Simulate pooled count data");
  SimulationSpec sim_spec;
  DesignFlags sim_design;
  std::string sim_prefix;
  std::size_t sim_rep = 0;
  sim->add_option("--p", sim_spec.p, "Number of sites")->required();
  add_design_flags(sim, sim_design);
  sim->add_option("--pi1", sim_spec.pi1)->capture_default_str();
  sim->add_option("--a", sim_spec.a)->capture_default_str();
  sim->add_option("--coverage-mean", sim_spec.coverage_mean)->capture_default_str();
  sim->add_option("--coverage-shape", sim_spec.coverage_shape)->capture_default_str();
  sim->add_option("--seed", sim_spec.seed)->capture_default_str();
  sim->add_option("--replication", sim_rep, "Replication index")->capture_default_str();
  sim->add_option("--out-prefix", sim_prefix, "Writes PREFIX.counts.tsv and PREFIX.truth.tsv")
      ->required();

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Power and FDR comparison on simulated data");
  GridFlags bench_grid;
  DesignFlags bench_design;
  std::string bench_methods = "embayes,oracle,snver";
  std::string bench_out = "-";
  double bench_alpha = 0.05;
  add_grid_flags(bench, bench_grid);
  add_design_flags(bench, bench_design);
  bench->add_option("--methods", bench_methods)->capture_default_str();
  bench->add_option("--alpha", bench_alpha)->capture_default_str();
  bench->add_option("--out", bench_out, "Output TSV, '-' for stdout")->capture_default_str();

  // roc
  auto* roc = app.add_subcommand("roc", "Ranking ROC curves on simulated data");
  GridFlags roc_grid;
  DesignFlags roc_design;
  std::string roc_methods = "embayes,oracle,snver,meta";
  std::string roc_out = "-";
  std::size_t roc_max_calls = 10000;
  add_grid_flags(roc, roc_grid);
  add_design_flags(roc, roc_design);
  roc->add_option("--methods", roc_methods)->capture_default_str();
  roc->add_option("--max-calls", roc_max_calls)->capture_default_str();
  roc->add_option("--out", roc_out, "Output TSV, '-' for stdout")->capture_default_str();

  // estimate
  auto* est = app.add_subcommand("estimate", "Moment estimates of the hyperparameters");
  std::string est_input;
  DesignFlags est_design;
  est->add_option("--input", est_input, "Count table (TSV)")->required();
  add_design_flags(est, est_design);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (threads_flag && *threads_flag < 1) throw UsageError("--threads must be >= 1");
    const int threads = resolve_threads(threads_flag);

    if (*call) {
      check_alpha(call_alpha);
      const PoolDesign design = call_design.design();
      PipelineMode mode = PipelineMode::empirical();
      const bool oracle = oracle_pi1 || oracle_a;
      const bool fixed = fixed_pi1 || fixed_a;
      if (oracle && fixed) throw UsageError("oracle and fixed hyperparameters are exclusive");
      if (oracle || fixed) {
        const auto& pi1 = oracle ? oracle_pi1 : fixed_pi1;
        const auto& a = oracle ? oracle_a : fixed_a;
        if (!pi1 || !a) throw UsageError("both pi1 and a must be given");
        const auto h = Hyperparameters::from_pi1(*pi1, *a);
        try {
          h.validate();
        } catch (const DomainError& e) {
          throw UsageError(e.what());
        }
        mode = oracle ? PipelineMode::oracle(h) : PipelineMode::fixed(h);
      }
      std::optional<std::unordered_map<std::string, bool>> gold;
      if (!call_gold.empty()) {
        auto gin = open_input(call_gold);
        gold = read_gold(gin);
      }
      auto in = open_input(call_input);
      const SiteCountMatrix data = read_counts(in, design.pools);
      const auto result = call_pipeline(data, design, call_alpha, mode, threads);
      Output o(call_output, out);
      write_calls(o.get(), result.calls, result.scores, data.site_ids());

      const auto& h = *result.calls.hyper_used;
      char buf[256];
      std::snprintf(buf, sizeof buf, "rejected=%zu pi1=%.6g a=%.6g attained_bfdr=%.6g\n",
                    result.calls.num_rejected, h.pi1, h.a, result.calls.attained_bfdr);
      err << buf;
      if (result.calls.estimate && (result.calls.estimate->truncated_a ||
                                    result.calls.estimate->truncated_pi1))
        err << "note: moment estimates were truncated\n";
      if (gold) {
        const auto g = gold_standard_fdr(result.calls, data.site_ids(), *gold);
        err << "gold: tp=" << g.true_positives << " fp=" << g.false_positives
            << " other=" << g.other << " fdr=";
        if (g.fdr)
          err << *g.fdr << '\n';
        else
          err << "NA\n";
      }
      return kExitOk;
    }

    if (*sim) {
      sim_spec.design = sim_design.design();
      sim_spec.replications = sim_rep + 1;
      try {
        sim_spec.validate();
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
      const auto data = simulate(sim_spec, sim_rep, threads);
      Output counts(sim_prefix + ".counts.tsv", out);
      write_counts(counts.get(), data.counts);
      Output truth(sim_prefix + ".truth.tsv", out);
      write_truth(truth.get(), data.truth, data.counts.site_ids());
      err << "sites=" << data.counts.sites() << " variants=" << data.truth.nonnulls() << '\n';
      return kExitOk;
    }

    if (*bench) {
      check_alpha(bench_alpha);
      const auto cfg = make_benchmark_config(bench_grid, bench_design, bench_methods,
                                             bench_alpha, threads);
      std::vector<MethodOutcome> rows;
      for (const auto& cell : bench_grid.cells()) {
        auto r = run_benchmark_cell(cfg, cell);
        rows.insert(rows.end(), r.begin(), r.end());
      }
      Output o(bench_out, out);
      write_benchmark_table(o.get(), rows);
      return kExitOk;
    }

    if (*roc) {
      if (roc_max_calls == 0) throw UsageError("--max-calls must be >= 1");
      auto cfg = make_benchmark_config(roc_grid, roc_design, roc_methods, 0.05, threads);
      cfg.roc_max_calls = roc_max_calls;
      std::vector<MethodOutcome> rows;
      for (const auto& cell : roc_grid.cells()) {
        auto r = run_benchmark_cell(cfg, cell);
        rows.insert(rows.end(), r.begin(), r.end());
      }
      Output o(roc_out, out);
      write_roc_table(o.get(), rows);
      return kExitOk;
    }

    if (*est) {
      const PoolDesign design = est_design.design();
      auto in = open_input(est_input);
      const SiteCountMatrix data = read_counts(in, design.pools);
      const auto m = compute_moments(data, design, threads);
      const auto e = estimate_hyperparameters(m, design);
      char buf[512];
      std::snprintf(buf, sizeof buf,
                    "m1\t%.10g\nm2\t%.10g\nn_terms\t%zu\nexcluded\t%zu\n"
                    "raw_pi1\t%.10g\nraw_a\t%.10g\npi0\t%.10g\npi1\t%.10g\na\t%.10g\n"
                    "truncated_pi1\t%d\ntruncated_a\t%d\nclamped_pi1\t%d\nclamped_a\t%d\n",
                    m.m1, m.m2, m.n_terms, m.excluded, e.raw_pi1, e.raw_a, e.hyper.pi0,
                    e.hyper.pi1, e.hyper.a, int(e.truncated_pi1), int(e.truncated_a),
                    int(e.clamped_pi1), int(e.clamped_a));
      out << buf;
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EstimationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const UnsupportedDesign& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace ebvariant
