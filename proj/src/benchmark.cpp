#include "ebvariant/benchmark.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "ebvariant/baselines.hpp"
#include "ebvariant/embayes.hpp"
#include "ebvariant/errors.hpp"

namespace ebvariant {

std::string to_string(Method method) {
  switch (method) {
    case Method::kEmBayes: return "embayes";
    case Method::kOracle: return "oracle";
    case Method::kSnver: return "snver";
    case Method::kMeta: return "meta";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::kEmBayes, Method::kOracle, Method::kSnver, Method::kMeta})
    if (to_string(m) == name) return m;
  throw DomainError("unknown method '" + name + "'");
}

std::vector<Method> parse_methods(const std::string& comma_list) {
  std::vector<Method> out;
  std::stringstream ss(comma_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const Method m = parse_method(item);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw DomainError("no methods given");
  return out;
}

std::vector<GridCell> table1_grid() {
  std::vector<GridCell> grid;
  for (double pi1 : {0.01, 0.007, 0.004, 0.001})
    for (double a : {0.01, 0.02}) grid.push_back({pi1, a});
  return grid;
}

std::vector<MethodOutcome> run_benchmark_cell(const BenchmarkConfig& config,
                                              const GridCell& cell) {
  SimulationSpec spec = config.base;
  spec.pi1 = cell.pi1;
  spec.a = cell.a;
  spec.validate();

  const std::size_t nm = config.methods.size();
  std::vector<MethodOutcome> out(nm);
  std::vector<RocAccumulator> roc;
  for (std::size_t m = 0; m < nm; ++m) {
    out[m].method = config.methods[m];
    out[m].cell = cell;
    out[m].p = spec.p;
    if (config.roc_max_calls) roc.emplace_back(config.roc_max_calls);
  }

  const auto oracle = Hyperparameters::from_pi1(cell.pi1, cell.a);
  for (std::size_t rep = 0; rep < spec.replications; ++rep) {
    const SimulatedData data = simulate(spec, rep, config.threads);
    for (std::size_t m = 0; m < nm; ++m) {
      CallSet calls;
      std::vector<double> ranking;
      switch (config.methods[m]) {
        case Method::kEmBayes:
        case Method::kOracle: {
          const auto mode = config.methods[m] == Method::kOracle ? PipelineMode::oracle(oracle)
                                                                 : PipelineMode::empirical();
          auto r = call_pipeline(data.counts, spec.design, config.alpha, mode, config.threads);
          calls = std::move(r.calls);
          ranking = std::move(r.scores);
          break;
        }
        case Method::kSnver:
        case Method::kMeta: {
          auto r = config.methods[m] == Method::kSnver
                       ? snver_call(data.counts, spec.design, config.alpha, config.threads)
                       : meta_call(data.counts, spec.design, config.alpha, config.threads);
          calls = std::move(r.calls);
          ranking = std::move(r.pvalues);
          break;
        }
      }
      out[m].per_replication.push_back(score_callset(calls, data.truth));
      if (!roc.empty()) roc[m].add(ranking, data.truth.mu);
    }
  }
  for (std::size_t m = 0; m < nm; ++m) {
    out[m].report = aggregate_replications(out[m].per_replication);
    if (!roc.empty()) out[m].roc = roc[m].curve();
  }
  return out;
}

void write_benchmark_table(std::ostream& out, const std::vector<MethodOutcome>& rows) {
  out << "#format=ebvariant.v1\n";
  out << "method\tpi1\ta\tp\treplications\tER\tEV\tFDR\tFNR\tsensitivity\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s\t%.6g\t%.6g\t%zu\t%zu\t%.6g\t%.6g\t%.6g\t%.6g\t%.6g\n",
                  to_string(r.method).c_str(), r.cell.pi1, r.cell.a, r.p,
                  r.report.replications, r.report.ER, r.report.EV, r.report.FDR, r.report.FNR,
                  r.report.sensitivity);
    out << buf;
  }
}

void write_roc_table(std::ostream& out, const std::vector<MethodOutcome>& rows) {
  out << "#format=ebvariant.v1\n";
  out << "pi1\ta\tmethod\tk\tfdr\tsensitivity\n";
  char buf[256];
  for (const auto& r : rows) {
    for (const auto& pt : r.roc) {
      std::snprintf(buf, sizeof buf, "%.6g\t%.6g\t%s\t%zu\t%.6g\t%.6g\n", r.cell.pi1, r.cell.a,
                    to_string(r.method).c_str(), pt.k, pt.fdr, pt.sensitivity);
      out << buf;
    }
  }
}

}  // namespace ebvariant
