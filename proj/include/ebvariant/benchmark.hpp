#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ebvariant/evaluation.hpp"
#include "ebvariant/simulator.hpp"

namespace ebvariant {

enum class Method { kEmBayes, kOracle, kSnver, kMeta };

std::string to_string(Method method);
// Accepts embayes, oracle, snver, meta. Throws DomainError otherwise.
Method parse_method(const std::string& name);
std::vector<Method> parse_methods(const std::string& comma_list);

struct GridCell {
  double pi1 = 0.0;
  double a = 0.0;
};

// The (pi1, a) settings tabulated in the published power comparison.
std::vector<GridCell> table1_grid();

struct BenchmarkConfig {
  SimulationSpec base;  // pi1 and a are overridden per grid cell
  std::vector<Method> methods{Method::kEmBayes, Method::kOracle, Method::kSnver};
  double alpha = 0.05;
  std::size_t roc_max_calls = 0;  // 0 disables ROC accumulation
  int threads = 1;
};

struct MethodOutcome {
  Method method = Method::kEmBayes;
  GridCell cell;
  std::size_t p = 0;
  EvaluationReport report;
  RocCurve roc;
  std::vector<ConfusionCounts> per_replication;
};

// Simulates base.replications datasets for one cell and evaluates each
// requested method on every dataset.
std::vector<MethodOutcome> run_benchmark_cell(const BenchmarkConfig& config,
                                              const GridCell& cell);

// method, pi1, a, p, replications, ER, EV, FDR, FNR, sensitivity
void write_benchmark_table(std::ostream& out, const std::vector<MethodOutcome>& rows);
// pi1, a, method, k, fdr, sensitivity
void write_roc_table(std::ostream& out, const std::vector<MethodOutcome>& rows);

}  // namespace ebvariant
