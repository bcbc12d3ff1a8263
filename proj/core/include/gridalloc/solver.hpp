// Copyright 2026 the gridalloc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GRIDALLOC_SOLVER_HPP_
#define GRIDALLOC_SOLVER_HPP_

#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace gridalloc {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Column/row description of one LP or MILP. Rows are ranged
/// (lb <= a'x <= ub); equalities set lb == ub.
struct LinearModel {
  enum class Sense { kMinimize, kMaximize };

  Sense sense = Sense::kMaximize;
  double offset = 0.0;  // constant added to the reported objective

  std::vector<double> col_lower, col_upper, col_obj;
  std::vector<bool> col_integer;
  std::vector<std::string> col_name;

  std::vector<double> row_lower, row_upper;
  std::vector<std::string> row_name;

  // Coefficients as triplets; duplicates are not allowed.
  std::vector<int> entry_row, entry_col;
  std::vector<double> entry_value;

  int num_cols() const { return static_cast<int>(col_obj.size()); }
  int num_rows() const { return static_cast<int>(row_lower.size()); }
  int num_integers() const;

  int add_col(double lb, double ub, double obj, bool integer,
              std::string name);
  int add_row(double lb, double ub, std::string name);
  void add_entry(int row, int col, double value);
};

struct SolveOptions {
  double mip_gap = 0.005;     // relative
  double time_limit_s = kInf;
  int threads = 1;            // 1 keeps runs reproducible
  int random_seed = 0;
  bool log_to_console = false;
};

enum class SolveStatus {
  kOptimal,      // optimal LP, or MILP within the requested gap
  kInfeasible,
  kUnbounded,
  kTimeLimit,
  kError,
};

/// Duals follow the shadow-price convention: row_dual[r] is the change in
/// the model objective (in the model's own sense) per unit increase of the
/// binding row bound. col_dual holds reduced costs in the same convention.
struct SolverSolution {
  SolveStatus status = SolveStatus::kError;
  double objective = 0.0;
  double best_bound = 0.0;  // MILP dual bound; equals objective for LPs
  std::vector<double> col_value;
  std::vector<double> col_dual;
  std::vector<double> row_dual;
  bool has_duals = false;
  std::string basis_id;  // hash of the optimal basis, empty without duals
  std::string message;
};

/// Narrow backend contract so any LP/MILP engine can be bound: take a
/// finished model, solve, report primal values, LP row duals, and the
/// proved bound.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual SolverSolution solve(const LinearModel& model,
                               const SolveOptions& options) = 0;
  /// Whether independent solves may run concurrently in one process.
  virtual bool supports_concurrent_solves() const = 0;
  virtual std::string name() const = 0;
  /// Export in standard LP/MPS text format (chosen by file extension).
  virtual void write_model(const LinearModel& model,
                           const std::string& path) = 0;
};

std::unique_ptr<SolverBackend> make_highs_backend();

}  // namespace gridalloc

#endif  // GRIDALLOC_SOLVER_HPP_
