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

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "Highs.h"
#include "gridalloc/solver.hpp"

namespace gridalloc {

int LinearModel::num_integers() const {
  return static_cast<int>(
      std::count(col_integer.begin(), col_integer.end(), true));
}

int LinearModel::add_col(double lb, double ub, double obj, bool integer,
                         std::string name) {
  col_lower.push_back(lb);
  col_upper.push_back(ub);
  col_obj.push_back(obj);
  col_integer.push_back(integer);
  col_name.push_back(std::move(name));
  return num_cols() - 1;
}

int LinearModel::add_row(double lb, double ub, std::string name) {
  row_lower.push_back(lb);
  row_upper.push_back(ub);
  row_name.push_back(std::move(name));
  return num_rows() - 1;
}

void LinearModel::add_entry(int row, int col, double value) {
  entry_row.push_back(row);
  entry_col.push_back(col);
  entry_value.push_back(value);
}

namespace {

HighsModel to_highs(const LinearModel& m) {
  HighsModel hm;
  HighsLp& lp = hm.lp_;
  lp.num_col_ = m.num_cols();
  lp.num_row_ = m.num_rows();
  lp.sense_ = m.sense == LinearModel::Sense::kMaximize ? ObjSense::kMaximize
                                                       : ObjSense::kMinimize;
  // The constant term stays out of the solver objective so the relative MIP
  // gap is measured against the decision-dependent part; it is added back to
  // the reported objective after the solve.
  lp.offset_ = 0.0;
  lp.col_cost_ = m.col_obj;
  lp.col_lower_ = m.col_lower;
  lp.col_upper_ = m.col_upper;
  lp.row_lower_ = m.row_lower;
  lp.row_upper_ = m.row_upper;
  lp.col_names_ = m.col_name;
  lp.row_names_ = m.row_name;
  if (m.num_integers() > 0) {
    lp.integrality_.resize(lp.num_col_, HighsVarType::kContinuous);
    for (int c = 0; c < lp.num_col_; ++c) {
      if (m.col_integer[c]) lp.integrality_[c] = HighsVarType::kInteger;
    }
  }

  // Column-wise CSC from triplets.
  const int nnz = static_cast<int>(m.entry_value.size());
  std::vector<int> count(lp.num_col_ + 1, 0);
  for (int e = 0; e < nnz; ++e) ++count[m.entry_col[e] + 1];
  std::partial_sum(count.begin(), count.end(), count.begin());
  lp.a_matrix_.format_ = MatrixFormat::kColwise;
  lp.a_matrix_.start_.assign(count.begin(), count.end());
  lp.a_matrix_.index_.resize(nnz);
  lp.a_matrix_.value_.resize(nnz);
  std::vector<int> next(count.begin(), count.end() - 1);
  for (int e = 0; e < nnz; ++e) {
    const int pos = next[m.entry_col[e]]++;
    lp.a_matrix_.index_[pos] = m.entry_row[e];
    lp.a_matrix_.value_[pos] = m.entry_value[e];
  }
  return hm;
}

class HighsBackend final : public SolverBackend {
 public:
  SolverSolution solve(const LinearModel& model,
                       const SolveOptions& options) override {
    Highs highs;
    highs.setOptionValue("output_flag", options.log_to_console);
    highs.setOptionValue("threads", options.threads);
    highs.setOptionValue("random_seed", options.random_seed);
    highs.setOptionValue("mip_rel_gap", options.mip_gap);
    if (options.time_limit_s < kInf) {
      highs.setOptionValue("time_limit", options.time_limit_s);
    }

    SolverSolution out;
    if (highs.passModel(to_highs(model)) != HighsStatus::kOk) {
      out.message = "model rejected by solver";
      return out;
    }
    const HighsStatus run = highs.run();
    const HighsModelStatus status = highs.getModelStatus();
    out.message = highs.modelStatusToString(status);
    switch (status) {
      case HighsModelStatus::kOptimal:
        out.status = SolveStatus::kOptimal;
        break;
      case HighsModelStatus::kInfeasible:
        out.status = SolveStatus::kInfeasible;
        return out;
      case HighsModelStatus::kUnbounded:
      case HighsModelStatus::kUnboundedOrInfeasible:
        out.status = SolveStatus::kUnbounded;
        return out;
      case HighsModelStatus::kTimeLimit:
        out.status = SolveStatus::kTimeLimit;
        break;
      default:
        out.status = SolveStatus::kError;
        if (run != HighsStatus::kOk) return out;
        break;
    }

    const HighsSolution& sol = highs.getSolution();
    const HighsInfo& info = highs.getInfo();
    out.objective = info.objective_function_value + model.offset;
    const bool is_mip = model.num_integers() > 0;
    out.best_bound =
        is_mip ? info.mip_dual_bound + model.offset : out.objective;
    out.col_value = sol.col_value;
    if (sol.dual_valid) {
      out.has_duals = true;
      // HiGHS reports duals in the sense of the model as passed, which is
      // already the shadow-price convention of the contract.
      out.row_dual = sol.row_dual;
      out.col_dual = sol.col_dual;
      out.basis_id = basis_hash(highs);
    }
    return out;
  }

  bool supports_concurrent_solves() const override { return true; }
  std::string name() const override { return "highs"; }

  void write_model(const LinearModel& model, const std::string& path) override {
    Highs highs;
    highs.setOptionValue("output_flag", false);
    if (highs.passModel(to_highs(model)) != HighsStatus::kOk) {
      throw std::runtime_error("model rejected by solver");
    }
    if (highs.writeModel(path) != HighsStatus::kOk) {
      throw std::runtime_error("failed to write model to " + path);
    }
  }

 private:
  static std::string basis_hash(const Highs& highs) {
    const HighsBasis& basis = highs.getBasis();
    if (!basis.valid) return "";
    std::string raw;
    raw.reserve(basis.col_status.size() + basis.row_status.size());
    for (auto s : basis.col_status) raw.push_back('0' + static_cast<int>(s));
    raw.push_back('|');
    for (auto s : basis.row_status) raw.push_back('0' + static_cast<int>(s));
    std::ostringstream os;
    os << std::hex << std::hash<std::string>{}(raw);
    return os.str();
  }
};

}  // namespace

std::unique_ptr<SolverBackend> make_highs_backend() {
  return std::make_unique<HighsBackend>();
}

}  // namespace gridalloc
