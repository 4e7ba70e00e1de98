#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rpurn/estimation.hpp"
#include "rpurn/sentiment_model.hpp"

namespace rpurn {

struct MseRow {
  std::optional<int> knot_count;  // empty for the "no smooth" row
  std::vector<double> per_model;  // aligned with EvalReport::models
};

struct EvalReport {
  std::vector<ModelKind> models;
  std::vector<double> ss_rel;  // percent, aligned with models; +inf allowed
  double theoretical_value = 0.0;
  std::vector<MseRow> mse_table;
  std::size_t slots = 0;
  std::size_t length = 0;
};

std::string mse_row_label(const MseRow& row);

/// Percent with two decimals, "inf" for the perfect-prediction sentinel.
std::string format_percent(double value);

/// SS_rel table: one column per model plus the theoretical value.
void write_ss_rel_csv(std::ostream& out, const EvalReport& report);
/// MSE table: one row per smoothing level, one column per model.
void write_mse_csv(std::ostream& out, const EvalReport& report);
/// Machine-readable form of the whole report.
void write_report_json(std::ostream& out, const EvalReport& report);

/// Per-slot parameter estimates of several trajectories, one row per
/// (model, slot).
void write_trajectories_csv(std::ostream& out, const std::vector<ParamTrajectory>& trajectories);

}  // namespace rpurn
