#include "rpurn/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace rpurn {

namespace {

std::string format_general(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

std::string format_scientific(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6e", value);
  return buf;
}

nlohmann::json number_or_sentinel(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return nullptr;
  return value;
}

}  // namespace

std::string mse_row_label(const MseRow& row) {
  return row.knot_count ? "k = " + std::to_string(*row.knot_count) : "no smooth";
}

std::string format_percent(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

void write_ss_rel_csv(std::ostream& out, const EvalReport& report) {
  out << "metric";
  for (ModelKind m : report.models) out << ',' << display_name(m);
  out << ",Theoretical value\n";
  out << "SS_rel (%)";
  for (double v : report.ss_rel) out << ',' << format_percent(v);
  out << ',' << format_percent(report.theoretical_value) << '\n';
}

void write_mse_csv(std::ostream& out, const EvalReport& report) {
  out << "smooth";
  for (ModelKind m : report.models) out << ',' << display_name(m);
  out << '\n';
  for (const MseRow& row : report.mse_table) {
    out << mse_row_label(row);
    for (double v : row.per_model) out << ',' << format_scientific(v);
    out << '\n';
  }
}

void write_report_json(std::ostream& out, const EvalReport& report) {
  nlohmann::ordered_json doc;
  doc["slots"] = report.slots;
  doc["length"] = report.length;
  doc["models"] = nlohmann::json::array();
  for (ModelKind m : report.models) doc["models"].push_back(std::string(to_string(m)));
  nlohmann::ordered_json ss = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < report.models.size(); ++i) {
    ss[std::string(to_string(report.models[i]))] = number_or_sentinel(report.ss_rel[i]);
  }
  doc["ss_rel_percent"] = ss;
  doc["theoretical_value_percent"] = number_or_sentinel(report.theoretical_value);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const MseRow& row : report.mse_table) {
    nlohmann::ordered_json r;
    r["smooth"] = mse_row_label(row);
    if (row.knot_count) {
      r["knots"] = *row.knot_count;
    } else {
      r["knots"] = nullptr;
    }
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < report.models.size(); ++i) {
      values[std::string(to_string(report.models[i]))] = number_or_sentinel(row.per_model[i]);
    }
    r["mse"] = values;
    rows.push_back(r);
  }
  doc["mse_table"] = rows;
  out << doc.dump(2) << '\n';
}

void write_trajectories_csv(std::ostream& out, const std::vector<ParamTrajectory>& trajectories) {
  out << "model,slot,training_end,p0,gamma_star,beta,a1,a,log_likelihood,iterations,converged,"
         "degenerate,error\n";
  for (const ParamTrajectory& t : trajectories) {
    for (const SlotFit& entry : t.per_slot) {
      out << to_string(t.model) << ',' << entry.slot << ',' << entry.training_end << ',';
      if (!entry.fit) {
        out << ",,,,,,,,,";
        std::string error = entry.error;
        for (char& c : error) {
          if (c == ',' || c == '\n') c = ' ';
        }
        out << error << '\n';
        continue;
      }
      const FitResult& fit = *entry.fit;
      if (const auto* approx = std::get_if<ApproxParams>(&fit.theta_hat)) {
        out << format_general(approx->p0) << ',' << format_general(approx->gamma_star) << ','
            << format_general(approx->beta) << ",,";
      } else {
        const auto& polya = std::get<PolyaPredictorParams>(fit.theta_hat);
        out << ",,," << format_general(polya.a1) << ',' << format_general(polya.a);
      }
      out << ',' << format_general(fit.log_likelihood) << ',' << fit.iterations << ','
          << (fit.converged ? "true" : "false") << ',' << (fit.degenerate ? "true" : "false")
          << ",\n";
    }
  }
}

}  // namespace rpurn
