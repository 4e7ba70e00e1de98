#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rpurn/errors.hpp"
#include "rpurn/evaluation.hpp"
#include "rpurn/urn.hpp"

namespace rpurn::cli {

namespace fs = std::filesystem;

namespace {

std::string format_value(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void require_input(const RunConfig& config) {
  if (config.input.empty()) throw ConfigError("--input is required");
  if (!fs::exists(config.input)) throw DataError("input file not found: " + config.input.string());
}

std::size_t require_slots(const RunConfig& config) {
  if (!config.slots) throw ConfigError("--slots is required for " + config.command);
  if (*config.slots < 2) throw ConfigError("--slots must be at least 2");
  return *config.slots;
}

void check_models(const RunConfig& config) {
  if (config.models.empty()) throw ConfigError("--models must name at least one model");
}

void check_knots(const std::vector<int>& knots) {
  for (int k : knots) {
    if (k < 3) throw ConfigError("knot counts must be at least 3 (got " + std::to_string(k) + ")");
  }
}

void ensure_output_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw DataError("cannot create output directory " + config.output_dir.string());
}

std::vector<ParamTrajectory> fit_all(const RunConfig& config, const BinarySeries& series,
                                     const SlotScheme& scheme, std::ostream& log) {
  std::vector<ParamTrajectory> trajectories;
  for (ModelKind model : config.models) {
    log << "fitting " << to_string(model) << " over " << scheme.slots() - 1 << " slots\n";
    trajectories.push_back(fit_trajectory(model, series.bits(), scheme, config.fit_options));
  }
  return trajectories;
}

// Reads a sequence of reals: an rpurn series file, or one column of a CSV
// with a header row.
std::vector<double> load_curve_input(const RunConfig& config) {
  std::ifstream in(config.input);
  if (!in) throw DataError("cannot open " + config.input.string());
  std::string first;
  std::getline(in, first);
  if (first.rfind("# rpurn-series", 0) == 0) {
    in.clear();
    in.seekg(0);
    const BinarySeries series = read_series(in);
    return {series.values.begin(), series.values.end()};
  }
  if (!first.empty() && first.back() == '\r') first.pop_back();
  std::vector<std::string> header;
  {
    std::stringstream ss(first);
    std::string name;
    while (std::getline(ss, name, ',')) header.push_back(name);
  }
  if (header.empty()) throw DataError("empty input " + config.input.string());
  std::size_t column = header.size() - 1;
  if (!config.column.empty()) {
    auto it = std::find(header.begin(), header.end(), config.column);
    if (it == header.end()) throw ConfigError("column '" + config.column + "' not in header");
    column = static_cast<std::size_t>(it - header.begin());
  } else if (header.size() > 1) {
    throw ConfigError("input has several columns; choose one with --column");
  }
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::size_t i = 0;
    bool found = false;
    while (std::getline(ss, field, ',')) {
      if (i++ == column) {
        found = true;
        break;
      }
    }
    char* end = nullptr;
    const double v = found ? std::strtod(field.c_str(), &end) : 0.0;
    if (!found || end == field.c_str() || *end != '\0' || !std::isfinite(v)) {
      throw DataError("line " + std::to_string(line_no) + ": invalid value in column " +
                      header[column]);
    }
    values.push_back(v);
  }
  return values;
}

std::vector<double> parse_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') throw ConfigError("invalid number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    writer(out);
    out.flush();
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw DataError("cannot move " + tmp.string() + " into place: " + ec.message());
}

BinarySeries load_series(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_series(in);
}

void cmd_ingest(const RunConfig& config, std::ostream& log) {
  require_input(config);
  std::ifstream in(config.input);
  if (!in) throw DataError("cannot open " + config.input.string());
  const RecordFormat format = config.format.value_or(format_for_path(config.input.string()));
  RecordBatch batch = read_records(in, format);
  for (const auto& w : batch.warnings) log << "warning: " << w << '\n';
  if (batch.records.empty()) {
    throw DataError("no valid records in " + config.input.string() + " (" +
                    std::to_string(batch.malformed) + " malformed lines)");
  }
  const BinarySeries series = binarize(batch.records, config.threshold, config.subset);
  if (series.empty()) throw DataError("every record was discarded; nothing to write");
  const Descriptives d = descriptives(series);

  ensure_output_dir(config);
  write_file_atomic(config.output_dir / "series.txt",
                    [&](std::ostream& out) { write_series(out, series); });
  write_file_atomic(config.output_dir / "descriptives.csv", [&](std::ostream& out) {
    char pct[32];
    std::snprintf(pct, sizeof(pct), "%.2f", d.pct_positive);
    out << "subset,posts,pct_positive,source_count,discarded_count,subset_removed,malformed\n";
    out << to_string(series.subset) << ',' << d.posts << ',' << pct << ',' << series.source_count
        << ',' << series.discarded_count << ',' << series.subset_removed << ',' << batch.malformed
        << '\n';
  });
  log << "ingested " << d.posts << " posts (" << series.discarded_count << " discarded, "
      << series.subset_removed << " outside subset, " << batch.malformed << " malformed)\n";
}

void cmd_simulate(const RunConfig& config, std::ostream& log) {
  std::vector<Bit> bits;
  const std::string& g = config.generator;
  if (g == "complete" || g == "only_fashion" || g == "no_fashion" || g == "polya") {
    ModelParams params = [&]() -> ModelParams {
      switch (parse_model_kind(g)) {
        case ModelKind::Complete:
          return ApproxParams::complete(config.p0, config.gamma_star, config.beta, config.b_tilde_init);
        case ModelKind::OnlyFashion: return ApproxParams::only_fashion(config.beta, config.b_tilde_init);
        case ModelKind::NoFashion: return ApproxParams::no_fashion(config.p0);
        case ModelKind::Polya: return PolyaPredictorParams::make(config.a1, config.a);
      }
      throw ConfigError("unknown generator");
    }();
    bits = simulate_series(params, config.length, config.seed);
  } else if (g == "rp_urn" || g == "polya_urn") {
    // Color 0 is the positive outcome (bit 1).
    std::vector<DrawOutcome> draws;
    if (g == "rp_urn") {
      RPUrnState state(CountVector(config.b0), CountVector(config.reinforced0), config.alpha,
                       config.beta);
      if (state.colors() != 2) throw ConfigError("sentiment series need a two-color urn");
      draws = simulate(state, config.length, config.seed);
    } else {
      PolyaUrnState state(CountVector(config.b0), config.alpha);
      if (state.colors() != 2) throw ConfigError("sentiment series need a two-color urn");
      draws = simulate(state, config.length, config.seed);
    }
    bits.reserve(draws.size());
    for (auto d : draws) bits.push_back(d.color == 0 ? 1 : 0);
  } else {
    throw ConfigError("unknown generator '" + g +
                      "' (expected complete, only_fashion, no_fashion, polya, rp_urn, polya_urn)");
  }
  BinarySeries series = BinarySeries::from_bits(std::move(bits), "simulate/" + g);
  ensure_output_dir(config);
  write_file_atomic(config.output_dir / "series.txt",
                    [&](std::ostream& out) { write_series(out, series); });
  log << "simulated " << series.size() << " observations with " << g << " (seed " << config.seed
      << ")\n";
}

EvalReport cmd_fit_evaluate(const RunConfig& config, std::ostream& log) {
  require_input(config);
  check_models(config);
  check_knots(config.knots);
  const std::size_t slots = require_slots(config);
  const BinarySeries series = load_series(config.input);
  if (series.size() < 2 * slots) {
    throw DataError("series has " + std::to_string(series.size()) +
                    " observations; fit-eval with " + std::to_string(slots) +
                    " slots needs at least " + std::to_string(2 * slots));
  }
  const SlotScheme scheme(slots, series.size());
  const std::size_t evaluated = scheme.used_length() - scheme.slot_len();
  for (int k : config.knots) {
    if (evaluated < static_cast<std::size_t>(k) + 4) {
      throw DataError("evaluated range of " + std::to_string(evaluated) +
                      " observations is too short for " + std::to_string(k) + " knots (need " +
                      std::to_string(k + 4) + ")");
    }
  }

  const auto trajectories = fit_all(config, series, scheme, log);
  EvalReport report;
  report.models = config.models;
  report.slots = slots;
  report.length = series.size();
  report.theoretical_value = theoretical_value(series.bits(), scheme);

  std::vector<std::vector<double>> predictions;
  for (const ParamTrajectory& t : trajectories) {
    for (const SlotFit& entry : t.per_slot) {
      if (!entry.fit) {
        throw NumericError("fit of " + std::string(to_string(t.model)) + " failed at slot " +
                           std::to_string(entry.slot) + ": " + entry.error);
      }
    }
    predictions.push_back(out_of_sample_predictions(series.bits(), scheme, t));
  }
  for (const auto& psi : predictions) {
    report.ss_rel.push_back(ss_rel(PredictionRun{series.bits(), psi, scheme}));
  }
  std::vector<std::optional<int>> levels{std::nullopt};
  for (int k : config.knots) levels.emplace_back(k);
  for (const auto& level : levels) {
    MseRow row{level, {}};
    for (const auto& psi : predictions) {
      row.per_model.push_back(mse_smoothed(PredictionRun{series.bits(), psi, scheme}, level));
    }
    report.mse_table.push_back(std::move(row));
  }

  ensure_output_dir(config);
  write_file_atomic(config.output_dir / "ss_rel.csv",
                    [&](std::ostream& out) { write_ss_rel_csv(out, report); });
  write_file_atomic(config.output_dir / "mse.csv",
                    [&](std::ostream& out) { write_mse_csv(out, report); });
  write_file_atomic(config.output_dir / "report.json",
                    [&](std::ostream& out) { write_report_json(out, report); });
  write_file_atomic(config.output_dir / "params_evolution.csv",
                    [&](std::ostream& out) { write_trajectories_csv(out, trajectories); });

  auto write_curves = [&](const fs::path& path, const std::vector<std::vector<double>>& curves,
                          std::size_t begin, std::size_t end) {
    write_file_atomic(path, [&](std::ostream& out) {
      out << "n,xi_next";
      for (ModelKind m : config.models) out << ',' << to_string(m);
      out << '\n';
      for (std::size_t n = begin; n < end; ++n) {
        out << n << ',' << static_cast<int>(series.values[n]);
        for (const auto& c : curves) out << ',' << format_value(c[n]);
        out << '\n';
      }
    });
  };
  if (config.write_predictions) {
    write_curves(config.output_dir / "predictions.csv", predictions, scheme.slot_len(),
                 scheme.used_length());
  }
  if (config.in_sample) {
    std::vector<std::vector<double>> curves;
    for (ModelKind model : config.models) {
      const FitResult full = fit(model, series.bits(), scheme.used_length(), config.fit_options);
      auto psi = run_series(full.theta_hat, series.bits(), 0);
      curves.push_back(std::move(psi));
    }
    write_curves(config.output_dir / "in_sample_predictions.csv", curves, 0, scheme.used_length());
  }

  for (std::size_t i = 0; i < report.models.size(); ++i) {
    log << display_name(report.models[i]) << ": SS_rel " << format_percent(report.ss_rel[i]) << "%\n";
  }
  log << "Theoretical value: " << format_percent(report.theoretical_value) << "%\n";
  return report;
}

void cmd_smooth(const RunConfig& config, std::ostream& log) {
  require_input(config);
  check_knots(config.knots);
  if (config.knots.empty()) throw ConfigError("--knots must list at least one knot count");
  const std::vector<double> values = load_curve_input(config);
  std::vector<SmoothedCurve> curves;
  for (int k : config.knots) curves.push_back(smooth(values, k));
  ensure_output_dir(config);
  write_file_atomic(config.output_dir / "smooth.csv", [&](std::ostream& out) {
    out << "index";
    for (int k : config.knots) out << ",k_" << k;
    out << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << i;
      for (const auto& c : curves) out << ',' << format_value(c.values[i]);
      out << '\n';
    }
  });
  log << "smoothed " << values.size() << " values with " << curves.size() << " knot counts\n";
}

void cmd_params_evolution(const RunConfig& config, std::ostream& log) {
  require_input(config);
  check_models(config);
  const std::size_t slots = require_slots(config);
  const BinarySeries series = load_series(config.input);
  if (series.size() < 2 * slots) {
    throw DataError("series has " + std::to_string(series.size()) + " observations; " +
                    std::to_string(slots) + " slots need at least " + std::to_string(2 * slots));
  }
  const SlotScheme scheme(slots, series.size());
  const auto trajectories = fit_all(config, series, scheme, log);
  ensure_output_dir(config);
  write_file_atomic(config.output_dir / "params_evolution.csv",
                    [&](std::ostream& out) { write_trajectories_csv(out, trajectories); });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rescaled Polya urn toolkit for binary sentiment series"};
  app.require_subcommand(1);
  RunConfig config;
  std::string input, output_dir, subset = "entire", format;
  std::vector<std::string> models, b0, reinforced0;
  std::vector<int> knots = kDefaultKnots;
  std::size_t slots = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "Input file")->envname("RPURN_INPUT");
    sub->add_option("--output-dir", output_dir, "Directory for outputs")
        ->envname("RPURN_OUTPUT_DIR");
  };
  auto add_models = [&](CLI::App* sub) {
    sub->add_option("--models", models, "Comma-separated models: complete,only_fashion,no_fashion,polya")
        ->delimiter(',')
        ->envname("RPURN_MODELS");
  };
  auto add_slots = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--slots", slots, "Number of slots S (>= 2)")->envname("RPURN_SLOTS");
    if (required) opt->required();
  };
  auto add_knots = [&](CLI::App* sub) {
    sub->add_option("--knots", knots, "Comma-separated spline knot counts")
        ->delimiter(',')
        ->envname("RPURN_KNOTS");
  };

  auto* ingest = app.add_subcommand("ingest", "Threshold scored posts into a binary series");
  add_common(ingest);
  ingest->add_option("--threshold", config.threshold, "Sentiment threshold T")
      ->envname("RPURN_THRESHOLD");
  ingest->add_option("--subset", subset, "entire or bots_only")->envname("RPURN_SUBSET");
  ingest->add_option("--format", format, "jsonl or csv (default: from extension)")
      ->envname("RPURN_FORMAT");

  auto* sim = app.add_subcommand("simulate", "Write a synthetic series from a model");
  add_common(sim);
  sim->add_option("--generator", config.generator,
                  "complete, only_fashion, no_fashion, polya, rp_urn or polya_urn")
      ->envname("RPURN_GENERATOR");
  sim->add_option("--length", config.length, "Number of observations")->required()->envname("RPURN_LENGTH");
  sim->add_option("--seed", config.seed, "Random seed")->envname("RPURN_SEED");
  sim->add_option("--p0", config.p0);
  sim->add_option("--gamma", config.gamma_star);
  sim->add_option("--beta", config.beta);
  sim->add_option("--b-tilde0", config.b_tilde_init);
  sim->add_option("--a1", config.a1);
  sim->add_option("--a", config.a);
  sim->add_option("--alpha", config.alpha);
  sim->add_option("--b0", b0, "Urn base masses (rp_urn) or initial masses (polya_urn)")->delimiter(',');
  sim->add_option("--B0", reinforced0, "Initial reinforced masses (rp_urn)")->delimiter(',');

  auto* fe = app.add_subcommand("fit-eval", "Slot-wise fit and out-of-sample evaluation");
  add_common(fe);
  add_slots(fe, true);
  add_models(fe);
  add_knots(fe);
  fe->add_flag("--in-sample", config.in_sample, "Also write in-sample prediction curves");
  fe->add_flag("--write-predictions", config.write_predictions,
               "Write the out-of-sample prediction sequence");

  auto* sm = app.add_subcommand("smooth", "Cubic regression-spline smoothing for plotting");
  add_common(sm);
  add_knots(sm);
  sm->add_option("--column", config.column, "Column to smooth when the input is a CSV");

  auto* pe = app.add_subcommand("params-evolution", "Per-slot parameter estimates");
  add_common(pe);
  add_slots(pe, true);
  add_models(pe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    config.input = input;
    if (!output_dir.empty()) config.output_dir = output_dir;
    if (slots != 0 || config.command == "fit-eval" || config.command == "params-evolution") {
      config.slots = slots;
    }
    config.subset = parse_subset(subset);
    if (!format.empty()) {
      if (format == "jsonl") config.format = RecordFormat::JsonLines;
      else if (format == "csv") config.format = RecordFormat::Csv;
      else throw ConfigError("--format must be jsonl or csv");
    }
    if (!models.empty()) {
      config.models.clear();
      for (const auto& m : models) {
        const ModelKind kind = parse_model_kind(m);
        if (std::find(config.models.begin(), config.models.end(), kind) != config.models.end()) {
          throw ConfigError("model '" + m + "' listed twice");
        }
        config.models.push_back(kind);
      }
    }
    config.knots = knots;
    {
      std::vector<int> sorted = knots;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConfigError("--knots lists a knot count twice");
      }
    }
    if (!b0.empty()) config.b0 = parse_list(b0);
    if (!reinforced0.empty()) config.reinforced0 = parse_list(reinforced0);

    if (config.command == "ingest") cmd_ingest(config, err);
    else if (config.command == "simulate") cmd_simulate(config, err);
    else if (config.command == "fit-eval") cmd_fit_evaluate(config, err);
    else if (config.command == "smooth") cmd_smooth(config, err);
    else if (config.command == "params-evolution") cmd_params_evolution(config, err);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace rpurn::cli
