#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rpurn/estimation.hpp"
#include "rpurn/ingest.hpp"
#include "rpurn/report.hpp"
#include "rpurn/sentiment_model.hpp"

namespace rpurn::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

inline const std::vector<int> kDefaultKnots{3, 5, 10, 20, 30, 50};

struct RunConfig {
  std::string command;
  std::filesystem::path input;
  std::filesystem::path output_dir = ".";
  std::optional<std::size_t> slots;
  double threshold = kDefaultThreshold;
  std::vector<ModelKind> models{ModelKind::Complete, ModelKind::OnlyFashion, ModelKind::NoFashion,
                                ModelKind::Polya};
  std::vector<int> knots = kDefaultKnots;
  std::uint64_t seed = 1;
  Subset subset = Subset::Entire;
  std::optional<RecordFormat> format;

  // fit-eval
  bool in_sample = false;
  bool write_predictions = false;

  // simulate
  std::string generator = "complete";
  std::size_t length = 0;
  double p0 = 0.5;
  double gamma_star = 0.5;
  double beta = 0.9;
  double b_tilde_init = 0.5;
  double a1 = 1.0;
  double a = 2.0;
  double alpha = 1.0;
  std::vector<double> b0{1.0, 1.0};
  std::vector<double> reinforced0{0.0, 0.0};

  // smooth
  std::string column;

  FitOptions fit_options{};
};

/// Writes via a temporary sibling and renames, so readers never see a
/// partially written file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

BinarySeries load_series(const std::filesystem::path& path);

void cmd_ingest(const RunConfig& config, std::ostream& log);
void cmd_simulate(const RunConfig& config, std::ostream& log);
EvalReport cmd_fit_evaluate(const RunConfig& config, std::ostream& log);
void cmd_smooth(const RunConfig& config, std::ostream& log);
void cmd_params_evolution(const RunConfig& config, std::ostream& log);

/// Full command-line entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rpurn::cli
