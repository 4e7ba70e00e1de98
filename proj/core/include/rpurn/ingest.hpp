#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rpurn/series.hpp"

namespace rpurn {

inline constexpr double kDefaultThreshold = 0.35;

/// One pre-scored post.
struct PostRecord {
  std::string id;
  double timestamp = 0.0;  // seconds since the Unix epoch
  double sentiment = 0.0;
  std::optional<bool> is_bot;
};

enum class RecordFormat { JsonLines, Csv };

/// Chooses the reader from the file extension (.jsonl/.ndjson/.json -> JSON
/// lines, anything else -> CSV).
RecordFormat format_for_path(std::string_view path);

struct RecordBatch {
  std::vector<PostRecord> records;  // stable-sorted by timestamp
  std::size_t lines_read = 0;
  std::size_t malformed = 0;
  std::vector<std::string> warnings;  // "line N: reason", one per malformed line
};

/// Parses integer/fractional epoch seconds or ISO-8601
/// (YYYY-MM-DD[THH:MM[:SS[.fff]]][Z|+HH:MM|-HH:MM]). Empty on failure.
std::optional<double> parse_timestamp(std::string_view text);

/// JSON lines: {"id": ..., "timestamp": ..., "sentiment": ..., "is_bot": ...}
/// ("sentiment_value" is accepted as an alias). CSV: header row naming the
/// same columns in any order. Malformed lines are counted, reported in
/// warnings and skipped. Records come back in non-decreasing timestamp order
/// with ties kept in input order.
RecordBatch read_records(std::istream& in, RecordFormat format);

/// Subset filter first, then thresholding: v > T -> 1, v < -T -> 0,
/// v in [-T, T] discarded. bots_only needs an is_bot value on every record.
BinarySeries binarize(const std::vector<PostRecord>& records, double threshold, Subset subset);

struct Descriptives {
  std::size_t posts = 0;
  double pct_positive = 0.0;
};

/// Throws DataError on an empty series.
Descriptives descriptives(const BinarySeries& series);

}  // namespace rpurn
