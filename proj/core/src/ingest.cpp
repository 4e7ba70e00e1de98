#include "rpurn/ingest.hpp"

#include <algorithm>
#include <chrono>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <unordered_map>

#include <json.hpp>

#include "rpurn/errors.hpp"

namespace rpurn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

template <typename Int>
bool read_int(std::string_view& text, std::size_t digits, Int& out) {
  if (text.size() < digits) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + digits, out);
  if (ec != std::errc{} || ptr != text.data() + digits) return false;
  text.remove_prefix(digits);
  return true;
}

bool consume(std::string_view& text, char c) {
  if (text.empty() || text.front() != c) return false;
  text.remove_prefix(1);
  return true;
}

std::optional<bool> parse_flag(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "true" || lower == "1" || lower == "yes") return true;
  if (lower == "false" || lower == "0" || lower == "no") return false;
  throw DataError("invalid is_bot value '" + std::string(text) + "'");
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == ',' && !quoted) {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  fields.push_back(line.substr(start));
  return fields;
}

PostRecord record_from_json(const nlohmann::json& obj) {
  if (!obj.is_object()) throw DataError("record is not a JSON object");
  PostRecord r;
  if (auto it = obj.find("id"); it != obj.end()) {
    r.id = it->is_string() ? it->get<std::string>() : it->dump();
  }
  auto ts = obj.find("timestamp");
  if (ts == obj.end()) throw DataError("missing timestamp");
  if (ts->is_number()) {
    r.timestamp = ts->get<double>();
  } else if (ts->is_string()) {
    auto parsed = parse_timestamp(ts->get<std::string>());
    if (!parsed) throw DataError("unparseable timestamp");
    r.timestamp = *parsed;
  } else {
    throw DataError("timestamp must be a number or string");
  }
  auto v = obj.find("sentiment");
  if (v == obj.end()) v = obj.find("sentiment_value");
  if (v == obj.end() || !v->is_number()) throw DataError("missing numeric sentiment");
  r.sentiment = v->get<double>();
  if (!std::isfinite(r.sentiment)) throw DataError("sentiment is not finite");
  if (auto bot = obj.find("is_bot"); bot != obj.end() && !bot->is_null()) {
    if (bot->is_boolean()) {
      r.is_bot = bot->get<bool>();
    } else if (bot->is_number_integer()) {
      r.is_bot = bot->get<long long>() != 0;
    } else if (bot->is_string()) {
      r.is_bot = parse_flag(bot->get<std::string>());
    } else {
      throw DataError("is_bot must be boolean");
    }
  }
  return r;
}

struct CsvColumns {
  std::optional<std::size_t> id, timestamp, sentiment, is_bot;
};

CsvColumns parse_header(std::string_view line) {
  CsvColumns cols;
  auto fields = split_csv(line);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto name = trim(fields[i]);
    if (name == "id") cols.id = i;
    else if (name == "timestamp") cols.timestamp = i;
    else if (name == "sentiment" || name == "sentiment_value") cols.sentiment = i;
    else if (name == "is_bot") cols.is_bot = i;
  }
  if (!cols.timestamp || !cols.sentiment) {
    throw DataError("line 1: CSV header must name timestamp and sentiment columns");
  }
  return cols;
}

PostRecord record_from_csv(std::string_view line, const CsvColumns& cols) {
  auto fields = split_csv(line);
  auto field = [&](std::size_t i) -> std::string_view {
    if (i >= fields.size()) throw DataError("expected at least " + std::to_string(i + 1) + " fields");
    return trim(fields[i]);
  };
  PostRecord r;
  if (cols.id) r.id = std::string(field(*cols.id));
  auto ts = parse_timestamp(field(*cols.timestamp));
  if (!ts) throw DataError("unparseable timestamp");
  r.timestamp = *ts;
  auto v = parse_double(field(*cols.sentiment));
  if (!v) throw DataError("invalid sentiment value");
  r.sentiment = *v;
  if (cols.is_bot && *cols.is_bot < fields.size()) r.is_bot = parse_flag(fields[*cols.is_bot]);
  return r;
}

}  // namespace

RecordFormat format_for_path(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".jsonl") || ends_with(".ndjson") || ends_with(".json")) return RecordFormat::JsonLines;
  return RecordFormat::Csv;
}

std::optional<double> parse_timestamp(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (auto numeric = parse_double(text)) return numeric;

  using namespace std::chrono;
  int y = 0;
  unsigned mo = 0, d = 0;
  if (!read_int(text, 4, y) || !consume(text, '-') || !read_int(text, 2, mo) ||
      !consume(text, '-') || !read_int(text, 2, d)) {
    return std::nullopt;
  }
  const year_month_day date{year{y}, month{mo}, day{d}};
  if (!date.ok()) return std::nullopt;
  double seconds = static_cast<double>(sys_days{date}.time_since_epoch().count()) * 86400.0;
  if (text.empty()) return seconds;
  if (!consume(text, 'T') && !consume(text, ' ')) return std::nullopt;
  int hh = 0, mm = 0, ss = 0;
  if (!read_int(text, 2, hh) || !consume(text, ':') || !read_int(text, 2, mm)) return std::nullopt;
  if (consume(text, ':') && !read_int(text, 2, ss)) return std::nullopt;
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  seconds += hh * 3600.0 + mm * 60.0 + ss;
  if (consume(text, '.')) {
    std::size_t digits = 0;
    while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits]))) ++digits;
    if (digits == 0) return std::nullopt;
    auto frac = parse_double("0." + std::string(text.substr(0, digits)));
    seconds += *frac;
    text.remove_prefix(digits);
  }
  if (text.empty() || text == "Z") return seconds;
  const char sign = text.front();
  if (sign != '+' && sign != '-') return std::nullopt;
  text.remove_prefix(1);
  int oh = 0, om = 0;
  if (!read_int(text, 2, oh)) return std::nullopt;
  consume(text, ':');
  if (!text.empty() && !read_int(text, 2, om)) return std::nullopt;
  if (!text.empty()) return std::nullopt;
  const double offset = oh * 3600.0 + om * 60.0;
  return sign == '+' ? seconds - offset : seconds + offset;
}

RecordBatch read_records(std::istream& in, RecordFormat format) {
  RecordBatch batch;
  std::string line;
  std::size_t line_no = 0;
  std::optional<CsvColumns> columns;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (format == RecordFormat::Csv && !columns) {
      columns = parse_header(view);
      continue;
    }
    ++batch.lines_read;
    try {
      if (format == RecordFormat::JsonLines) {
        nlohmann::json obj;
        try {
          obj = nlohmann::json::parse(view);
        } catch (const nlohmann::json::exception&) {
          throw DataError("invalid JSON");
        }
        batch.records.push_back(record_from_json(obj));
      } else {
        batch.records.push_back(record_from_csv(view, *columns));
      }
    } catch (const DataError& e) {
      ++batch.malformed;
      batch.warnings.push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  std::stable_sort(batch.records.begin(), batch.records.end(),
                   [](const PostRecord& a, const PostRecord& b) { return a.timestamp < b.timestamp; });
  return batch;
}

BinarySeries binarize(const std::vector<PostRecord>& records, double threshold, Subset subset) {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) {
    throw ConfigError("threshold must be positive");
  }
  BinarySeries series;
  series.subset = subset;
  series.threshold = threshold;
  series.origin = "ingest";
  series.source_count = records.size();
  series.values.reserve(records.size());
  for (const PostRecord& r : records) {
    if (subset == Subset::BotsOnly) {
      if (!r.is_bot) {
        throw ConfigError("bots_only subset requires an is_bot value on every record (record '" +
                          r.id + "' has none)");
      }
      if (!*r.is_bot) {
        ++series.subset_removed;
        continue;
      }
    }
    if (r.sentiment > threshold) {
      series.values.push_back(1);
    } else if (r.sentiment < -threshold) {
      series.values.push_back(0);
    } else {
      ++series.discarded_count;
    }
  }
  return series;
}

Descriptives descriptives(const BinarySeries& series) {
  if (series.empty()) throw DataError("descriptives of an empty series");
  const auto ones = static_cast<std::size_t>(std::count(series.values.begin(), series.values.end(), Bit{1}));
  return {series.size(), 100.0 * static_cast<double>(ones) / static_cast<double>(series.size())};
}

}  // namespace rpurn
