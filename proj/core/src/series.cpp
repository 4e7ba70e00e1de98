#include "rpurn/series.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "rpurn/errors.hpp"

namespace rpurn {

namespace {

constexpr std::string_view kMagic = "# rpurn-series v1";

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::size_t parse_count(std::string_view text, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DataError("line " + std::to_string(line_no) + ": invalid count '" +
                    std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

}  // namespace

std::string_view to_string(Subset subset) {
  return subset == Subset::Entire ? "entire" : "bots_only";
}

Subset parse_subset(std::string_view text) {
  if (text == "entire") return Subset::Entire;
  if (text == "bots_only") return Subset::BotsOnly;
  throw ConfigError("unknown subset '" + std::string(text) + "' (expected entire or bots_only)");
}

BinarySeries BinarySeries::from_bits(std::vector<Bit> bits, std::string origin) {
  BinarySeries series;
  series.source_count = bits.size();
  series.values = std::move(bits);
  series.origin = std::move(origin);
  return series;
}

SlotScheme::SlotScheme(std::size_t slots, std::size_t length)
    : slots_(slots), length_(length), slot_len_(slots == 0 ? 0 : length / slots) {
  if (slots < 2) throw ConfigError("number of slots must be at least 2");
  if (slot_len_ < 1) {
    throw DataError("series of length " + std::to_string(length) + " is too short for " +
                    std::to_string(slots) + " slots");
  }
}

void write_series(std::ostream& out, const BinarySeries& series) {
  out << kMagic << '\n';
  out << "# origin=" << series.origin << '\n';
  out << "# subset=" << to_string(series.subset) << '\n';
  out << "# threshold=" << (series.threshold ? format_double(*series.threshold) : "none") << '\n';
  out << "# source_count=" << series.source_count << '\n';
  out << "# discarded_count=" << series.discarded_count << '\n';
  out << "# subset_removed=" << series.subset_removed << '\n';
  out << "# length=" << series.values.size() << '\n';
  std::string body;
  body.reserve(series.values.size() * 2);
  for (Bit b : series.values) {
    body.push_back(b ? '1' : '0');
    body.push_back('\n');
  }
  out << body;
}

BinarySeries read_series(std::istream& in) {
  BinarySeries series;
  std::optional<std::size_t> declared_length;
  std::string line;
  std::size_t line_no = 0;
  bool saw_magic = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      if (line_no == 1) {
        if (view != kMagic) throw DataError("line 1: not an rpurn series file");
        saw_magic = true;
        continue;
      }
      view.remove_prefix(1);
      view = trim(view);
      auto eq = view.find('=');
      if (eq == std::string_view::npos) continue;
      std::string_view key = view.substr(0, eq);
      std::string_view value = view.substr(eq + 1);
      if (key == "origin") {
        series.origin = std::string(value);
      } else if (key == "subset") {
        series.subset = parse_subset(value);
      } else if (key == "threshold") {
        if (value != "none") {
          double t = 0.0;
          auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), t);
          if (ec != std::errc{} || ptr != value.data() + value.size()) {
            throw DataError("line " + std::to_string(line_no) + ": invalid threshold");
          }
          series.threshold = t;
        }
      } else if (key == "source_count") {
        series.source_count = parse_count(value, line_no);
      } else if (key == "discarded_count") {
        series.discarded_count = parse_count(value, line_no);
      } else if (key == "subset_removed") {
        series.subset_removed = parse_count(value, line_no);
      } else if (key == "length") {
        declared_length = parse_count(value, line_no);
        series.values.reserve(*declared_length);
      }
      continue;
    }
    if (!saw_magic) throw DataError("line 1: not an rpurn series file");
    if (view == "1") {
      series.values.push_back(1);
    } else if (view == "0") {
      series.values.push_back(0);
    } else {
      throw DataError("line " + std::to_string(line_no) + ": expected 0 or 1, got '" +
                      std::string(view) + "'");
    }
  }
  if (!saw_magic) throw DataError("empty series file");
  if (declared_length && *declared_length != series.values.size()) {
    throw DataError("series header declares " + std::to_string(*declared_length) +
                    " bits but " + std::to_string(series.values.size()) + " were read");
  }
  return series;
}

}  // namespace rpurn
