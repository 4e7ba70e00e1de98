#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rpurn {

using Bit = std::uint8_t;

enum class Subset { Entire, BotsOnly };

std::string_view to_string(Subset subset);
Subset parse_subset(std::string_view text);

/// Observation sequence xi_1..xi_N (stored 0-based: values[j] is xi_{j+1})
/// together with the bookkeeping of how it was produced.
struct BinarySeries {
  std::vector<Bit> values;
  std::size_t source_count = 0;     // records read
  std::size_t discarded_count = 0;  // dropped by the sentiment threshold
  std::size_t subset_removed = 0;   // dropped by the subset filter
  Subset subset = Subset::Entire;
  std::optional<double> threshold;  // unset for synthetic series
  std::string origin = "ingest";

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  std::span<const Bit> bits() const { return values; }

  /// Wraps raw bits as a synthetic series (counters consistent, no threshold).
  static BinarySeries from_bits(std::vector<Bit> bits, std::string origin = "simulate");
};

/// Partition of N observations into S slots of floor(N/S) observations each.
///
/// Indices are expressed on the prediction axis: psi_n (0-based n) predicts
/// values[n]. Slot s covers n in [s*L, (s+1)*L). Observations at or beyond
/// S*L are never used.
class SlotScheme {
 public:
  SlotScheme(std::size_t slots, std::size_t length);

  std::size_t slots() const { return slots_; }
  std::size_t length() const { return length_; }
  std::size_t slot_len() const { return slot_len_; }

  std::size_t begin(std::size_t s) const { return s * slot_len_; }
  std::size_t end(std::size_t s) const { return (s + 1) * slot_len_; }
  /// One past the last prediction index that enters any metric (S*L).
  std::size_t used_length() const { return slots_ * slot_len_; }

 private:
  std::size_t slots_;
  std::size_t length_;
  std::size_t slot_len_;
};

// Text serialization: a '#'-prefixed key=value header followed by one bit per
// line. write_series/read_series round-trip bit-exactly.
void write_series(std::ostream& out, const BinarySeries& series);
BinarySeries read_series(std::istream& in);

}  // namespace rpurn
