#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace athermal {

// One output table; cells are pre-rendered so emission is exact and
// deterministic (identical config + seed => identical bytes).
struct Table {
  std::string name;  // file stem, e.g. "dynamics"
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// %.17g: round-trips every double and never depends on locale.
std::string format_double(double v);
std::string format_int(long long v);

// RFC-4180 quoting: quote when the cell holds comma, quote, CR or LF;
// embedded quotes doubled.
std::string csv_escape(const std::string& cell);

// Header line plus rows, '\n' terminated.
std::string table_to_csv(const Table& table);

// FNV-1a 64-bit checksum of the emitted bytes, as 16 hex digits.
std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

}  // namespace athermal
