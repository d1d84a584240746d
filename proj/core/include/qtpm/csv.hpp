#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qtpm::io {

// Numeric table with leading comment lines ("# key: value").
struct CsvTable {
    std::vector<std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// FNV-1a, 64 bit. Used to stamp outputs with a digest of the generating
// configuration so a CSV can be matched to its inputs later.
std::uint64_t fnv1a64(std::string_view text);

std::string hex64(std::uint64_t value);

// Shortest round-trip decimal form (printf %.17g).
std::string format_value(double value);

std::string render(const CsvTable& table);

// Writes via a sibling temp file and rename so readers never observe a
// partially written table.
void write_csv(const CsvTable& table, const std::string& path);

} // namespace qtpm::io
