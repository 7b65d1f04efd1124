#pragma once

#include <string>
#include <vector>

namespace macrocast::io {

// Minimal CSV support for the flat comma-separated formats used here.
// No quoting: none of the emitted formats need it, and inputs containing
// quotes or embedded commas are rejected upstream by field validation.

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads a CSV with a header line. Throws DataError on missing file, empty
// file, or rows whose field count differs from the header.
CsvTable read_csv(const std::string& path);

std::vector<std::string> split_csv_line(const std::string& line);

// Shortest round-trip decimal rendering (via std::to_chars) so that emitted
// CSVs are byte-identical across runs and machines.
std::string format_double(double v);

double parse_double(const std::string& s);
long parse_long(const std::string& s);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace macrocast::io
