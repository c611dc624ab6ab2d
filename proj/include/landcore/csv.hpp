#pragma once

// Small text helpers shared by the CSV, JSON and SVG writers.

#include <string>
#include <string_view>
#include <vector>

namespace landcore {

// Shortest decimal that round-trips to the same double; "inf"/"-inf"/"nan"
// for non-finite values.
std::string format_number(double v);

// Quotes a CSV field when it holds a comma, quote or line break.
std::string csv_field(std::string_view s);

// Rows of comma-separated fields with surrounding whitespace removed.
// Blank lines and lines starting with '#' are skipped. Quoted fields are
// not supported; the inputs read this way are purely numeric.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// Parses a finite double from the whole of s; throws ValidationError.
double parse_double(std::string_view s, std::string_view what);
long long parse_integer(std::string_view s, std::string_view what);

// Splits "a,b,c" into numbers; throws ValidationError unless there are
// exactly `count` of them (count 0 accepts any number > 0).
std::vector<double> parse_number_list(std::string_view s, std::size_t count, std::string_view what);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

} // namespace landcore
