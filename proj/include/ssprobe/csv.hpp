#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ssprobe::csv {

using Row = std::vector<std::string>;

/// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line ends.
/// Blank lines are skipped.
std::vector<Row> parse(std::string_view text);

std::string quote(std::string_view field);
std::string joinRow(const Row& row);

/// Shortest decimal that round-trips to the same value.
std::string shortest(double value);
std::string shortest(float value);

/// Fixed-point formatting, "%.<digits>f".
std::string fixed(double value, int digits);

/// Strict whole-field parses; throw Error(FormatViolation) on junk.
double parseDouble(std::string_view text);
float parseFloat(std::string_view text);
long long parseInt(std::string_view text);

}  // namespace ssprobe::csv
