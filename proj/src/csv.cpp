#include "ssprobe/csv.hpp"

#include <charconv>
#include <cstdio>

#include "ssprobe/error.hpp"

namespace ssprobe::csv {

std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool inQuotes = false;
  bool fieldStarted = false;
  auto endRow = [&] {
    if (fieldStarted || !row.empty()) {
      row.push_back(std::move(field));
      rows.push_back(std::move(row));
    }
    row.clear();
    field.clear();
    fieldStarted = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (inQuotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          inQuotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        inQuotes = true;
        fieldStarted = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        fieldStarted = true;
        break;
      case '\r':
        break;
      case '\n':
        endRow();
        break;
      default:
        field += c;
        fieldStarted = true;
    }
  }
  if (inQuotes) throw Error(ErrorCode::FormatViolation, "unterminated quoted CSV field");
  endRow();
  return rows;
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string joinRow(const Row& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    out += quote(row[i]);
  }
  return out;
}

std::string shortest(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string shortest(float value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  std::string out(buf);
  // "-0.00" reads badly in tables
  if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') out.erase(0, 1);
  return out;
}

namespace {

template <typename T>
T parseNumber(std::string_view text, const char* what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw Error(ErrorCode::FormatViolation,
                std::string("cannot parse ") + what + " from \"" + std::string(text) + "\"");
  }
  return value;
}

}  // namespace

double parseDouble(std::string_view text) { return parseNumber<double>(text, "number"); }
float parseFloat(std::string_view text) { return parseNumber<float>(text, "float"); }
long long parseInt(std::string_view text) { return parseNumber<long long>(text, "integer"); }

}  // namespace ssprobe::csv
