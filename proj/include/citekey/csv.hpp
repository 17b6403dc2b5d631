#ifndef CITEKEY_CSV_HPP_
#define CITEKEY_CSV_HPP_

// Minimal RFC 4180 reader and writer: comma separator, '"' quoting with ""
// escapes, quoted fields may span lines, CRLF or LF record ends.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "citekey/error.hpp"

namespace citekey {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

inline std::vector<CsvRecord> parse_csv(std::string_view data) {
  std::vector<CsvRecord> records;
  CsvRecord rec;
  std::string field;
  std::size_t line = 1;
  rec.line = 1;
  bool in_quotes = false;
  bool quoted = false;       // current field was quoted
  bool after_quote = false;  // closing quote seen; only separator or EOL may follow
  bool field_started = false;
  std::size_t quote_line = 0;

  const auto end_field = [&] {
    rec.fields.push_back(std::move(field));
    field.clear();
    quoted = after_quote = field_started = false;
  };
  const auto end_record = [&] {
    end_field();
    records.push_back(std::move(rec));
    rec = CsvRecord{};
    rec.line = line;
  };

  for (std::size_t i = 0; i < data.size(); ++i) {
    const char c = data[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == ',') {
      end_field();
      field_started = true;  // a separator implies a following field
      continue;
    }
    if (c == '\r' && i + 1 < data.size() && data[i + 1] == '\n') continue;
    if (c == '\n') {
      ++line;
      const bool blank = rec.fields.empty() && field.empty() && !quoted && !field_started;
      if (blank) {
        rec.line = line;
        continue;
      }
      end_record();
      continue;
    }
    if (after_quote) {
      throw DataError("load", "CSV line " + std::to_string(line) + ": unexpected character after closing quote");
    }
    if (c == '"' && field.empty() && !quoted) {
      in_quotes = quoted = true;
      quote_line = line;
      continue;
    }
    field += c;
  }
  if (in_quotes) {
    throw DataError("load", "CSV line " + std::to_string(quote_line) + ": unbalanced quote");
  }
  if (!field.empty() || quoted || !rec.fields.empty() || field_started) end_record();
  return records;
}

inline std::string csv_escape(std::string_view field) {
  const bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                     (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

template <typename Range>
std::string csv_row(const Range& fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ',';
    first = false;
    out += csv_escape(f);
  }
  out += '\n';
  return out;
}

}  // namespace citekey

#endif  // CITEKEY_CSV_HPP_
