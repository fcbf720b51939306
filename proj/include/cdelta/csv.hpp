#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "cdelta/error.hpp"
#include "cdelta/series.hpp"

namespace cdelta {

enum class MissingPolicy { kError, kDropPairwise };

/// Raw cells of a comma-separated file. The first row is taken as a header
/// when any of its non-empty cells fails to parse as a number.
struct InputTable {
  std::vector<std::string> header;           // empty when the file has none
  std::vector<std::vector<std::string>> rows;  // data rows, cells untrimmed
  std::vector<std::size_t> line_numbers;     // 1-based file line of each row
  std::string source;

  std::size_t row_count() const noexcept { return rows.size(); }
};

namespace csv_detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Locale-independent; accepts a leading '+'. Fails on trailing garbage.
inline std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Splits one line on commas, honoring double-quoted fields ("" escapes a quote).
inline std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

inline bool looks_like_header(const std::vector<std::string>& cells) {
  for (const auto& c : cells) {
    if (!trim(c).empty() && !parse_number(c)) return true;
  }
  return false;
}

}  // namespace csv_detail

inline InputTable parse_csv(std::istream& in, std::string source = "<stream>") {
  InputTable table;
  table.source = std::move(source);
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);  // UTF-8 BOM
    if (csv_detail::trim(line).empty()) continue;
    auto cells = csv_detail::split_line(line);
    if (first) {
      first = false;
      if (csv_detail::looks_like_header(cells)) {
        for (auto& c : cells) c = std::string(csv_detail::trim(c));
        table.header = std::move(cells);
        continue;
      }
    }
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(line_no);
  }
  return table;
}

inline InputTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kFileNotFound, "cannot open input file", {{"path", path.string()}});
  }
  return parse_csv(in, path.string());
}

/// Resolves a selector to a zero-based column index: a header name first,
/// then a non-negative integer index.
inline std::size_t resolve_column(const InputTable& table, const std::string& selector) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == selector) return i;
  }
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(selector.data(), selector.data() + selector.size(), index);
  const bool numeric = !selector.empty() && ec == std::errc{} && ptr == selector.data() + selector.size();
  std::size_t width = table.header.size();
  for (const auto& row : table.rows) width = std::max(width, row.size());
  if (numeric && index < width) return index;
  throw Error(ErrorKind::kColumnNotFound, "column not found",
              {{"column", selector}, {"source", table.source}});
}

inline PairedSample table_to_sample(const InputTable& table, const std::string& x_selector,
                                    const std::string& y_selector,
                                    MissingPolicy policy = MissingPolicy::kError) {
  const std::size_t xc = resolve_column(table, x_selector);
  const std::size_t yc = resolve_column(table, y_selector);

  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(table.row_count());
  ys.reserve(table.row_count());

  auto cell = [&](std::size_t r, std::size_t c) -> std::optional<double> {
    const auto& row = table.rows[r];
    const std::string_view raw = c < row.size() ? std::string_view(row[c]) : std::string_view{};
    if (csv_detail::trim(raw).empty()) {
      if (policy == MissingPolicy::kDropPairwise) return std::nullopt;
      throw Error(ErrorKind::kParseError, "missing value",
                  {{"row", std::to_string(table.line_numbers[r])},
                   {"column", std::to_string(c)},
                   {"source", table.source}});
    }
    auto v = csv_detail::parse_number(raw);
    if (!v) {
      throw Error(ErrorKind::kParseError, "cell is not a number",
                  {{"row", std::to_string(table.line_numbers[r])},
                   {"column", std::to_string(c)},
                   {"value", std::string(csv_detail::trim(raw))},
                   {"source", table.source}});
    }
    if (!std::isfinite(*v)) {
      throw Error(ErrorKind::kNonFiniteValue, "cell is not finite",
                  {{"row", std::to_string(table.line_numbers[r])},
                   {"column", std::to_string(c)},
                   {"source", table.source}});
    }
    return v;
  };

  for (std::size_t r = 0; r < table.row_count(); ++r) {
    const auto xv = cell(r, xc);
    const auto yv = cell(r, yc);
    if (!xv || !yv) continue;
    xs.push_back(*xv);
    ys.push_back(*yv);
  }

  if (xs.empty() && table.row_count() > 0 && policy == MissingPolicy::kDropPairwise) {
    throw Error(ErrorKind::kEmptyAfterDrop, "no complete rows remain after dropping missing values",
                {{"source", table.source}});
  }
  return PairedSample(RealSeries(std::move(xs)), RealSeries(std::move(ys)));
}

inline PairedSample ingest_csv(const std::filesystem::path& path, const std::string& x_selector,
                               const std::string& y_selector,
                               MissingPolicy policy = MissingPolicy::kError) {
  return table_to_sample(read_csv(path), x_selector, y_selector, policy);
}

}  // namespace cdelta
