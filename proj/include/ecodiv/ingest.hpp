// Copyright 2026 The ecodiv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECODIV_INGEST_HPP
#define ECODIV_INGEST_HPP

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "ecodiv/community.hpp"
#include "ecodiv/error.hpp"
#include "ecodiv/monitor.hpp"
#include "ecodiv/similarity.hpp"

/**
 * \file
 * \brief Readers for the comma-separated input files.
 *
 * Every file is UTF-8 text with one header line and one record per line.
 * Lines whose first non-blank character is `#` are comments; blank lines are
 * ignored. Fields are separated by `,`; a field containing a comma or a quote
 * is wrapped in double quotes, with inner quotes doubled. Numbers always use
 * `.` as the decimal point, whatever the process locale.
 *
 *   snapshot    species,share        optional "# unit: proportion|percent|count"
 *   taxonomy    fine,coarse
 *   similarity  a,b,z
 *   loc         species,lines
 *   shared      a,b,shared_lines
 *   series      directory of snapshots named YYYYMMDDTHHMMSSZ.csv
 */

namespace ecodiv {

namespace detail {

struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct CsvFile {
  std::string path;
  std::vector<CsvRecord> records;       // data rows, header excluded
  std::vector<std::pair<std::size_t, std::string>> comments;  // text after '#'
};

inline std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_fields(std::string_view line, const SourceLocation& where) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (true) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::string field;
    if (i < line.size() && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        field += line[i++];
      }
      if (!closed) throw Error(Errc::ParseError, "unterminated quoted field", where);
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < line.size() && line[i] != ',') {
        throw Error(Errc::ParseError, "unexpected text after quoted field", where);
      }
    } else {
      const auto end = line.find(',', i);
      const auto raw = line.substr(i, end == std::string_view::npos ? std::string_view::npos : end - i);
      if (raw.find('"') != std::string_view::npos) {
        throw Error(Errc::ParseError, "quote inside unquoted field", where);
      }
      field = std::string(trim(raw));
      i = end == std::string_view::npos ? line.size() : end;
    }
    fields.push_back(std::move(field));
    if (i >= line.size()) break;
    ++i;  // the comma
  }
  return fields;
}

inline CsvFile parse_csv(std::istream& in, const std::string& path, const std::vector<std::string>& header) {
  CsvFile file{path, {}, {}};
  std::string line;
  std::size_t number = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    if (number == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    const auto body = trim(view);
    if (body.empty()) continue;
    if (body.front() == '#') {
      file.comments.emplace_back(number, std::string(trim(body.substr(1))));
      continue;
    }
    const SourceLocation where{path, number};
    auto fields = split_fields(body, where);
    if (!seen_header) {
      if (fields != header) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        throw Error(Errc::ParseError, "expected header '" + expected + "'", where);
      }
      seen_header = true;
      continue;
    }
    if (fields.size() != header.size()) {
      throw Error(Errc::ParseError,
                  "expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()),
                  where);
    }
    for (const auto& f : fields) {
      if (f.empty()) throw Error(Errc::ParseError, "empty field", where);
    }
    file.records.push_back({number, std::move(fields)});
  }
  if (in.bad()) throw Error(Errc::IoError, "read failed", SourceLocation{path, 0});
  if (!seen_header) throw Error(Errc::ParseError, "missing header line", SourceLocation{path, 0});
  return file;
}

inline CsvFile read_csv(const std::filesystem::path& path, const std::vector<std::string>& header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open file", SourceLocation{path.string(), 0});
  return parse_csv(in, path.string(), header);
}

inline double parse_real(const std::string& text, const SourceLocation& where) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(Errc::ParseError, "'" + text + "' is not a number", where);
  }
  return value;
}

inline std::uint64_t parse_count(const std::string& text, const SourceLocation& where) {
  if (!text.empty() && text.front() == '-') {
    throw Error(Errc::ParseError, "'" + text + "' is negative", where);
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(Errc::ParseError, "'" + text + "' is not a non-negative integer", where);
  }
  return value;
}

inline std::string quote_field(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos && trim(field) == field && field.front() != '#') {
    return field;
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace detail

/// Reads a `species,share` table. An explicit `unit` wins over the file's
/// `# unit:` directive; with neither, shares are proportions.
inline Community parse_snapshot(std::istream& in, const std::string& path, std::optional<Unit> unit = std::nullopt,
                                std::string name = {}) {
  const auto file = detail::parse_csv(in, path, {"species", "share"});
  std::optional<Unit> declared;
  for (const auto& [line, text] : file.comments) {
    if (text.rfind("unit:", 0) != 0) continue;
    const auto value = detail::trim(std::string_view(text).substr(5));
    declared = parse_unit(value);
    if (!declared) {
      throw Error(Errc::ParseError, "unknown unit '" + std::string(value) + "'", SourceLocation{path, line});
    }
  }
  const Unit effective = unit.value_or(declared.value_or(Unit::proportion));

  std::vector<WeightedLabel> entries;
  std::map<std::string, std::size_t> first_seen;
  for (const auto& record : file.records) {
    const SourceLocation where{path, record.line};
    const double weight = detail::parse_real(record.fields[1], where);
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
      throw Error(Errc::NegativeWeight, "species '" + record.fields[0] + "' has weight " + record.fields[1], where);
    }
    if (auto [it, fresh] = first_seen.emplace(record.fields[0], record.line); !fresh) {
      throw Error(Errc::DuplicateLabel,
                  "species '" + record.fields[0] + "' already listed on line " + std::to_string(it->second), where);
    }
    entries.push_back({record.fields[0], weight});
  }
  if (name.empty()) name = std::filesystem::path(path).stem().string();
  try {
    return make_community(std::move(name), entries, effective);
  } catch (const Error& e) {
    throw e.located(SourceLocation{path, 0});
  }
}

inline Community load_snapshot(const std::filesystem::path& path, std::optional<Unit> unit = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open file", SourceLocation{path.string(), 0});
  return parse_snapshot(in, path.string(), unit);
}

/// Writes `c` as a proportion snapshot that load_snapshot() reads back exactly.
inline void write_snapshot(std::ostream& out, const Community& c) {
  out << "# unit: proportion\n";
  out << "species,share\n";
  char buf[40];
  for (const auto& s : c.species()) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, s.abundance);
    out << detail::quote_field(s.label) << ',' << std::string_view(buf, static_cast<std::size_t>(ptr - buf)) << '\n';
  }
}

inline Taxonomy load_taxonomy(const std::filesystem::path& path) {
  const auto file = detail::read_csv(path, {"fine", "coarse"});
  if (file.records.empty()) throw Error(Errc::ParseError, "taxonomy has no mappings", SourceLocation{path.string(), 0});
  std::map<std::string, std::string> groups;
  for (const auto& record : file.records) {
    if (!groups.emplace(record.fields[0], record.fields[1]).second) {
      throw Error(Errc::DuplicateFineLabel, "fine label '" + record.fields[0] + "' is mapped twice",
                  SourceLocation{path.string(), record.line});
    }
  }
  return Taxonomy(path.stem().string(), std::move(groups));
}

/// Reads `a,b,z` rows. Labels are ordered by first appearance; a row `A,A,1`
/// declares a species without relating it to anything.
inline SimilarityMatrix load_similarity(const std::filesystem::path& path) {
  const auto file = detail::read_csv(path, {"a", "b", "z"});
  if (file.records.empty()) throw Error(Errc::ParseError, "similarity file has no rows", SourceLocation{path.string(), 0});
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  const auto intern = [&](const std::string& label) {
    auto [it, fresh] = index.emplace(label, labels.size());
    if (fresh) labels.push_back(label);
    return it->second;
  };
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, std::size_t>> pairs;
  for (const auto& record : file.records) {
    const SourceLocation where{path.string(), record.line};
    const double z = detail::parse_real(record.fields[2], where);
    if (!(z >= 0.0 && z <= 1.0)) {
      throw Error(Errc::ValueOutOfRange, "similarity " + record.fields[2] + " outside [0, 1]", where);
    }
    const std::size_t i = intern(record.fields[0]);
    const std::size_t j = intern(record.fields[1]);
    if (i == j) {
      if (z != 1.0) throw Error(Errc::ValueOutOfRange, "self-similarity must be 1", where);
      continue;
    }
    const auto key = std::minmax(i, j);
    if (auto [it, fresh] = pairs.emplace(key, std::pair{z, record.line}); !fresh && it->second.first != z) {
      throw Error(Errc::ConflictingPair,
                  "pair '" + record.fields[0] + "','" + record.fields[1] + "' conflicts with line " +
                      std::to_string(it->second.second),
                  where);
    }
  }
  const std::size_t n = labels.size();
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) values[i * n + i] = 1.0;
  for (const auto& [key, entry] : pairs) {
    values[key.first * n + key.second] = values[key.second * n + key.first] = entry.first;
  }
  return {std::move(labels), std::move(values)};
}

inline std::vector<LinesOfCode> load_lines_of_code(const std::filesystem::path& path) {
  const auto file = detail::read_csv(path, {"species", "lines"});
  std::vector<LinesOfCode> out;
  for (const auto& record : file.records) {
    out.push_back({record.fields[0], detail::parse_count(record.fields[1], {path.string(), record.line})});
  }
  return out;
}

inline std::vector<SharedCode> load_shared_code(const std::filesystem::path& path) {
  const auto file = detail::read_csv(path, {"a", "b", "shared_lines"});
  std::vector<SharedCode> out;
  for (const auto& record : file.records) {
    out.push_back({record.fields[0], record.fields[1],
                   detail::parse_count(record.fields[2], {path.string(), record.line})});
  }
  return out;
}

/// Parses an ISO-8601 UTC instant, basic ("20130601T000000Z") or extended
/// ("2013-06-01T00:00:00Z").
inline std::optional<Timestamp> parse_basic_timestamp(std::string_view input) {
  std::string text(input);
  if (text.size() == 20 && text[4] == '-' && text[7] == '-' && text[13] == ':' && text[16] == ':') {
    text = text.substr(0, 4) + text.substr(5, 2) + text.substr(8, 5) + text.substr(14, 2) + text.substr(17);
  }
  if (text.size() != 16 || text[8] != 'T' || text[15] != 'Z') return std::nullopt;
  const auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, value);
    if (ec != std::errc{} || ptr != text.data() + pos + len) return std::nullopt;
    return value;
  };
  for (std::size_t i : {0u, 1u, 2u, 3u, 4u, 5u, 6u, 7u, 9u, 10u, 11u, 12u, 13u, 14u}) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  const auto y = digits(0, 4), mo = digits(4, 2), d = digits(6, 2);
  const auto h = digits(9, 2), mi = digits(11, 2), s = digits(13, 2);
  if (!y || !mo || !d || !h || !mi || !s) return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*mo)},
                                        std::chrono::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok() || *h > 23 || *mi > 59 || *s > 59) return std::nullopt;
  return std::chrono::sys_days{ymd} + std::chrono::hours{*h} + std::chrono::minutes{*mi} +
         std::chrono::seconds{*s};
}

/// Snapshot files of a series directory in chronological order. Hidden files
/// are skipped; any other file must be named `<timestamp>.csv`.
inline std::vector<std::pair<Timestamp, std::filesystem::path>> list_series_files(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(Errc::IoError, "not a directory", SourceLocation{dir.string(), 0});
  }
  std::vector<std::pair<Timestamp, std::filesystem::path>> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto filename = entry.path().filename().string();
    if (filename.empty() || filename.front() == '.') continue;
    if (!entry.is_regular_file()) {
      throw Error(Errc::BadFilename, "not a regular file", SourceLocation{entry.path().string(), 0});
    }
    const auto stamp = entry.path().extension() == ".csv" ? parse_basic_timestamp(entry.path().stem().string())
                                                          : std::nullopt;
    if (!stamp) {
      throw Error(Errc::BadFilename, "expected a name like 20130601T000000Z.csv",
                  SourceLocation{entry.path().string(), 0});
    }
    files.emplace_back(*stamp, entry.path());
  }
  std::sort(files.begin(), files.end());
  for (std::size_t i = 1; i < files.size(); ++i) {
    if (files[i].first == files[i - 1].first) {
      throw Error(Errc::DuplicateTimestamp,
                  "same instant as " + files[i - 1].second.filename().string(),
                  SourceLocation{files[i].second.string(), 0});
    }
  }
  if (files.empty()) throw Error(Errc::IoError, "no snapshot files", SourceLocation{dir.string(), 0});
  return files;
}

inline EcosystemSeries load_series(const std::filesystem::path& dir, std::optional<Unit> unit = std::nullopt) {
  std::vector<Snapshot> snapshots;
  for (const auto& [stamp, path] : list_series_files(dir)) {
    snapshots.push_back({stamp, load_snapshot(path, unit)});
  }
  auto name = dir.filename().string();
  if (name.empty()) name = dir.parent_path().filename().string();
  return EcosystemSeries(std::move(name), std::move(snapshots));
}

}  // namespace ecodiv

#endif  // ECODIV_INGEST_HPP
