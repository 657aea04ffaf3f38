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

#ifndef ECODIV_ERROR_HPP
#define ECODIV_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ecodiv {

enum class Errc {
  // community
  DuplicateLabel,
  EmptyLabel,
  NegativeWeight,
  SumOutOfTolerance,
  AllZero,
  UnmappedLabel,
  InvalidArgument,
  // indices
  NegativeOrder,
  ValueOutOfRange,
  // similarity
  SharedExceedsTotal,
  UnknownLabel,
  MissingSpecies,
  // survival
  InvalidModel,
  // monitor
  InvalidSeries,
  InvalidPolicy,
  TooFewSnapshots,
  // cli
  InvalidGrid,
  // ingest (file-level problems)
  IoError,
  ParseError,
  DuplicateFineLabel,
  ConflictingPair,
  BadFilename,
  DuplicateTimestamp,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::EmptyLabel: return "EmptyLabel";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::SumOutOfTolerance: return "SumOutOfTolerance";
    case Errc::AllZero: return "AllZero";
    case Errc::UnmappedLabel: return "UnmappedLabel";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NegativeOrder: return "NegativeOrder";
    case Errc::ValueOutOfRange: return "ValueOutOfRange";
    case Errc::SharedExceedsTotal: return "SharedExceedsTotal";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::MissingSpecies: return "MissingSpecies";
    case Errc::InvalidModel: return "InvalidModel";
    case Errc::InvalidSeries: return "InvalidSeries";
    case Errc::InvalidPolicy: return "InvalidPolicy";
    case Errc::TooFewSnapshots: return "TooFewSnapshots";
    case Errc::InvalidGrid: return "InvalidGrid";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateFineLabel: return "DuplicateFineLabel";
    case Errc::ConflictingPair: return "ConflictingPair";
    case Errc::BadFilename: return "BadFilename";
    case Errc::DuplicateTimestamp: return "DuplicateTimestamp";
  }
  return "Unknown";
}

/// True for errors caused by unreadable or malformed input files, as opposed
/// to well-formed input whose values violate a domain constraint.
constexpr bool is_input_error(Errc code) noexcept {
  switch (code) {
    case Errc::IoError:
    case Errc::ParseError:
    case Errc::DuplicateFineLabel:
    case Errc::ConflictingPair:
    case Errc::BadFilename:
    case Errc::DuplicateTimestamp:
      return true;
    default:
      return false;
  }
}

/// Where in an input file an error was detected. Lines are 1-based; line 0
/// means the error concerns the file as a whole.
struct SourceLocation {
  std::string path;
  std::size_t line = 0;
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Error(Errc code, const std::string& message, SourceLocation where)
      : std::runtime_error(format_located(code, message, where)),
        code_(code),
        where_(std::move(where)) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }
  [[nodiscard]] const std::optional<SourceLocation>& where() const noexcept { return where_; }

  /// Re-raise with a file location attached, keeping the original code.
  [[nodiscard]] Error located(SourceLocation where) const {
    std::string message = what();
    const auto prefix = std::string(to_string(code_)) + ": ";
    if (message.rfind(prefix, 0) == 0) {
      message.erase(0, prefix.size());
    }
    return Error(code_, message, std::move(where));
  }

 private:
  static std::string format_located(Errc code, const std::string& message,
                                    const SourceLocation& where) {
    std::string out = where.path;
    if (where.line > 0) {
      out += ":" + std::to_string(where.line);
    }
    out += ": ";
    out += to_string(code);
    out += ": ";
    out += message;
    return out;
  }

  Errc code_;
  std::optional<SourceLocation> where_;
};

}  // namespace ecodiv

#endif  // ECODIV_ERROR_HPP
