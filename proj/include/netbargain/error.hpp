// Copyright 2026 The netbargain Authors
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

#ifndef NETBARGAIN_ERROR_HPP
#define NETBARGAIN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace netbargain {

enum class Errc {
  MalformedInput,
  MalformedValue,
  DuplicateAgent,
  DuplicateLink,
  NegativeValue,
  UnknownAgent,
  LinkNotPresent,
  SameSide,
  DimensionMismatch,
  InvalidMatching,
  InfeasibleOutcome,
  NotOptimal,
  CapExceeded,
  NotMatchable,
  InfeasibleThreat,
  SplitMismatch,
  NotUnitSurplus,
  NotEndpoint,
  TooLarge,
  InvalidArgument,
  InternalConsistency,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::MalformedValue: return "MalformedValue";
    case Errc::DuplicateAgent: return "DuplicateAgent";
    case Errc::DuplicateLink: return "DuplicateLink";
    case Errc::NegativeValue: return "NegativeValue";
    case Errc::UnknownAgent: return "UnknownAgent";
    case Errc::LinkNotPresent: return "LinkNotPresent";
    case Errc::SameSide: return "SameSide";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidMatching: return "InvalidMatching";
    case Errc::InfeasibleOutcome: return "InfeasibleOutcome";
    case Errc::NotOptimal: return "NotOptimal";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NotMatchable: return "NotMatchable";
    case Errc::InfeasibleThreat: return "InfeasibleThreat";
    case Errc::SplitMismatch: return "SplitMismatch";
    case Errc::NotUnitSurplus: return "NotUnitSurplus";
    case Errc::NotEndpoint: return "NotEndpoint";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

/// Every failure raised by the library. `path()` is a JSON pointer into the
/// offending document for parse errors and empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string path = {})
      : std::runtime_error(format(code, message, path)),
        code_(code),
        path_(std::move(path)) {}

  Errc code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  static std::string format(Errc code, const std::string& message,
                            const std::string& path) {
    std::string out(errc_name(code));
    if (!path.empty()) out += " at " + path;
    out += ": " + message;
    return out;
  }

  Errc code_;
  std::string path_;
};

}  // namespace netbargain

#endif  // NETBARGAIN_ERROR_HPP
