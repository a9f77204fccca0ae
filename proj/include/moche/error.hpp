// Copyright 2026 The MOCHE Authors
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

#ifndef MOCHE_ERROR_HPP_
#define MOCHE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace moche {

// Every failure the library reports deliberately. Anything else escaping the
// library is a bug.
enum class Errc {
  kInvalidSignificance,
  kEmptySample,
  kUnknownPointId,
  kDuplicatePointId,
  kExceedsMultiplicity,
  kRemovedEverything,
  kInvalidSize,
  kInvalidIndex,
  kSubsetTooLarge,
  kNotQualifiedSize,
  kNoExplanationExists,
  kTestNotFailed,
  kInvalidPreference,
  kInstanceTooLarge,
  kInternalVerificationFailure,
  kParseError,
  kSeriesTooShort,
  kInvalidWindow,
  kInvalidFraction,
  kRetriesExhausted,
};

// Stable CamelCase name, e.g. "InvalidSignificance". Used in CLI output.
const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace moche

#endif  // MOCHE_ERROR_HPP_
