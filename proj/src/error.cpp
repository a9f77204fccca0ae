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

#include "moche/error.hpp"

namespace moche {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidSignificance:
      return "InvalidSignificance";
    case Errc::kEmptySample:
      return "EmptySample";
    case Errc::kUnknownPointId:
      return "UnknownPointId";
    case Errc::kDuplicatePointId:
      return "DuplicatePointId";
    case Errc::kExceedsMultiplicity:
      return "ExceedsMultiplicity";
    case Errc::kRemovedEverything:
      return "RemovedEverything";
    case Errc::kInvalidSize:
      return "InvalidSize";
    case Errc::kInvalidIndex:
      return "InvalidIndex";
    case Errc::kSubsetTooLarge:
      return "SubsetTooLarge";
    case Errc::kNotQualifiedSize:
      return "NotQualifiedSize";
    case Errc::kNoExplanationExists:
      return "NoExplanationExists";
    case Errc::kTestNotFailed:
      return "TestNotFailed";
    case Errc::kInvalidPreference:
      return "InvalidPreference";
    case Errc::kInstanceTooLarge:
      return "InstanceTooLarge";
    case Errc::kInternalVerificationFailure:
      return "InternalVerificationFailure";
    case Errc::kParseError:
      return "ParseError";
    case Errc::kSeriesTooShort:
      return "SeriesTooShort";
    case Errc::kInvalidWindow:
      return "InvalidWindow";
    case Errc::kInvalidFraction:
      return "InvalidFraction";
    case Errc::kRetriesExhausted:
      return "RetriesExhausted";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what),
      code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace moche
