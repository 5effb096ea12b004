// Copyright 2026 The anonrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANONREC_ERROR_H_
#define ANONREC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace anonrec {

enum class ErrorCode {
  kInvalidArgument,
  kDuplicateEntry,
  kIndexOutOfRange,
  kRatingOutOfScale,
  kEmptyMatrix,
  kInsufficientRatings,
  kInvalidK,
  kEmptyCluster,
  kUnknownUser,
  kEmptyTestSet,
  kNoComparableItems,
  kMalformedLine,
  kFormatVersionMismatch,
  kChecksumMismatch,
  kMissingAnonymizedMatrix,
  kMissingAssignmentMap,
  kModelInputMismatch,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as Error. what() is prefixed with the
// code name, e.g. "InvalidK: k=0 must be in [1, 943]".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace anonrec

#endif  // ANONREC_ERROR_H_
