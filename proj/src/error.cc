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

#include "anonrec/error.h"

namespace anonrec {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDuplicateEntry: return "DuplicateEntry";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kRatingOutOfScale: return "RatingOutOfScale";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kInsufficientRatings: return "InsufficientRatings";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kEmptyCluster: return "EmptyCluster";
    case ErrorCode::kUnknownUser: return "UnknownUser";
    case ErrorCode::kEmptyTestSet: return "EmptyTestSet";
    case ErrorCode::kNoComparableItems: return "NoComparableItems";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kFormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kMissingAnonymizedMatrix: return "MissingAnonymizedMatrix";
    case ErrorCode::kMissingAssignmentMap: return "MissingAssignmentMap";
    case ErrorCode::kModelInputMismatch: return "ModelInputMismatch";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace anonrec
