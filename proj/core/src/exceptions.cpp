// Copyright 2026 The dasim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dasim/exceptions.hpp"

namespace dasim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kWrongDimension: return "WrongDimension";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDegenerateEndpoint: return "DegenerateEndpoint";
    case ErrorCode::kDegenerateGround: return "DegenerateGround";
    case ErrorCode::kDegeneratePath: return "DegeneratePath";
    case ErrorCode::kGapClosure: return "GapClosure";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kOmegaZero: return "OmegaZero";
    case ErrorCode::kAllPass: return "AllPass";
    case ErrorCode::kAllFail: return "AllFail";
  }
  return "Unknown";
}

}  // namespace dasim
