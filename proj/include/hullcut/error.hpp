// Copyright 2026 The hullcut Authors.
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hullcut {

enum class ErrorCode {
  IndexOutOfRange,
  NonManifoldEdge,
  OpenBoundary,
  InconsistentOrientation,
  DegenerateTriangle,
  ZeroVolume,
  DegenerateHull,
  EmptyInterior,
  EmptySide,
  OpenChain,
  TriangulationFailure,
  NoValidCandidates,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code);

/// Thrown by every fallible geometry operation. `elements` carries the
/// offending vertex/triangle/edge indices when the failure is local.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what, std::vector<std::size_t> elements = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        elements_(std::move(elements)) {}

  ErrorCode code() const { return code_; }
  const std::vector<std::size_t>& elements() const { return elements_; }

  bool is_validation() const {
    switch (code_) {
      case ErrorCode::IndexOutOfRange:
      case ErrorCode::NonManifoldEdge:
      case ErrorCode::OpenBoundary:
      case ErrorCode::InconsistentOrientation:
      case ErrorCode::DegenerateTriangle:
      case ErrorCode::ZeroVolume:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
  std::vector<std::size_t> elements_;
};

}  // namespace hullcut
