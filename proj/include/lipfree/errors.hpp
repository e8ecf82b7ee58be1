// Copyright 2026 The lipfree authors.
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

#ifndef LIPFREE_ERRORS_HPP
#define LIPFREE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace lipfree {

enum class Err {
  EmptyInput,
  NotFullDimensional,
  OriginNotInterior,
  Unbounded,
  DimensionMismatch,
  TooFewGenerators,
  PointNotOnBoundary,
  NotAMetric,
  Disconnected,
  DimensionTooSmall,
  SearchBudgetExceeded,
  InvalidConfig,
  ParseError,
  Internal,
};

const char* err_name(Err e);

class LipfreeError : public std::runtime_error {
 public:
  LipfreeError(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

// One metric-axiom violation, with the witnessing indices.
struct MetricViolation {
  enum class Kind { NotSquare, Asymmetric, NonzeroDiagonal, NonPositive, Triangle };
  Kind kind;
  int i = -1;
  int j = -1;
  int k = -1;  // only for Triangle: d[i][j] > d[i][k] + d[k][j]
  std::string describe() const;
};

class NotAMetricError : public LipfreeError {
 public:
  NotAMetricError(std::vector<MetricViolation> violations, const std::string& what)
      : LipfreeError(Err::NotAMetric, what), violations_(std::move(violations)) {}
  const std::vector<MetricViolation>& violations() const { return violations_; }

 private:
  std::vector<MetricViolation> violations_;
};

}  // namespace lipfree

#endif  // LIPFREE_ERRORS_HPP
