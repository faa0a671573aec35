// base/common.h

// Copyright 2026  Deltadec Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DELTADEC_BASE_COMMON_H_
#define DELTADEC_BASE_COMMON_H_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace deltadec {

using int32 = std::int32_t;
using int64 = std::int64_t;
using uint64 = std::uint64_t;

// All scores live in the negated natural-log domain ("cost", lower is
// better).  Tropical semiring: Plus = min, Times = +.
constexpr double kInfCost = std::numeric_limits<double>::infinity();

inline double SemiringPlus(double a, double b) { return a < b ? a : b; }
inline double SemiringTimes(double a, double b) { return a + b; }
constexpr double kSemiringZero = kInfCost;
constexpr double kSemiringOne = 0.0;

// Error taxonomy.  The CLI maps these onto exit codes: user-facing input,
// config, parse and contract errors exit 1, everything else exits 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error("input error: " + msg) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& file, int64 line, const std::string& msg)
      : Error("parse error: " + file + ":" + std::to_string(line) + ": " + msg) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& msg) : Error("contract violation: " + msg) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

class TrainingDivergence : public Error {
 public:
  TrainingDivergence(int epoch, const std::string& msg)
      : Error("training diverged at epoch " + std::to_string(epoch) + ": " + msg) {}
};

}  // namespace deltadec

#endif  // DELTADEC_BASE_COMMON_H_
