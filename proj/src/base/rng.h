// base/rng.h

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

#ifndef DELTADEC_BASE_RNG_H_
#define DELTADEC_BASE_RNG_H_

#include <random>
#include <string>

#include "base/common.h"
#include "base/io.h"

namespace deltadec {

// Every random draw in the toolkit goes through one of these engines, seeded
// explicitly.  DeriveSeed gives submodules independent streams from one
// user-facing --seed.
class Rng {
 public:
  explicit Rng(uint64 seed) : engine_(seed) {}

  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  // Inclusive bounds.
  int64 UniformInt(int64 lo, int64 hi) {
    return std::uniform_int_distribution<int64>(lo, hi)(engine_);
  }
  double Gaussian(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }
  uint64 Bits() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline uint64 DeriveSeed(uint64 base, const std::string& tag) {
  return HashCombine(Fnv1a64(tag), base ^ 0x9e3779b97f4a7c15ull);
}

}  // namespace deltadec

#endif  // DELTADEC_BASE_RNG_H_
