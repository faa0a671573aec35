// nnet/grad-check.cc

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

#include "nnet/grad-check.h"

#include <cmath>

namespace deltadec {

double GradCheckMaxRelError(const LstmModel& model,
                            const std::vector<std::vector<int32>>& batch,
                            const Vocabulary& vocab) {
  if (batch.empty()) throw InputError("gradient check needs a non-empty batch");

  LstmModel analytic = ZeroLike(model);
  CeLossAndGrad(model, batch, vocab, &analytic);

  LstmModel work = model;
  std::vector<std::pair<double*, size_t>> wp, ap;
  ForEachParam<double>(work, [&wp](double* p, size_t n) { wp.emplace_back(p, n); });
  ForEachParam<double>(analytic, [&ap](double* p, size_t n) { ap.emplace_back(p, n); });

  const double step = 1e-5;
  double max_rel = 0.0;
  for (size_t g = 0; g < wp.size(); ++g) {
    for (size_t i = 0; i < wp[g].second; ++i) {
      double orig = wp[g].first[i];
      wp[g].first[i] = orig + step;
      double lp = CeLossAndGrad(work, batch, vocab, nullptr);
      wp[g].first[i] = orig - step;
      double lm = CeLossAndGrad(work, batch, vocab, nullptr);
      wp[g].first[i] = orig;
      double numeric = (lp - lm) / (2.0 * step);
      double a = ap[g].first[i];
      double rel = std::abs(a - numeric) /
                   std::max(std::abs(a) + std::abs(numeric), 1e-4);
      max_rel = std::max(max_rel, rel);
    }
  }
  return max_rel;
}

}  // namespace deltadec
