// decoder/rescore.cc

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

#include "decoder/rescore.h"

#include <algorithm>

namespace deltadec {

std::vector<Hypothesis> RescoreNBest(const std::vector<Hypothesis>& nbest,
                                     FusionSession* session) {
  if (session == nullptr) throw ConfigError("rescoring needs a fusion session");
  std::vector<Hypothesis> out;
  out.reserve(nbest.size());
  for (const Hypothesis& h : nbest) {
    Hypothesis r = h;
    r.lm_cost = session->SentenceFusedLmCost(h.words);
    r.total_cost = r.acoustic_cost + r.lm_cost;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const Hypothesis& a, const Hypothesis& b) {
    if (a.total_cost != b.total_cost) return a.total_cost < b.total_cost;
    return a.words < b.words;
  });
  return out;
}

}  // namespace deltadec
