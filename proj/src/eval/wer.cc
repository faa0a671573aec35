// eval/wer.cc

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

#include "eval/wer.h"

#include <vector>

namespace deltadec {

WerStats ComputeWer(std::span<const int32> ref, std::span<const int32> hyp) {
  if (ref.empty()) throw InputError("WER is undefined for an empty reference");
  const size_t R = ref.size(), H = hyp.size();
  std::vector<std::vector<int64>> dp(R + 1, std::vector<int64>(H + 1, 0));
  for (size_t i = 0; i <= R; ++i) dp[i][0] = static_cast<int64>(i);
  for (size_t j = 0; j <= H; ++j) dp[0][j] = static_cast<int64>(j);
  for (size_t i = 1; i <= R; ++i) {
    for (size_t j = 1; j <= H; ++j) {
      int64 diag = dp[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      int64 ins = dp[i][j - 1] + 1;
      int64 del = dp[i - 1][j] + 1;
      dp[i][j] = std::min(diag, std::min(ins, del));
    }
  }

  WerStats stats;
  stats.ref_words = static_cast<int64>(R);
  size_t i = R, j = H;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        dp[i][j] == dp[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) ++stats.substitutions;
      --i;
      --j;
    } else if (j > 0 && dp[i][j] == dp[i][j - 1] + 1) {
      ++stats.insertions;
      --j;
    } else {
      ++stats.deletions;
      --i;
    }
  }
  return stats;
}

}  // namespace deltadec
