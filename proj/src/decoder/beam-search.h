// decoder/beam-search.h

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

#ifndef DELTADEC_DECODER_BEAM_SEARCH_H_
#define DELTADEC_DECODER_BEAM_SEARCH_H_

#include "decoder/graph.h"
#include "fusion/fusion.h"
#include "sim/frames.h"

namespace deltadec {

struct DecodeConfig {
  double beam = 1e30;        // cost offset against the best token per frame
  int max_active = 0;        // 0 = unlimited
  int nbest = 1;
  int ngram_approx_n = -1;   // recombination order; -1 = exact full history
  int frames_per_symbol = 1; // every graph arc consumes this many frames

  void Validate() const;
};

struct Hypothesis {
  std::vector<int32> words;
  double acoustic_cost = 0.0;
  double lm_cost = 0.0;   // graph cost plus fused deltas, incl. final terms
  double total_cost = 0.0;
};

struct DecodeStats {
  std::vector<int64> tokens_per_step;  // surviving tokens per frame block
  CacheStats cache;                    // zeroed when fusion is inactive
  std::string diagnostic;              // non-empty when the beam emptied
};

struct DecodeResult {
  std::vector<Hypothesis> nbest;
  DecodeStats stats;
};

// Frame-synchronous Viterbi token passing.  Word-emitting arcs add the
// fusion delta when a session is supplied; tokens sharing a recombination
// key keep the cheaper representative (ties: graph state id, then
// lexicographic word history).  The final frame applies graph final weights
// and the fused </s> delta.
DecodeResult Decode(const DecodingGraph& graph, const FrameMatrix& frames,
                    FusionSession* fusion, const DecodeConfig& cfg);

}  // namespace deltadec

#endif  // DELTADEC_DECODER_BEAM_SEARCH_H_
