// decoder/rescore.h

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

#ifndef DELTADEC_DECODER_RESCORE_H_
#define DELTADEC_DECODER_RESCORE_H_

#include "decoder/beam-search.h"

namespace deltadec {

// Second pass: recomputes every hypothesis's fused LM cost from scratch in
// the given session (same context state, same weights), keeps the stored
// acoustic cost, and re-sorts by total.  A hypothesis scored by an identical
// first-pass session gets the same total back to rounding.
std::vector<Hypothesis> RescoreNBest(const std::vector<Hypothesis>& nbest,
                                     FusionSession* session);

}  // namespace deltadec

#endif  // DELTADEC_DECODER_RESCORE_H_
