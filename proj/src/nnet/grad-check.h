// nnet/grad-check.h

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

#ifndef DELTADEC_NNET_GRAD_CHECK_H_
#define DELTADEC_NNET_GRAD_CHECK_H_

#include "nnet/lstm-train.h"

namespace deltadec {

// Central finite differences (step 1e-5) of the cross-entropy loss against
// analytic BPTT gradients, over every parameter.  Meant for tiny models and
// short sequences; double precision.  Returns the max relative error
// |a - n| / max(|a| + |n|, 1e-4).
double GradCheckMaxRelError(const LstmModel& model,
                            const std::vector<std::vector<int32>>& batch,
                            const Vocabulary& vocab);

}  // namespace deltadec

#endif  // DELTADEC_NNET_GRAD_CHECK_H_
