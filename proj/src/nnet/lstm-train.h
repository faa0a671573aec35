// nnet/lstm-train.h

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

#ifndef DELTADEC_NNET_LSTM_TRAIN_H_
#define DELTADEC_NNET_LSTM_TRAIN_H_

#include "nnet/lstm.h"

namespace deltadec {

struct TrainResult {
  LstmModel model;
  std::vector<double> epoch_losses;  // mean loss per predicted token
};

// Utterance-level SGD: every utterance starts from the zero state, is
// wrapped <s> ... </s>, and triggers one clipped update.  Deterministic
// given model.cfg.seed and the corpus.  Throws TrainingDivergence when an
// epoch produces a non-finite loss.
TrainResult TrainLstm(LstmModel model, const std::vector<std::vector<int32>>& utterances,
                      const Vocabulary& vocab);

// Summed cross-entropy loss over the batch with full-length BPTT; gradients
// accumulate into *grads when non-null.  This is the objective the gradient
// check differentiates.
double CeLossAndGrad(const LstmModel& model, const std::vector<std::vector<int32>>& batch,
                     const Vocabulary& vocab, LstmModel* grads);

LstmModel ZeroLike(const LstmModel& model);

// L2 norm over all parameters of a model-shaped container.
double GlobalNorm(const LstmModel& grads);

}  // namespace deltadec

#endif  // DELTADEC_NNET_LSTM_TRAIN_H_
