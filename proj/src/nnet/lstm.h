// nnet/lstm.h

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

#ifndef DELTADEC_NNET_LSTM_H_
#define DELTADEC_NNET_LSTM_H_

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "base/common.h"
#include "lm/vocab.h"

namespace deltadec {

template <typename S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

enum class Objective { kCrossEntropy, kNce };

struct LstmConfig {
  int vocab_size = 0;  // symbol-table size; word ids index embedding columns
  int embed_dim = 16;
  int hidden_dim = 32;
  int num_layers = 1;
  uint64 seed = 1;
  Objective objective = Objective::kCrossEntropy;
  int nce_k = 10;  // noise samples per position, unigram noise
  double learning_rate = 0.1;
  int epochs = 10;
  int bptt_limit = 64;

  void Validate() const;
};

template <typename S>
struct LstmLayer {
  // Gate rows stacked [input; forget; cell; output], each hidden_dim tall.
  MatX<S> wx;  // 4h x input_dim
  MatX<S> wh;  // 4h x h
  VecX<S> b;   // 4h
};

// Parameters only; immutable during inference.  Training runs in double,
// the decoding path uses the float cast.
template <typename S>
struct LstmModelT {
  LstmConfig cfg;
  MatX<S> embed;  // e x V, one column per word id
  std::vector<LstmLayer<S>> layers;
  MatX<S> out_w;  // V x h
  VecX<S> out_b;  // V

  static LstmModelT<S> Init(const LstmConfig& cfg);
};

using LstmModel = LstmModelT<double>;
using LstmModelF = LstmModelT<float>;

LstmModelF CastToFloat(const LstmModel& m);

// Recurrent state plus the consumed-history key.  sbar is the final-layer
// output after the last consumed token; empty until at least one token has
// been fed.  The history sequence uniquely determines h, c, sbar for a
// fixed model.
template <typename S>
struct LmStateT {
  std::vector<VecX<S>> h, c;  // per layer
  VecX<S> sbar;
  std::vector<int32> history;

  bool SbarDefined() const { return sbar.size() > 0; }
};

using LmState = LmStateT<double>;
using LmStateF = LmStateT<float>;

template <typename S>
LmStateT<S> ZeroState(const LstmModelT<S>& m);

template <typename S>
LmStateT<S> ForwardStep(const LstmModelT<S>& m, const LmStateT<S>& st, int32 word);

// One recurrent step on raw per-layer vectors; ForwardStep and the fusion
// cache replay share this so recomputed states are bitwise identical.
template <typename S>
void StepVectors(const LstmModelT<S>& m, std::vector<VecX<S>>* h,
                 std::vector<VecX<S>>* c, int32 word);

// Output-layer pieces on a raw final-hidden vector.
template <typename S>
double OutputLogit(const LstmModelT<S>& m, const VecX<S>& sbar, int32 word);
template <typename S>
double OutputLogSumExp(const LstmModelT<S>& m, const VecX<S>& sbar);

// normalized=true: log softmax over the full vocabulary at sbar (the
// partition accumulates in double for either scalar type).
// normalized=false: the raw output logit, no partition.
template <typename S>
double ScoreWord(const LstmModelT<S>& m, const LmStateT<S>& st, int32 word,
                 bool normalized);

// log sum exp of all output logits at st.sbar; the self-normalization
// statistic is |LogPartition|.
template <typename S>
double LogPartition(const LstmModelT<S>& m, const LmStateT<S>& st);

// Feeds <s> u1 </s> ... <s> uK </s>, then one further <s> iff
// include_trailing_bos.  Context utterances carry no boundary tokens.
// Empty context yields the zero state.
template <typename S>
LmStateT<S> InitStateFromContext(const LstmModelT<S>& m,
                                 const std::vector<std::vector<int32>>& context,
                                 bool include_trailing_bos, const Vocabulary& vocab);

// State every utterance is scored from: with no context this is <s> fed to
// the zero state; with context the trailing-<s> choice already happened in
// InitStateFromContext.
template <typename S>
LmStateT<S> UtteranceStartState(const LstmModelT<S>& m,
                                const std::vector<std::vector<int32>>& context,
                                bool include_trailing_bos, const Vocabulary& vocab);

// Visits every parameter tensor in checkpoint order: embed, then per layer
// wx, wh, b, then out_w, out_b.  Eigen storage order (column-major).
template <typename S>
void ForEachParam(LstmModelT<S>& m, const std::function<void(S*, size_t)>& fn);
template <typename S>
void ForEachParamConst(const LstmModelT<S>& m,
                       const std::function<void(const S*, size_t)>& fn);

}  // namespace deltadec

#endif  // DELTADEC_NNET_LSTM_H_
