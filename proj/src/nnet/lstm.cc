// nnet/lstm.cc

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

#include "nnet/lstm.h"

#include <cmath>

#include "base/rng.h"

namespace deltadec {

void LstmConfig::Validate() const {
  if (vocab_size < 1 || embed_dim < 1 || hidden_dim < 1 || num_layers < 1)
    throw ConfigError("lstm dims must be >= 1");
  if (nce_k < 1) throw ConfigError("nce noise sample count must be >= 1");
  if (epochs < 0 || bptt_limit < 1) throw ConfigError("bad lstm training config");
}

namespace {

template <typename S>
S Sigmoid(S x) {
  return S(1) / (S(1) + std::exp(-x));
}

}  // namespace

template <typename S>
LstmModelT<S> LstmModelT<S>::Init(const LstmConfig& cfg) {
  cfg.Validate();
  LstmModelT<S> m;
  m.cfg = cfg;
  Rng rng(DeriveSeed(cfg.seed, "lstm-init"));
  auto fill = [&rng](auto& mat) {
    for (Eigen::Index j = 0; j < mat.cols(); ++j)
      for (Eigen::Index i = 0; i < mat.rows(); ++i)
        mat(i, j) = static_cast<S>(rng.Uniform(-0.08, 0.08));
  };
  m.embed.resize(cfg.embed_dim, cfg.vocab_size);
  fill(m.embed);
  for (int l = 0; l < cfg.num_layers; ++l) {
    LstmLayer<S> layer;
    int in_dim = l == 0 ? cfg.embed_dim : cfg.hidden_dim;
    layer.wx.resize(4 * cfg.hidden_dim, in_dim);
    layer.wh.resize(4 * cfg.hidden_dim, cfg.hidden_dim);
    layer.b.resize(4 * cfg.hidden_dim);
    fill(layer.wx);
    fill(layer.wh);
    fill(layer.b);
    m.layers.push_back(std::move(layer));
  }
  m.out_w.resize(cfg.vocab_size, cfg.hidden_dim);
  m.out_b.resize(cfg.vocab_size);
  fill(m.out_w);
  m.out_b.setZero();
  return m;
}

LstmModelF CastToFloat(const LstmModel& m) {
  LstmModelF f;
  f.cfg = m.cfg;
  f.embed = m.embed.cast<float>();
  for (const auto& layer : m.layers)
    f.layers.push_back({layer.wx.cast<float>().eval(), layer.wh.cast<float>().eval(),
                        layer.b.cast<float>().eval()});
  f.out_w = m.out_w.cast<float>();
  f.out_b = m.out_b.cast<float>();
  return f;
}

template <typename S>
LmStateT<S> ZeroState(const LstmModelT<S>& m) {
  LmStateT<S> st;
  st.h.assign(m.cfg.num_layers, VecX<S>::Zero(m.cfg.hidden_dim));
  st.c.assign(m.cfg.num_layers, VecX<S>::Zero(m.cfg.hidden_dim));
  return st;
}

template <typename S>
void StepVectors(const LstmModelT<S>& m, std::vector<VecX<S>>* h,
                 std::vector<VecX<S>>* c, int32 word) {
  if (word < 0 || word >= m.cfg.vocab_size || word == kEpsLabel)
    throw InputError("word id out of range for lstm forward: " + std::to_string(word));
  const int H = m.cfg.hidden_dim;
  VecX<S> x = m.embed.col(word);
  for (int l = 0; l < m.cfg.num_layers; ++l) {
    const auto& layer = m.layers[l];
    VecX<S> z = layer.wx * x + layer.wh * (*h)[l] + layer.b;
    VecX<S> ct(H), ht(H);
    for (int i = 0; i < H; ++i) {
      S ig = Sigmoid(z(i));
      S fg = Sigmoid(z(H + i));
      S gg = std::tanh(z(2 * H + i));
      S og = Sigmoid(z(3 * H + i));
      ct(i) = fg * (*c)[l](i) + ig * gg;
      ht(i) = og * std::tanh(ct(i));
    }
    (*c)[l] = ct;
    (*h)[l] = std::move(ht);
    x = (*h)[l];
  }
}

template <typename S>
LmStateT<S> ForwardStep(const LstmModelT<S>& m, const LmStateT<S>& st, int32 word) {
  LmStateT<S> next = st;
  StepVectors(m, &next.h, &next.c, word);
  next.sbar = next.h.back();
  next.history.push_back(word);
  return next;
}

template <typename S>
double OutputLogit(const LstmModelT<S>& m, const VecX<S>& sbar, int32 word) {
  return static_cast<double>(m.out_w.row(word).dot(sbar)) +
         static_cast<double>(m.out_b(word));
}

template <typename S>
double OutputLogSumExp(const LstmModelT<S>& m, const VecX<S>& sbar) {
  VecX<S> logits = m.out_w * sbar + m.out_b;
  double mx = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < logits.size(); ++i)
    mx = std::max(mx, static_cast<double>(logits(i)));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < logits.size(); ++i)
    sum += std::exp(static_cast<double>(logits(i)) - mx);
  return mx + std::log(sum);
}

template <typename S>
double ScoreWord(const LstmModelT<S>& m, const LmStateT<S>& st, int32 word,
                 bool normalized) {
  if (word < 0 || word >= m.cfg.vocab_size)
    throw InputError("word id out of range for lstm score: " + std::to_string(word));
  if (word == kBosId)
    throw ContractError("<s> is never a prediction target");
  if (!st.SbarDefined())
    throw ContractError("scoring requires a state that has consumed the start token");
  double logit = OutputLogit(m, st.sbar, word);
  if (!normalized) return logit;
  return logit - OutputLogSumExp(m, st.sbar);
}

template <typename S>
double LogPartition(const LstmModelT<S>& m, const LmStateT<S>& st) {
  if (!st.SbarDefined()) throw ContractError("partition of an empty state");
  return OutputLogSumExp(m, st.sbar);
}

template <typename S>
LmStateT<S> InitStateFromContext(const LstmModelT<S>& m,
                                 const std::vector<std::vector<int32>>& context,
                                 bool include_trailing_bos, const Vocabulary& vocab) {
  LmStateT<S> st = ZeroState(m);
  if (context.empty()) return st;
  for (const auto& utt : context) {
    st = ForwardStep(m, st, vocab.Bos());
    for (int32 w : utt) st = ForwardStep(m, st, w);
    st = ForwardStep(m, st, vocab.Eos());
  }
  if (include_trailing_bos) st = ForwardStep(m, st, vocab.Bos());
  return st;
}

template <typename S>
LmStateT<S> UtteranceStartState(const LstmModelT<S>& m,
                                const std::vector<std::vector<int32>>& context,
                                bool include_trailing_bos, const Vocabulary& vocab) {
  if (context.empty()) return ForwardStep(m, ZeroState(m), vocab.Bos());
  return InitStateFromContext(m, context, include_trailing_bos, vocab);
}

template <typename S>
void ForEachParam(LstmModelT<S>& m, const std::function<void(S*, size_t)>& fn) {
  fn(m.embed.data(), m.embed.size());
  for (auto& layer : m.layers) {
    fn(layer.wx.data(), layer.wx.size());
    fn(layer.wh.data(), layer.wh.size());
    fn(layer.b.data(), layer.b.size());
  }
  fn(m.out_w.data(), m.out_w.size());
  fn(m.out_b.data(), m.out_b.size());
}

template <typename S>
void ForEachParamConst(const LstmModelT<S>& m,
                       const std::function<void(const S*, size_t)>& fn) {
  ForEachParam<S>(const_cast<LstmModelT<S>&>(m),
                  std::function<void(S*, size_t)>([&fn](S* p, size_t n) { fn(p, n); }));
}

template struct LstmModelT<double>;
template struct LstmModelT<float>;
template LmState ZeroState(const LstmModel&);
template LmStateF ZeroState(const LstmModelF&);
template LmState ForwardStep(const LstmModel&, const LmState&, int32);
template LmStateF ForwardStep(const LstmModelF&, const LmStateF&, int32);
template void StepVectors(const LstmModel&, std::vector<VecX<double>>*,
                          std::vector<VecX<double>>*, int32);
template void StepVectors(const LstmModelF&, std::vector<VecX<float>>*,
                          std::vector<VecX<float>>*, int32);
template double OutputLogit(const LstmModel&, const VecX<double>&, int32);
template double OutputLogit(const LstmModelF&, const VecX<float>&, int32);
template double OutputLogSumExp(const LstmModel&, const VecX<double>&);
template double OutputLogSumExp(const LstmModelF&, const VecX<float>&);
template double ScoreWord(const LstmModel&, const LmState&, int32, bool);
template double ScoreWord(const LstmModelF&, const LmStateF&, int32, bool);
template double LogPartition(const LstmModel&, const LmState&);
template double LogPartition(const LstmModelF&, const LmStateF&);
template LmState InitStateFromContext(const LstmModel&,
                                      const std::vector<std::vector<int32>>&, bool,
                                      const Vocabulary&);
template LmStateF InitStateFromContext(const LstmModelF&,
                                       const std::vector<std::vector<int32>>&, bool,
                                       const Vocabulary&);
template LmState UtteranceStartState(const LstmModel&,
                                     const std::vector<std::vector<int32>>&, bool,
                                     const Vocabulary&);
template LmStateF UtteranceStartState(const LstmModelF&,
                                      const std::vector<std::vector<int32>>&, bool,
                                      const Vocabulary&);
template void ForEachParam(LstmModel&, const std::function<void(double*, size_t)>&);
template void ForEachParam(LstmModelF&, const std::function<void(float*, size_t)>&);
template void ForEachParamConst(const LstmModel&,
                                const std::function<void(const double*, size_t)>&);
template void ForEachParamConst(const LstmModelF&,
                                const std::function<void(const float*, size_t)>&);

}  // namespace deltadec
