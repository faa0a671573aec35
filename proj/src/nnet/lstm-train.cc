// nnet/lstm-train.cc

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

#include "nnet/lstm-train.h"

#include <cmath>

#include "base/rng.h"

namespace deltadec {

namespace {

constexpr double kClipNorm = 5.0;

using Vec = VecX<double>;
using Mat = MatX<double>;

double Softplus(double x) {
  if (x > 30) return x;
  return std::log1p(std::exp(x));
}

double SigmoidD(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct StepCache {
  int32 input = -1;
  // Per layer activations; x is the layer input.
  std::vector<Vec> x, i, f, g, o, c, tanh_c, h;
};

// Produces the per-step loss and the gradient flowing into the final hidden
// output; also responsible for output-layer parameter gradients.
using OutputHook =
    std::function<double(size_t t, const Vec& h_last, Vec* dh_last)>;

struct Workspace {
  std::vector<StepCache> steps;
};

void ForwardSteps(const LstmModel& m, const std::vector<int32>& inputs,
                  std::vector<Vec>* h0, std::vector<Vec>* c0, Workspace* ws) {
  const int H = m.cfg.hidden_dim;
  const int L = m.cfg.num_layers;
  ws->steps.assign(inputs.size(), StepCache{});
  std::vector<Vec> h_prev = *h0, c_prev = *c0;
  for (size_t t = 0; t < inputs.size(); ++t) {
    StepCache& sc = ws->steps[t];
    sc.input = inputs[t];
    sc.x.resize(L);
    sc.i.resize(L);
    sc.f.resize(L);
    sc.g.resize(L);
    sc.o.resize(L);
    sc.c.resize(L);
    sc.tanh_c.resize(L);
    sc.h.resize(L);
    Vec x = m.embed.col(inputs[t]);
    for (int l = 0; l < L; ++l) {
      const auto& layer = m.layers[l];
      sc.x[l] = x;
      Vec z = layer.wx * x + layer.wh * h_prev[l] + layer.b;
      Vec ig(H), fg(H), gg(H), og(H), ct(H), th(H), ht(H);
      for (int k = 0; k < H; ++k) {
        ig(k) = SigmoidD(z(k));
        fg(k) = SigmoidD(z(H + k));
        gg(k) = std::tanh(z(2 * H + k));
        og(k) = SigmoidD(z(3 * H + k));
        ct(k) = fg(k) * c_prev[l](k) + ig(k) * gg(k);
        th(k) = std::tanh(ct(k));
        ht(k) = og(k) * th(k);
      }
      sc.i[l] = ig;
      sc.f[l] = fg;
      sc.g[l] = gg;
      sc.o[l] = og;
      sc.c[l] = ct;
      sc.tanh_c[l] = th;
      sc.h[l] = ht;
      h_prev[l] = ht;
      c_prev[l] = ct;
      x = ht;
    }
  }
  *h0 = h_prev;
  *c0 = c_prev;
}

// Backward through a cached chunk.  h_in/c_in are the recurrent vectors the
// chunk started from; gradient flow stops there (truncated BPTT).
void BackwardSteps(const LstmModel& m, const Workspace& ws,
                   const std::vector<Vec>& h_in, const std::vector<Vec>& c_in,
                   const std::vector<Vec>& dh_top, LstmModel* grads) {
  const int H = m.cfg.hidden_dim;
  const int L = m.cfg.num_layers;
  std::vector<Vec> dh_carry(L, Vec::Zero(H)), dc_carry(L, Vec::Zero(H));
  for (size_t ti = ws.steps.size(); ti-- > 0;) {
    const StepCache& sc = ws.steps[ti];
    Vec dx_upper;  // gradient w.r.t. the input of the layer above
    for (int l = L - 1; l >= 0; --l) {
      Vec dh = dh_carry[l];
      if (l == L - 1)
        dh += dh_top[ti];
      else
        dh += dx_upper;
      const Vec& h_prev = ti > 0 ? ws.steps[ti - 1].h[l] : h_in[l];
      const Vec& c_prev = ti > 0 ? ws.steps[ti - 1].c[l] : c_in[l];
      Vec dz(4 * H);
      Vec dc(H);
      for (int k = 0; k < H; ++k) {
        double do_ = dh(k) * sc.tanh_c[l](k);
        double dcv = dh(k) * sc.o[l](k) * (1.0 - sc.tanh_c[l](k) * sc.tanh_c[l](k)) +
                     dc_carry[l](k);
        double di = dcv * sc.g[l](k);
        double df = dcv * c_prev(k);
        double dg = dcv * sc.i[l](k);
        dz(k) = di * sc.i[l](k) * (1.0 - sc.i[l](k));
        dz(H + k) = df * sc.f[l](k) * (1.0 - sc.f[l](k));
        dz(2 * H + k) = dg * (1.0 - sc.g[l](k) * sc.g[l](k));
        dz(3 * H + k) = do_ * sc.o[l](k) * (1.0 - sc.o[l](k));
        dc(k) = dcv * sc.f[l](k);
      }
      auto& glayer = grads->layers[l];
      glayer.wx.noalias() += dz * sc.x[l].transpose();
      glayer.wh.noalias() += dz * h_prev.transpose();
      glayer.b += dz;
      dh_carry[l] = m.layers[l].wh.transpose() * dz;
      dc_carry[l] = dc;
      dx_upper = m.layers[l].wx.transpose() * dz;
    }
    grads->embed.col(sc.input) += dx_upper;
  }
}

// Runs one utterance (already wrapped with boundaries) through forward and
// truncated backward, invoking `hook` per predicted position.  Returns the
// summed loss.
double BackpropUtterance(const LstmModel& m, const std::vector<int32>& inputs,
                         int bptt_limit, const OutputHook& hook, LstmModel* grads) {
  const int H = m.cfg.hidden_dim;
  std::vector<Vec> h(m.cfg.num_layers, Vec::Zero(H));
  std::vector<Vec> c(m.cfg.num_layers, Vec::Zero(H));
  double loss = 0.0;
  size_t pos = 0;
  Workspace ws;
  while (pos < inputs.size()) {
    size_t len = std::min<size_t>(bptt_limit, inputs.size() - pos);
    std::vector<int32> chunk(inputs.begin() + pos, inputs.begin() + pos + len);
    std::vector<Vec> h_in = h, c_in = c;
    ForwardSteps(m, chunk, &h, &c, &ws);
    std::vector<Vec> dh_top(len, Vec::Zero(H));
    for (size_t t = 0; t < len; ++t)
      loss += hook(pos + t, ws.steps[t].h.back(), &dh_top[t]);
    if (grads != nullptr) BackwardSteps(m, ws, h_in, c_in, dh_top, grads);
    pos += len;
  }
  return loss;
}

std::vector<int32> WrapInputs(const std::vector<int32>& utt, const Vocabulary& v) {
  std::vector<int32> in;
  in.reserve(utt.size() + 1);
  in.push_back(v.Bos());
  in.insert(in.end(), utt.begin(), utt.end());
  return in;
}

std::vector<int32> Targets(const std::vector<int32>& utt, const Vocabulary& v) {
  std::vector<int32> tg = utt;
  tg.push_back(v.Eos());
  return tg;
}

std::vector<std::pair<double*, size_t>> CollectParams(LstmModel& m) {
  std::vector<std::pair<double*, size_t>> out;
  ForEachParam<double>(m, [&out](double* p, size_t n) { out.emplace_back(p, n); });
  return out;
}

}  // namespace

LstmModel ZeroLike(const LstmModel& model) {
  LstmModel z = model;
  ForEachParam<double>(z, [](double* p, size_t n) {
    for (size_t i = 0; i < n; ++i) p[i] = 0.0;
  });
  return z;
}

double GlobalNorm(const LstmModel& grads) {
  double sq = 0.0;
  ForEachParamConst<double>(grads, [&sq](const double* p, size_t n) {
    for (size_t i = 0; i < n; ++i) sq += p[i] * p[i];
  });
  return std::sqrt(sq);
}

double CeLossAndGrad(const LstmModel& model, const std::vector<std::vector<int32>>& batch,
                     const Vocabulary& vocab, LstmModel* grads) {
  double total = 0.0;
  for (const auto& utt : batch) {
    std::vector<int32> inputs = WrapInputs(utt, vocab);
    std::vector<int32> targets = Targets(utt, vocab);
    OutputHook hook = [&](size_t t, const Vec& h_last, Vec* dh_last) {
      Vec logits = model.out_w * h_last + model.out_b;
      double mx = logits.maxCoeff();
      double sum = 0.0;
      for (Eigen::Index i = 0; i < logits.size(); ++i)
        sum += std::exp(logits(i) - mx);
      double lse = mx + std::log(sum);
      double loss = lse - logits(targets[t]);
      if (grads != nullptr) {
        Vec dlogits = ((logits.array() - lse).exp()).matrix();
        dlogits(targets[t]) -= 1.0;
        grads->out_w.noalias() += dlogits * h_last.transpose();
        grads->out_b += dlogits;
        *dh_last = model.out_w.transpose() * dlogits;
      }
      return loss;
    };
    total += BackpropUtterance(model, inputs,
                               std::numeric_limits<int>::max(), hook,
                               grads);
  }
  return total;
}

TrainResult TrainLstm(LstmModel model, const std::vector<std::vector<int32>>& utterances,
                      const Vocabulary& vocab) {
  const LstmConfig& cfg = model.cfg;
  cfg.Validate();
  if (utterances.empty()) throw ConfigError("lstm training corpus is empty");

  // Unigram noise distribution over predicted targets, for NCE.
  std::vector<double> log_q(cfg.vocab_size, -1e30);
  std::vector<double> cdf;
  std::vector<int32> cdf_ids;
  if (cfg.objective == Objective::kNce) {
    std::vector<int64> counts(cfg.vocab_size, 0);
    int64 total = 0;
    for (const auto& utt : utterances) {
      for (int32 w : Targets(utt, vocab)) {
        ++counts[w];
        ++total;
      }
    }
    double acc = 0.0;
    for (int32 w = 0; w < cfg.vocab_size; ++w) {
      if (counts[w] == 0) continue;
      double q = static_cast<double>(counts[w]) / static_cast<double>(total);
      log_q[w] = std::log(q);
      acc += q;
      cdf.push_back(acc);
      cdf_ids.push_back(w);
    }
  }
  Rng noise_rng(DeriveSeed(cfg.seed, "nce-noise"));
  auto sample_noise = [&]() {
    double u = noise_rng.Uniform(0.0, 1.0);
    size_t lo = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (lo >= cdf_ids.size()) lo = cdf_ids.size() - 1;
    return cdf_ids[lo];
  };

  TrainResult result;
  result.epoch_losses.reserve(cfg.epochs);
  LstmModel grads = ZeroLike(model);
  auto gp = CollectParams(grads);
  auto mp = CollectParams(model);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double epoch_loss = 0.0;
    int64 epoch_targets = 0;
    for (const auto& utt : utterances) {
      for (auto& [p, n] : gp)
        for (size_t i = 0; i < n; ++i) p[i] = 0.0;
      std::vector<int32> inputs = WrapInputs(utt, vocab);
      std::vector<int32> targets = Targets(utt, vocab);

      OutputHook hook;
      if (cfg.objective == Objective::kCrossEntropy) {
        hook = [&](size_t t, const Vec& h_last, Vec* dh_last) {
          Vec logits = model.out_w * h_last + model.out_b;
          double mx = logits.maxCoeff();
          double sum = 0.0;
          for (Eigen::Index i = 0; i < logits.size(); ++i)
            sum += std::exp(logits(i) - mx);
          double lse = mx + std::log(sum);
          Vec dlogits = ((logits.array() - lse).exp()).matrix();
          dlogits(targets[t]) -= 1.0;
          grads.out_w.noalias() += dlogits * h_last.transpose();
          grads.out_b += dlogits;
          *dh_last = model.out_w.transpose() * dlogits;
          return lse - logits(targets[t]);
        };
      } else {
        // NCE with the partition pinned at one: the raw logit plays the log
        // probability, and the binary objective separates data from k
        // unigram noise draws.
        hook = [&](size_t t, const Vec& h_last, Vec* dh_last) {
          dh_last->setZero();
          double loss = 0.0;
          auto contribute = [&](int32 w, bool is_data) {
            double s = model.out_w.row(w).dot(h_last) + model.out_b(w);
            double delta = s - (std::log(static_cast<double>(cfg.nce_k)) + log_q[w]);
            double ds;
            if (is_data) {
              loss += Softplus(-delta);
              ds = SigmoidD(delta) - 1.0;
            } else {
              loss += Softplus(delta);
              ds = SigmoidD(delta);
            }
            grads.out_w.row(w).noalias() += ds * h_last.transpose();
            grads.out_b(w) += ds;
            *dh_last += ds * model.out_w.row(w).transpose();
          };
          contribute(targets[t], true);
          for (int j = 0; j < cfg.nce_k; ++j) contribute(sample_noise(), false);
          return loss;
        };
      }

      double utt_loss =
          BackpropUtterance(model, inputs, cfg.bptt_limit, hook, &grads);
      epoch_loss += utt_loss;
      epoch_targets += static_cast<int64>(targets.size());

      if (cfg.learning_rate != 0.0) {
        double norm = GlobalNorm(grads);
        double scale = norm > kClipNorm ? kClipNorm / norm : 1.0;
        double step = cfg.learning_rate * scale;
        for (size_t g = 0; g < gp.size(); ++g)
          for (size_t i = 0; i < gp[g].second; ++i)
            mp[g].first[i] -= step * gp[g].first[i];
      }
    }
    double mean = epoch_loss / static_cast<double>(epoch_targets);
    if (!std::isfinite(mean))
      throw TrainingDivergence(epoch, "non-finite loss");
    result.epoch_losses.push_back(mean);
  }
  result.model = std::move(model);
  return result;
}

}  // namespace deltadec
