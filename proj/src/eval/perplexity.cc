// eval/perplexity.cc

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

#include "eval/perplexity.h"

#include <algorithm>
#include <cmath>

#include "base/rng.h"

namespace deltadec {

std::vector<EvalSession> ToEvalSessions(const std::vector<Conversation>& corpus) {
  std::vector<EvalSession> out;
  out.reserve(corpus.size());
  for (const auto& conv : corpus) {
    EvalSession s;
    s.id = conv.session_id;
    for (const auto& utt : conv.utterances) s.utts.push_back(EvalUtterance{utt.words, {}, false});
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<int32>> SelectContext(const EvalSession& session, size_t index,
                                              const ContextProtocol& proto) {
  size_t begin = 0;
  if (proto.k >= 0) {
    size_t k = static_cast<size_t>(proto.k);
    begin = index > k ? index - k : 0;
  }
  std::vector<std::vector<int32>> ctx;
  for (size_t i = begin; i < index; ++i) {
    if (proto.source == ContextProtocol::Source::kHypothesis) {
      if (!session.utts[i].has_hyp)
        throw InputError("hypothesis context requested but utterance " +
                         std::to_string(i) + " of session " + session.id +
                         " has no decode result");
      ctx.push_back(session.utts[i].hyp);
    } else {
      ctx.push_back(session.utts[i].ref);
    }
  }
  if (proto.shuffle && ctx.size() > 1) {
    Rng rng(DeriveSeed(proto.shuffle_seed,
                       "shuffle:" + session.id + ":" + std::to_string(index)));
    for (size_t i = ctx.size(); i > 1; --i)
      std::swap(ctx[i - 1], ctx[rng.UniformInt(0, static_cast<int64>(i) - 1)]);
  }
  return ctx;
}

double PerplexityLstm(const LstmModel& m, const std::vector<EvalSession>& sessions,
                      const ContextProtocol& proto, const Vocabulary& vocab) {
  double total_logp = 0.0;
  int64 total_targets = 0;
  for (const auto& session : sessions) {
    for (size_t i = 0; i < session.utts.size(); ++i) {
      auto ctx = SelectContext(session, i, proto);
      LmState st = UtteranceStartState(m, ctx, proto.include_trailing_bos, vocab);
      std::vector<int32> targets = session.utts[i].ref;
      targets.push_back(vocab.Eos());
      for (int32 w : targets) {
        total_logp += ScoreWord(m, st, w, /*normalized=*/true);
        st = ForwardStep(m, st, w);
        ++total_targets;
      }
    }
  }
  if (total_targets == 0) throw InputError("perplexity over an empty test set");
  return std::exp(-total_logp / static_cast<double>(total_targets));
}

double PerplexityNGram(const NGramModel& m, const std::vector<EvalSession>& sessions,
                       const ContextProtocol& proto) {
  const Vocabulary& vocab = m.Vocab();
  double total_logp = 0.0;
  int64 total_targets = 0;
  for (const auto& session : sessions) {
    for (size_t i = 0; i < session.utts.size(); ++i) {
      auto ctx = SelectContext(session, i, proto);
      std::vector<int32> hist;
      if (ctx.empty()) {
        hist.push_back(vocab.Bos());
      } else {
        for (const auto& u : ctx) {
          hist.push_back(vocab.Bos());
          hist.insert(hist.end(), u.begin(), u.end());
          hist.push_back(vocab.Eos());
        }
        if (proto.include_trailing_bos) hist.push_back(vocab.Bos());
      }
      std::vector<int32> targets = session.utts[i].ref;
      targets.push_back(vocab.Eos());
      for (int32 w : targets) {
        total_logp += m.LogProb(hist, w);
        hist.push_back(w);
        ++total_targets;
      }
    }
  }
  if (total_targets == 0) throw InputError("perplexity over an empty test set");
  return std::exp(-total_logp / static_cast<double>(total_targets));
}

}  // namespace deltadec
