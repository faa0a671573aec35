// eval/experiment.cc

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

#include "eval/experiment.h"

#include <atomic>
#include <sstream>
#include <thread>

#include "base/rng.h"

namespace deltadec {

using ordered_json = nlohmann::ordered_json;

uint64 UtteranceFrameSeed(uint64 corpus_seed, const std::string& session_id, int order) {
  return DeriveSeed(corpus_seed, "frames:" + session_id + ":" + std::to_string(order));
}

namespace {

std::string KStr(int k) { return k < 0 ? "inf" : std::to_string(k); }

void ParallelForSessions(int jobs, size_t n, const std::function<void(size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int count = std::min<int>(jobs, static_cast<int>(n));
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

struct UttOutcome {
  std::vector<int32> hyp;
  double total_cost = kInfCost;
  bool decoded = false;
  CacheStats cache;
};

struct SweepOutcome {
  WerStats wer;
  std::vector<std::vector<UttOutcome>> per_session;
  CacheStats cache;

  void FoldCaches() {
    for (const auto& s : per_session)
      for (const auto& u : s) {
        cache.l1_hits += u.cache.l1_hits;
        cache.l2_hits += u.cache.l2_hits;
        cache.l3_hits += u.cache.l3_hits;
        cache.full_forwards += u.cache.full_forwards;
      }
  }
};

class ExperimentRunner {
 public:
  explicit ExperimentRunner(const ExperimentInputs& in)
      : in_(in), vocab_(in.g->Vocab()), lstm_f_(CastToFloat(*in.lstm)) {
    sessions_ = ToEvalSessions(in_.test_corpus);
    frames_.resize(in_.test_corpus.size());
    for (size_t si = 0; si < in_.test_corpus.size(); ++si) {
      const auto& conv = in_.test_corpus[si];
      for (const auto& utt : conv.utterances) {
        frames_[si].push_back(SynthFrames(
            utt.words, *in_.lexicon, in_.sim.sigma, in_.sim.frames_per_symbol,
            UtteranceFrameSeed(in_.sim.seed, conv.session_id, utt.order)));
      }
    }
  }

  // G'-only pass; every utterance keeps an n-best list for rescoring.
  SweepOutcome BaselineSweep(int nbest, std::vector<std::vector<std::vector<Hypothesis>>>* lists) {
    SweepOutcome out;
    out.per_session.resize(sessions_.size());
    lists->assign(sessions_.size(), {});
    ParallelForSessions(in_.jobs, sessions_.size(), [&](size_t si) {
      auto& lst = (*lists)[si];
      auto& outs = out.per_session[si];
      outs.resize(sessions_[si].utts.size());
      lst.resize(sessions_[si].utts.size());
      for (size_t ui = 0; ui < sessions_[si].utts.size(); ++ui) {
        DecodeConfig dc = in_.decode;
        dc.nbest = nbest;
        dc.frames_per_symbol = in_.sim.frames_per_symbol;
        DecodeResult r = Decode(*in_.graph, frames_[si][ui], nullptr, dc);
        lst[ui] = r.nbest;
        if (!r.nbest.empty()) {
          outs[ui].hyp = r.nbest.front().words;
          outs[ui].total_cost = r.nbest.front().total_cost;
          outs[ui].decoded = true;
        }
      }
    });
    Score(&out);
    return out;
  }

  // Fused first pass under a context protocol.  Hypothesis-source context
  // feeds each decoded 1-best into the next utterance of the session.
  SweepOutcome FusedFirstPass(const ContextProtocol& proto) {
    SweepOutcome out;
    out.per_session.resize(sessions_.size());
    ParallelForSessions(in_.jobs, sessions_.size(), [&](size_t si) {
      EvalSession session = sessions_[si];  // private copy carries hyp slots
      auto& outs = out.per_session[si];
      outs.resize(session.utts.size());
      for (size_t ui = 0; ui < session.utts.size(); ++ui) {
        auto ctx = SelectContext(session, ui, proto);
        LmStateF init =
            UtteranceStartState(lstm_f_, ctx, proto.include_trailing_bos, vocab_);
        FusionSession fs(*in_.g, *in_.gp, &lstm_f_, in_.fusion, std::move(init));
        DecodeConfig dc = in_.decode;
        dc.nbest = 1;
        dc.frames_per_symbol = in_.sim.frames_per_symbol;
        DecodeResult r = Decode(*in_.graph, frames_[si][ui], &fs, dc);
        if (!r.nbest.empty()) {
          outs[ui].hyp = r.nbest.front().words;
          outs[ui].total_cost = r.nbest.front().total_cost;
          outs[ui].decoded = true;
        }
        outs[ui].cache = r.stats.cache;
        session.utts[ui].hyp = outs[ui].hyp;
        session.utts[ui].has_hyp = true;
      }
    });
    Score(&out);
    out.FoldCaches();
    return out;
  }

  // Second pass: rescoring the shared G'-only n-best lists with fused scores
  // and context.  Hypothesis-source context feeds the rescored 1-bests.
  SweepOutcome SecondPass(const ContextProtocol& proto,
                          const std::vector<std::vector<std::vector<Hypothesis>>>& lists) {
    SweepOutcome out;
    out.per_session.resize(sessions_.size());
    ParallelForSessions(in_.jobs, sessions_.size(), [&](size_t si) {
      EvalSession session = sessions_[si];
      auto& outs = out.per_session[si];
      outs.resize(session.utts.size());
      for (size_t ui = 0; ui < session.utts.size(); ++ui) {
        auto ctx = SelectContext(session, ui, proto);
        LmStateF init =
            UtteranceStartState(lstm_f_, ctx, proto.include_trailing_bos, vocab_);
        FusionSession fs(*in_.g, *in_.gp, &lstm_f_, in_.fusion, std::move(init));
        std::vector<Hypothesis> rescored = RescoreNBest(lists[si][ui], &fs);
        if (!rescored.empty()) {
          outs[ui].hyp = rescored.front().words;
          outs[ui].total_cost = rescored.front().total_cost;
          outs[ui].decoded = true;
        }
        outs[ui].cache = fs.Stats();
        session.utts[ui].hyp = outs[ui].hyp;
        session.utts[ui].has_hyp = true;
      }
    });
    Score(&out);
    out.FoldCaches();
    return out;
  }

  const std::vector<EvalSession>& Sessions() const { return sessions_; }
  const LstmModelF& FloatModel() const { return lstm_f_; }

 private:
  void Score(SweepOutcome* out) {
    for (size_t si = 0; si < sessions_.size(); ++si)
      for (size_t ui = 0; ui < sessions_[si].utts.size(); ++ui)
        out->wer.Accumulate(
            ComputeWer(sessions_[si].utts[ui].ref, out->per_session[si][ui].hyp));
  }

  const ExperimentInputs& in_;
  const Vocabulary& vocab_;
  LstmModelF lstm_f_;
  std::vector<EvalSession> sessions_;
  std::vector<std::vector<FrameMatrix>> frames_;
};

ordered_json WerRow(const std::string& table, const std::string& lm, int k,
                    const std::string& source, bool with_s, int pass,
                    const SweepOutcome& sweep) {
  ordered_json row;
  row["table"] = table;
  row["lm"] = lm;
  row["k"] = KStr(k);
  row["source"] = source;
  row["with_s"] = with_s;
  row["shuffle"] = false;
  row["pass"] = pass;
  row["wer"] = sweep.wer.Percent();
  row["subs"] = sweep.wer.substitutions;
  row["ins"] = sweep.wer.insertions;
  row["dels"] = sweep.wer.deletions;
  row["ref_words"] = sweep.wer.ref_words;
  row["l1_hits"] = sweep.cache.l1_hits;
  row["l2_hits"] = sweep.cache.l2_hits;
  row["l3_hits"] = sweep.cache.l3_hits;
  row["full_forwards"] = sweep.cache.full_forwards;
  return row;
}

ordered_json PplRow(const std::string& lm, int k, bool with_s, bool shuffle, double ppl) {
  ordered_json row;
  row["table"] = "2";
  row["lm"] = lm;
  row["k"] = KStr(k);
  row["source"] = "ref";
  row["with_s"] = with_s;
  row["shuffle"] = shuffle;
  row["pass"] = 0;
  row["ppl"] = ppl;
  return row;
}

}  // namespace

ordered_json RunContextExperiment(const ExperimentInputs& inputs) {
  if (!inputs.g || !inputs.gp || !inputs.graph || !inputs.lexicon || !inputs.lstm)
    throw ConfigError("experiment inputs incomplete");
  ExperimentRunner runner(inputs);
  const Vocabulary& vocab = inputs.g->Vocab();

  ordered_json report;
  report["schema_version"] = 1;
  ordered_json cfg;
  cfg["sim_seed"] = inputs.sim.seed;
  cfg["sigma"] = inputs.sim.sigma;
  cfg["frames_per_symbol"] = inputs.sim.frames_per_symbol;
  cfg["beam"] = inputs.decode.beam;
  cfg["max_active"] = inputs.decode.max_active;
  cfg["ngram_approx_n"] = KStr(inputs.decode.ngram_approx_n);
  cfg["ngram_weight"] = inputs.fusion.ngram_weight;
  cfg["lstm_weight"] = inputs.fusion.lstm_weight;
  cfg["use_unnormalized"] = inputs.fusion.use_unnormalized;
  cfg["second_pass_nbest"] = inputs.second_pass_nbest;
  cfg["shuffle_seed"] = inputs.shuffle_seed;
  cfg["jobs"] = inputs.jobs;
  // Perplexity accounting: predicted tokens are all words plus </s>; <s> is
  // never predicted.
  cfg["ppl_targets"] = "words+</s>";
  report["config"] = cfg;

  ordered_json rows = ordered_json::array();

  // Table 2: perplexity against context length, reference history.
  {
    ContextProtocol p;
    p.k = 0;
    rows.push_back(PplRow("5glm", 0, true, false,
                          PerplexityNGram(*inputs.g, runner.Sessions(), p)));
    for (int k : inputs.k_values) {
      ContextProtocol lp;
      lp.k = k;
      lp.include_trailing_bos = true;
      rows.push_back(PplRow("lstm", k, true, false,
                            PerplexityLstm(*inputs.lstm, runner.Sessions(), lp, vocab)));
    }
    ContextProtocol shuf;
    shuf.k = -1;
    shuf.shuffle = true;
    shuf.shuffle_seed = inputs.shuffle_seed;
    ordered_json row = PplRow("lstm", -1, true, true,
                              PerplexityLstm(*inputs.lstm, runner.Sessions(), shuf, vocab));
    rows.push_back(row);
  }

  // Shared G'-only pass; its n-best lists feed every second-pass cell.
  std::vector<std::vector<std::vector<Hypothesis>>> gp_lists;
  SweepOutcome baseline = runner.BaselineSweep(inputs.second_pass_nbest, &gp_lists);
  rows.push_back(WerRow("1", "gp", 0, "none", true, 1, baseline));

  // Table 1: fused decoding without context, both passes.
  ContextProtocol no_ctx;
  no_ctx.k = 0;
  SweepOutcome fused_k0 = runner.FusedFirstPass(no_ctx);
  rows.push_back(WerRow("1", "fused", 0, "none", true, 1, fused_k0));
  SweepOutcome second_k0 = runner.SecondPass(no_ctx, gp_lists);
  rows.push_back(WerRow("1", "fused", 0, "none", true, 2, second_k0));

  // Table 3: context sweep for the fused first pass.
  for (int k : inputs.k_values) {
    if (k == 0) continue;
    for (auto source : {ContextProtocol::Source::kReference,
                        ContextProtocol::Source::kHypothesis}) {
      for (bool with_s : {true, false}) {
        ContextProtocol p;
        p.k = k;
        p.source = source;
        p.include_trailing_bos = with_s;
        SweepOutcome sweep = runner.FusedFirstPass(p);
        rows.push_back(WerRow("3", "fused", k,
                              source == ContextProtocol::Source::kReference ? "ref" : "hyp",
                              with_s, 1, sweep));
      }
    }
  }

  // Table 4: complete history, first pass against n-best rescoring, plus the
  // per-utterance cost comparison.
  for (auto source : {ContextProtocol::Source::kReference,
                      ContextProtocol::Source::kHypothesis}) {
    ContextProtocol p;
    p.k = -1;
    p.source = source;
    p.include_trailing_bos = true;
    SweepOutcome first = runner.FusedFirstPass(p);
    SweepOutcome second = runner.SecondPass(p, gp_lists);
    std::string src = source == ContextProtocol::Source::kReference ? "ref" : "hyp";
    rows.push_back(WerRow("4", "fused", -1, src, true, 1, first));
    ordered_json row2 = WerRow("4", "fused", -1, src, true, 2, second);
    int64 utts = 0, violations = 0;
    double max_gap = 0.0;
    for (size_t si = 0; si < first.per_session.size(); ++si) {
      for (size_t ui = 0; ui < first.per_session[si].size(); ++ui) {
        ++utts;
        double f = first.per_session[si][ui].total_cost;
        double s = second.per_session[si][ui].total_cost;
        if (f > s + 1e-9) {
          ++violations;
          max_gap = std::max(max_gap, f - s);
        }
      }
    }
    row2["utterances"] = utts;
    row2["first_above_second"] = violations;
    row2["max_first_minus_second"] = max_gap;
    rows.push_back(row2);
  }

  report["rows"] = rows;
  return report;
}

std::string ReportToTsv(const ordered_json& report) {
  std::ostringstream os;
  os << "table\tlm\tk\tsource\twith_s\tshuffle\tpass\tppl\twer\tsubs\tins\tdels\tref_words\n";
  for (const auto& row : report.at("rows")) {
    auto field = [&row](const char* key) -> std::string {
      if (!row.contains(key)) return "-";
      const auto& v = row.at(key);
      if (v.is_string()) return v.get<std::string>();
      return v.dump();
    };
    os << field("table") << '\t' << field("lm") << '\t' << field("k") << '\t'
       << field("source") << '\t' << field("with_s") << '\t' << field("shuffle") << '\t'
       << field("pass") << '\t' << field("ppl") << '\t' << field("wer") << '\t'
       << field("subs") << '\t' << field("ins") << '\t' << field("dels") << '\t'
       << field("ref_words") << '\n';
  }
  return os.str();
}

}  // namespace deltadec
