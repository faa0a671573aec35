// tools/deltadec.cc

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

#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "base/io.h"
#include "base/rng.h"
#include "decoder/rescore.h"
#include "eval/experiment.h"
#include "lm/arpa-io.h"
#include "lm/ngram-prune.h"
#include "lm/ngram-train.h"
#include "nnet/checkpoint.h"
#include "nnet/grad-check.h"
#include "nnet/lstm-train.h"

namespace deltadec {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion =
    "deltadec 0.1.0 (formats: fst-text/1 arpa frames/1 ckpt/DDLSTM01 report/1)";

// Utterance text lines in corpus order; .jsonl files keep session structure,
// anything else is plain one-utterance-per-line text.
std::vector<std::string> LoadUtteranceLines(const std::string& path) {
  std::string contents = ReadFileToString(path);
  std::vector<std::string> lines;
  std::istringstream is(contents);
  std::string line;
  if (path.size() >= 6 && path.substr(path.size() - 6) == ".jsonl") {
    int64 lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (SplitWhitespace(line).empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, lineno, e.what());
      }
      if (!j.contains("text")) throw ParseError(path, lineno, "missing text field");
      lines.push_back(j["text"].get<std::string>());
    }
  } else {
    while (std::getline(is, line))
      if (!SplitWhitespace(line).empty()) lines.push_back(line);
  }
  if (lines.empty()) throw InputError("no utterances in " + path);
  return lines;
}

std::shared_ptr<Vocabulary> VocabFromCorpusFile(const std::string& path) {
  return std::make_shared<Vocabulary>(
      Vocabulary::FromCorpusLines(LoadUtteranceLines(path)));
}

std::vector<std::vector<int32>> TokenizeLines(const std::vector<std::string>& lines,
                                              const Vocabulary& vocab) {
  std::vector<std::vector<int32>> utts;
  for (const auto& l : lines) {
    auto ids = vocab.TokenizeToIds(l);
    if (!ids.empty()) utts.push_back(std::move(ids));
  }
  return utts;
}

std::string JoinWords(const std::vector<int32>& ids, const Vocabulary& vocab) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ' ';
    out += vocab.Name(ids[i]);
  }
  return out;
}

struct ProtocolFlags {
  int k = 0;
  std::string source = "ref";
  bool with_s = true;
  bool shuffle = false;
  uint64 shuffle_seed = 7;

  void Register(CLI::App* cmd) {
    cmd->add_option("--k", k, "history utterances for context (-1 = all)");
    cmd->add_option("--source", source, "context source: ref|hyp")
        ->check(CLI::IsMember({"ref", "hyp"}));
    cmd->add_flag("--with-s,!--without-s", with_s,
                  "keep the trailing <s> before the current utterance");
    cmd->add_flag("--shuffle", shuffle, "shuffle the selected history utterances");
    cmd->add_option("--shuffle-seed", shuffle_seed, "seed for --shuffle");
  }
  ContextProtocol ToProtocol() const {
    ContextProtocol p;
    p.k = k;
    p.source = source == "hyp" ? ContextProtocol::Source::kHypothesis
                               : ContextProtocol::Source::kReference;
    p.include_trailing_bos = with_s;
    p.shuffle = shuffle;
    p.shuffle_seed = shuffle_seed;
    return p;
  }
};

struct FusionFlags {
  double ngram_weight = 0.5;
  double lstm_weight = 0.5;
  bool unnormalized = true;
  int batch_size = 16;
  bool cache = true;

  void Register(CLI::App* cmd) {
    cmd->add_option("--ngram-weight", ngram_weight, "log-linear weight of the full n-gram");
    cmd->add_option("--lstm-weight", lstm_weight, "log-linear weight of the LSTM score");
    cmd->add_flag("--unnormalized,!--normalized", unnormalized,
                  "use raw logits instead of log softmax during decoding");
    cmd->add_option("--batch-size", batch_size, "neural scoring batch size");
    cmd->add_flag("--cache,!--no-cache", cache, "three-level score cache");
  }
  FusionConfig ToConfig(int ngram_approx_n) const {
    FusionConfig cfg;
    cfg.ngram_weight = ngram_weight;
    cfg.lstm_weight = lstm_weight;
    cfg.use_unnormalized = unnormalized;
    cfg.batch_size = batch_size;
    cfg.cache_enabled = cache;
    cfg.ngram_approx_n = ngram_approx_n;
    return cfg;
  }
};

struct DecodeFlags {
  double beam = 1e30;
  int max_active = 2000;
  int nbest = 1;
  int recomb_n = -1;
  int frames_per_symbol = 3;

  void Register(CLI::App* cmd, bool with_frames = true) {
    cmd->add_option("--beam", beam, "beam width (cost offset)");
    cmd->add_option("--max-active", max_active, "max tokens per frame (0 = unlimited)");
    cmd->add_option("--nbest", nbest, "n-best size");
    cmd->add_option("--recomb-n", recomb_n,
                    "history recombination order (-1 = exact full history)");
    if (with_frames)
      cmd->add_option("--frames-per-symbol", frames_per_symbol,
                      "frames each graph arc consumes");
  }
  DecodeConfig ToConfig() const {
    DecodeConfig cfg;
    cfg.beam = beam;
    cfg.max_active = max_active;
    cfg.nbest = nbest;
    cfg.ngram_approx_n = recomb_n;
    cfg.frames_per_symbol = frames_per_symbol;
    return cfg;
  }
};

LstmModelF LoadFloatLstm(const std::string& path, const Vocabulary& vocab,
                         LstmModel* keep_double = nullptr) {
  LoadedCheckpoint ck = LoadCheckpoint(path);
  if (ck.vocab_hash != vocab.Hash())
    throw InputError("checkpoint " + path + " was trained on a different vocabulary");
  if (ck.model.cfg.vocab_size != vocab.Symbols()->Size())
    throw InputError("checkpoint vocabulary size mismatch");
  LstmModelF f = CastToFloat(ck.model);
  if (keep_double != nullptr) *keep_double = std::move(ck.model);
  return f;
}

std::string FramesPath(const std::string& dir, const std::string& session, int order) {
  return dir + "/" + session + "_" + std::to_string(order) + ".frames";
}

int RunGen(const SimSpec& spec, const std::string& out, const std::string& frames_dir,
           bool coverage_session) {
  auto vocab = SimVocabulary(spec.vocab_size);
  auto corpus = GenCorpus(spec, *vocab);
  if (coverage_session) {
    // One deterministic session enumerating the whole vocabulary, so corpora
    // built from this file always cover the word list (and with it, every
    // pronunciation the test split can need).
    Conversation conv;
    conv.session_id = "coverage";
    auto ids = vocab->RegularWordIds();
    const int per_utt = 8;
    Utterance utt;
    for (size_t i = 0; i < ids.size(); ++i) {
      utt.words.push_back(ids[i]);
      if (utt.words.size() == per_utt || i + 1 == ids.size()) {
        utt.order = static_cast<int>(conv.utterances.size());
        conv.utterances.push_back(utt);
        utt = Utterance{};
      }
    }
    corpus.push_back(std::move(conv));
  }
  WriteCorpusJsonl(corpus, *vocab, out);
  if (!frames_dir.empty()) {
    fs::create_directories(frames_dir);
    Lexicon lex = Lexicon::SpellingLexicon(*vocab);
    for (const auto& conv : corpus) {
      for (const auto& utt : conv.utterances) {
        FrameMatrix fm =
            SynthFrames(utt.words, lex, spec.sigma, spec.frames_per_symbol,
                        UtteranceFrameSeed(spec.seed, conv.session_id, utt.order));
        WriteFrames(fm, FramesPath(frames_dir, conv.session_id, utt.order));
      }
    }
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

ordered_json HypothesisJson(const Hypothesis& h, const Vocabulary& vocab) {
  ordered_json j;
  j["words"] = JoinWords(h.words, vocab);
  j["acoustic"] = h.acoustic_cost;
  j["lm"] = h.lm_cost;
  j["total"] = h.total_cost;
  return j;
}

int RunDecode(const std::string& graph_dir, const std::string& arpa_g,
              const std::string& arpa_gp, const std::string& lstm_path,
              const std::string& corpus_path, const std::string& frames_dir,
              bool fusion_active, const FusionFlags& ff, const DecodeFlags& df,
              const ProtocolFlags& pf, const std::string& report_path) {
  NGramModel gp = ArpaReadFile(arpa_gp);
  const Vocabulary& vocab = gp.Vocab();
  Wfst graph_fst = Wfst::ReadText(graph_dir + "/graph.fst", graph_dir + "/graph.isyms",
                                  graph_dir + "/graph.osyms");
  ordered_json meta;
  try {
    meta = ordered_json::parse(ReadFileToString(graph_dir + "/meta.json"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(graph_dir + "/meta.json", 0, e.what());
  }
  if (meta.at("grammar_fingerprint").get<uint64>() != GrammarFingerprint(gp))
    throw ConfigError("graph in " + graph_dir + " was not compiled from " + arpa_gp);

  DecodingGraph graph;
  graph.fst = std::move(graph_fst);
  graph.phones = graph.fst.InputSymbols();
  graph.words = graph.fst.OutputSymbols();
  graph.grammar_fingerprint = meta.at("grammar_fingerprint").get<uint64>();
  if (!(*graph.words == *vocab.Symbols()))
    throw ConfigError("graph word symbols differ from the grammar vocabulary");

  std::optional<NGramModel> g;
  LstmModelF lstm_f;
  bool have_lstm = false;
  FusionConfig fusion_cfg = ff.ToConfig(df.recomb_n);
  if (fusion_active) {
    g = ArpaReadFile(arpa_g);
    if (!(g->Vocab() == vocab))
      throw ConfigError("G and G' vocabularies differ");
    if (fusion_cfg.lstm_weight != 0.0) {
      if (lstm_path.empty()) throw ConfigError("--lstm required when lstm-weight > 0");
      lstm_f = LoadFloatLstm(lstm_path, vocab);
      have_lstm = true;
    }
  }

  auto corpus = ReadCorpusJsonl(corpus_path, vocab);
  auto sessions = ToEvalSessions(corpus);
  ContextProtocol proto = pf.ToProtocol();

  ordered_json report;
  report["schema_version"] = 1;
  ordered_json cfg;
  cfg["graph"] = graph_dir;
  cfg["fusion"] = fusion_active;
  cfg["ngram_weight"] = fusion_cfg.ngram_weight;
  cfg["lstm_weight"] = fusion_cfg.lstm_weight;
  cfg["use_unnormalized"] = fusion_cfg.use_unnormalized;
  cfg["cache"] = fusion_cfg.cache_enabled;
  cfg["beam"] = df.beam;
  cfg["max_active"] = df.max_active;
  cfg["nbest"] = df.nbest;
  cfg["recomb_n"] = df.recomb_n;
  cfg["frames_per_symbol"] = df.frames_per_symbol;
  cfg["k"] = pf.k;
  cfg["source"] = pf.source;
  cfg["with_s"] = pf.with_s;
  report["config"] = cfg;
  ordered_json utts = ordered_json::array();

  WerStats wer;
  for (size_t si = 0; si < corpus.size(); ++si) {
    EvalSession& session = sessions[si];
    for (size_t ui = 0; ui < session.utts.size(); ++ui) {
      FrameMatrix frames = ReadFrames(
          FramesPath(frames_dir, corpus[si].session_id, corpus[si].utterances[ui].order));
      std::unique_ptr<FusionSession> fs;
      if (fusion_active) {
        auto ctx = SelectContext(session, ui, proto);
        LmStateF init;
        if (have_lstm)
          init = UtteranceStartState(lstm_f, ctx, proto.include_trailing_bos, vocab);
        fs = std::make_unique<FusionSession>(*g, gp, have_lstm ? &lstm_f : nullptr,
                                             fusion_cfg, std::move(init));
      }
      DecodeResult r = Decode(graph, frames, fs.get(), df.ToConfig());

      ordered_json ju;
      ju["session"] = corpus[si].session_id;
      ju["order"] = corpus[si].utterances[ui].order;
      ju["ref"] = JoinWords(session.utts[ui].ref, vocab);
      ordered_json nb = ordered_json::array();
      for (const auto& h : r.nbest) nb.push_back(HypothesisJson(h, vocab));
      ju["nbest"] = nb;
      ju["tokens_per_step"] = r.stats.tokens_per_step;
      ordered_json jc;
      jc["l1_hits"] = r.stats.cache.l1_hits;
      jc["l2_hits"] = r.stats.cache.l2_hits;
      jc["l3_hits"] = r.stats.cache.l3_hits;
      jc["full_forwards"] = r.stats.cache.full_forwards;
      ju["cache"] = jc;
      if (!r.stats.diagnostic.empty()) ju["diagnostic"] = r.stats.diagnostic;
      utts.push_back(std::move(ju));

      std::vector<int32> hyp =
          r.nbest.empty() ? std::vector<int32>{} : r.nbest.front().words;
      wer.Accumulate(ComputeWer(session.utts[ui].ref, hyp));
      session.utts[ui].hyp = std::move(hyp);
      session.utts[ui].has_hyp = true;
    }
  }
  report["utterances"] = std::move(utts);
  ordered_json jw;
  jw["wer"] = wer.Percent();
  jw["subs"] = wer.substitutions;
  jw["ins"] = wer.insertions;
  jw["dels"] = wer.deletions;
  jw["ref_words"] = wer.ref_words;
  report["wer"] = jw;
  WriteStringToFile(report_path, report.dump(2) + "\n");
  std::cout << "wer " << wer.Percent() << "\n";
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"desk-scale WFST speech decoding with on-the-fly neural LM fusion"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "key=value config file; command-line flags win");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a synthetic conversational corpus");
  SimSpec spec;
  std::string gen_out, gen_frames_dir;
  bool coverage = true;
  gen->add_option("--vocab-size", spec.vocab_size, "regular word count");
  gen->add_option("--sessions", spec.sessions, "number of sessions");
  gen->add_option("--utts-per-session", spec.utterances_per_session, "utterances per session");
  gen->add_option("--mean-len", spec.mean_utterance_len, "mean utterance length");
  gen->add_option("--beta", spec.beta, "cross-utterance cue strength in [0,1]");
  gen->add_option("--sigma", spec.sigma, "acoustic logit noise");
  gen->add_option("--frames-per-symbol", spec.frames_per_symbol, "frames per acoustic symbol");
  gen->add_option("--seed", spec.seed, "generation seed");
  gen->add_option("--out", gen_out, "output corpus (.jsonl)")->required();
  gen->add_option("--frames-dir", gen_frames_dir, "also synthesize per-utterance frame files");
  gen->add_flag("--coverage-session,!--no-coverage-session", coverage,
                "append one session enumerating the whole vocabulary");

  // ---- train-ngram ----
  auto* tn = app.add_subcommand("train-ngram", "train a Witten-Bell backoff n-gram LM");
  std::string tn_corpus, tn_out;
  int tn_order = 3;
  tn->add_option("--corpus", tn_corpus, "training corpus (.jsonl or plain text)")->required();
  tn->add_option("--order", tn_order, "model order");
  tn->add_option("--out", tn_out, "output ARPA file")->required();

  // ---- prune ----
  auto* pr = app.add_subcommand("prune", "relative-entropy pruning of an ARPA model");
  std::string pr_in, pr_out;
  double pr_threshold = 0.0;
  pr->add_option("--in", pr_in, "input ARPA")->required();
  pr->add_option("--threshold", pr_threshold, "relative-entropy threshold (nats)");
  pr->add_option("--out", pr_out, "output ARPA")->required();

  // ---- compile-graph ----
  auto* cg = app.add_subcommand("compile-graph", "build the static decoding graph L o G'");
  std::string cg_arpa, cg_dir;
  cg->add_option("--arpa", cg_arpa, "pruned grammar ARPA")->required();
  cg->add_option("--out-dir", cg_dir, "output directory")->required();

  // ---- train-lstm ----
  auto* tl = app.add_subcommand("train-lstm", "train the LSTM LM (CE or NCE)");
  std::string tl_corpus, tl_out, tl_objective = "ce";
  LstmConfig tl_cfg;
  tl->add_option("--corpus", tl_corpus, "training corpus")->required();
  tl->add_option("--embed", tl_cfg.embed_dim, "embedding dim");
  tl->add_option("--hidden", tl_cfg.hidden_dim, "hidden dim");
  tl->add_option("--layers", tl_cfg.num_layers, "layer count");
  tl->add_option("--epochs", tl_cfg.epochs, "training epochs");
  tl->add_option("--lr", tl_cfg.learning_rate, "learning rate");
  tl->add_option("--bptt", tl_cfg.bptt_limit, "BPTT truncation length");
  tl->add_option("--objective", tl_objective, "ce|nce")->check(CLI::IsMember({"ce", "nce"}));
  tl->add_option("--nce-k", tl_cfg.nce_k, "noise samples per position");
  tl->add_option("--seed", tl_cfg.seed, "training seed");
  tl->add_option("--out", tl_out, "output checkpoint")->required();

  // ---- decode ----
  auto* dc = app.add_subcommand("decode", "first-pass beam decoding");
  std::string dc_graph, dc_g, dc_gp, dc_lstm, dc_corpus, dc_frames, dc_report;
  bool dc_fusion = true;
  FusionFlags dc_ff;
  DecodeFlags dc_df;
  ProtocolFlags dc_pf;
  dc->add_option("--graph-dir", dc_graph, "compiled graph directory")->required();
  dc->add_option("--arpa-gp", dc_gp, "pruned grammar (must match the graph)")->required();
  dc->add_option("--arpa-g", dc_g, "full grammar for fusion");
  dc->add_option("--lstm", dc_lstm, "LSTM checkpoint");
  dc->add_option("--corpus", dc_corpus, "test corpus (.jsonl)")->required();
  dc->add_option("--frames-dir", dc_frames, "frame files from gen")->required();
  dc->add_flag("--fusion,!--no-fusion", dc_fusion, "apply on-the-fly fusion deltas");
  dc_ff.Register(dc);
  dc_df.Register(dc);
  dc_pf.Register(dc);
  dc->add_option("--report", dc_report, "output report JSON")->required();

  // ---- rescore ----
  auto* rs = app.add_subcommand("rescore", "second-pass n-best rescoring of a decode report");
  std::string rs_nbest, rs_g, rs_gp, rs_lstm, rs_corpus, rs_report;
  FusionFlags rs_ff;
  ProtocolFlags rs_pf;
  rs->add_option("--nbest", rs_nbest, "decode report JSON with n-best lists")->required();
  rs->add_option("--arpa-g", rs_g, "full grammar")->required();
  rs->add_option("--arpa-gp", rs_gp, "pruned grammar")->required();
  rs->add_option("--lstm", rs_lstm, "LSTM checkpoint");
  rs->add_option("--corpus", rs_corpus, "test corpus (.jsonl), for references")->required();
  rs_ff.Register(rs);
  rs_pf.Register(rs);
  rs->add_option("--report", rs_report, "output report JSON")->required();

  // ---- ppl ----
  auto* pp = app.add_subcommand("ppl", "perplexity under a context protocol");
  std::string pp_model, pp_corpus, pp_train;
  ProtocolFlags pp_pf;
  pp->add_option("--model", pp_model, "ARPA file or LSTM checkpoint")->required();
  pp->add_option("--corpus", pp_corpus, "test corpus (.jsonl)")->required();
  pp->add_option("--train-corpus", pp_train,
                 "training corpus (vocabulary source, required for checkpoints)");
  pp_pf.Register(pp);

  // ---- wer ----
  auto* we = app.add_subcommand("wer", "word error rate between two text files");
  std::string we_ref, we_hyp;
  we->add_option("--ref", we_ref, "reference text, one utterance per line")->required();
  we->add_option("--hyp", we_hyp, "hypothesis text, one utterance per line")->required();

  // ---- experiment ----
  auto* ex = app.add_subcommand("experiment",
                                "train models and reproduce the context experiment grid");
  std::string ex_train, ex_test, ex_report, ex_tsv, ex_objective = "ce";
  int ex_order = 3;
  double ex_threshold = 0.05;
  LstmConfig ex_lcfg;
  SimSpec ex_sim;
  FusionFlags ex_ff;
  DecodeFlags ex_df;
  int ex_jobs = 1, ex_second_nbest = 100;
  uint64 ex_shuffle_seed = 7;
  ex->add_option("--train-corpus", ex_train, "training corpus (.jsonl)")->required();
  ex->add_option("--test-corpus", ex_test, "test corpus (.jsonl)")->required();
  ex->add_option("--order", ex_order, "n-gram order");
  ex->add_option("--threshold", ex_threshold, "pruning threshold for G'");
  ex->add_option("--embed", ex_lcfg.embed_dim, "LSTM embedding dim");
  ex->add_option("--hidden", ex_lcfg.hidden_dim, "LSTM hidden dim");
  ex->add_option("--epochs", ex_lcfg.epochs, "LSTM epochs");
  ex->add_option("--lr", ex_lcfg.learning_rate, "LSTM learning rate");
  ex->add_option("--objective", ex_objective, "ce|nce")->check(CLI::IsMember({"ce", "nce"}));
  ex->add_option("--nce-k", ex_lcfg.nce_k, "NCE noise samples");
  ex->add_option("--seed", ex_lcfg.seed, "training seed");
  ex->add_option("--sigma", ex_sim.sigma, "acoustic noise for synthesized frames");
  ex->add_option("--sim-seed", ex_sim.seed, "frame synthesis seed");
  ex_ff.Register(ex);
  ex_df.Register(ex);
  ex->add_option("--second-pass-nbest", ex_second_nbest, "n-best size for rescoring");
  ex->add_option("--shuffle-seed", ex_shuffle_seed, "seed for the shuffled-history row");
  ex->add_option("--jobs", ex_jobs, "worker threads across sessions");
  ex->add_option("--report", ex_report, "output report JSON")->required();
  ex->add_option("--tsv", ex_tsv, "also export a flat TSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints usage or the error
    return code == 0 ? 0 : 1;
  }

  if (gen->parsed()) return RunGen(spec, gen_out, gen_frames_dir, coverage);

  if (tn->parsed()) {
    auto lines = LoadUtteranceLines(tn_corpus);
    NGramModel model = TrainNGramFromLines(lines, tn_order);
    ArpaWriteFile(model, tn_out);
    std::cout << "wrote " << tn_out << " (" << model.NumGramsTotal() << " grams)\n";
    return 0;
  }

  if (pr->parsed()) {
    NGramModel model = ArpaReadFile(pr_in);
    NGramModel pruned = PruneNGram(model, pr_threshold);
    ArpaWriteFile(pruned, pr_out);
    std::cout << "wrote " << pr_out << " (" << model.NumGramsTotal() << " -> "
              << pruned.NumGramsTotal() << " grams)\n";
    return 0;
  }

  if (cg->parsed()) {
    NGramModel gp = ArpaReadFile(cg_arpa);
    Lexicon lex = Lexicon::SpellingLexicon(gp.Vocab());
    DecodingGraph graph = BuildGraph(lex, gp);
    fs::create_directories(cg_dir);
    graph.fst.WriteText(cg_dir + "/graph.fst", cg_dir + "/graph.isyms",
                        cg_dir + "/graph.osyms");
    ordered_json meta;
    meta["grammar_fingerprint"] = graph.grammar_fingerprint;
    meta["states"] = graph.fst.NumStates();
    WriteStringToFile(cg_dir + "/meta.json", meta.dump(2) + "\n");
    std::cout << "wrote " << cg_dir << " (" << graph.fst.NumStates() << " states)\n";
    return 0;
  }

  if (tl->parsed()) {
    auto lines = LoadUtteranceLines(tl_corpus);
    auto vocab = std::make_shared<Vocabulary>(Vocabulary::FromCorpusLines(lines));
    auto utts = TokenizeLines(lines, *vocab);
    tl_cfg.vocab_size = vocab->Symbols()->Size();
    tl_cfg.objective = tl_objective == "nce" ? Objective::kNce : Objective::kCrossEntropy;
    TrainResult res = TrainLstm(LstmModel::Init(tl_cfg), utts, *vocab);
    SaveCheckpoint(res.model, vocab->Hash(), tl_out);
    std::cout << "wrote " << tl_out << " (final loss " << res.epoch_losses.back() << ")\n";
    return 0;
  }

  if (dc->parsed())
    return RunDecode(dc_graph, dc_g, dc_gp, dc_lstm, dc_corpus, dc_frames, dc_fusion,
                     dc_ff, dc_df, dc_pf, dc_report);

  if (rs->parsed()) {
    NGramModel g = ArpaReadFile(rs_g);
    NGramModel gp = ArpaReadFile(rs_gp);
    if (!(g.Vocab() == gp.Vocab())) throw ConfigError("G and G' vocabularies differ");
    const Vocabulary& vocab = g.Vocab();
    FusionConfig fcfg = rs_ff.ToConfig(-1);
    LstmModelF lstm_f;
    bool have_lstm = false;
    if (fcfg.lstm_weight != 0.0) {
      if (rs_lstm.empty()) throw ConfigError("--lstm required when lstm-weight > 0");
      lstm_f = LoadFloatLstm(rs_lstm, vocab);
      have_lstm = true;
    }
    auto corpus = ReadCorpusJsonl(rs_corpus, vocab);
    auto sessions = ToEvalSessions(corpus);
    ContextProtocol proto = rs_pf.ToProtocol();

    ordered_json in;
    try {
      in = ordered_json::parse(ReadFileToString(rs_nbest));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(rs_nbest, 0, e.what());
    }
    std::map<std::pair<std::string, int>, std::vector<Hypothesis>> lists;
    for (const auto& ju : in.at("utterances")) {
      std::vector<Hypothesis> nb;
      for (const auto& jh : ju.at("nbest")) {
        Hypothesis h;
        h.words = vocab.TokenizeToIds(jh.at("words").get<std::string>());
        h.acoustic_cost = jh.at("acoustic").get<double>();
        h.lm_cost = jh.at("lm").get<double>();
        h.total_cost = jh.at("total").get<double>();
        nb.push_back(std::move(h));
      }
      lists[{ju.at("session").get<std::string>(), ju.at("order").get<int>()}] = std::move(nb);
    }

    ordered_json report;
    report["schema_version"] = 1;
    report["config"] = in.at("config");
    report["config"]["rescored"] = true;
    report["config"]["k"] = rs_pf.k;
    report["config"]["source"] = rs_pf.source;
    report["config"]["with_s"] = rs_pf.with_s;
    ordered_json utts = ordered_json::array();
    WerStats wer;
    for (size_t si = 0; si < corpus.size(); ++si) {
      EvalSession& session = sessions[si];
      for (size_t ui = 0; ui < session.utts.size(); ++ui) {
        auto key = std::make_pair(corpus[si].session_id, corpus[si].utterances[ui].order);
        auto it = lists.find(key);
        if (it == lists.end())
          throw InputError("decode report misses utterance " + key.first + "_" +
                           std::to_string(key.second));
        auto ctx = SelectContext(session, ui, proto);
        LmStateF init;
        if (have_lstm)
          init = UtteranceStartState(lstm_f, ctx, proto.include_trailing_bos, vocab);
        FusionSession fs(g, gp, have_lstm ? &lstm_f : nullptr, fcfg, std::move(init));
        std::vector<Hypothesis> rescored = RescoreNBest(it->second, &fs);

        ordered_json ju;
        ju["session"] = key.first;
        ju["order"] = key.second;
        ju["ref"] = JoinWords(session.utts[ui].ref, vocab);
        ordered_json nb = ordered_json::array();
        for (const auto& h : rescored) nb.push_back(HypothesisJson(h, vocab));
        ju["nbest"] = nb;
        utts.push_back(std::move(ju));

        std::vector<int32> hyp =
            rescored.empty() ? std::vector<int32>{} : rescored.front().words;
        wer.Accumulate(ComputeWer(session.utts[ui].ref, hyp));
        session.utts[ui].hyp = std::move(hyp);
        session.utts[ui].has_hyp = true;
      }
    }
    report["utterances"] = std::move(utts);
    ordered_json jw;
    jw["wer"] = wer.Percent();
    jw["subs"] = wer.substitutions;
    jw["ins"] = wer.insertions;
    jw["dels"] = wer.deletions;
    jw["ref_words"] = wer.ref_words;
    report["wer"] = jw;
    WriteStringToFile(rs_report, report.dump(2) + "\n");
    std::cout << "wer " << wer.Percent() << "\n";
    return 0;
  }

  if (pp->parsed()) {
    bool is_arpa = true;
    {
      std::string head = ReadFileToString(pp_model).substr(0, 8);
      if (head.rfind("DDLSTM", 0) == 0) is_arpa = false;
    }
    double ppl;
    if (is_arpa) {
      NGramModel m = ArpaReadFile(pp_model);
      auto corpus = ReadCorpusJsonl(pp_corpus, m.Vocab());
      ppl = PerplexityNGram(m, ToEvalSessions(corpus), pp_pf.ToProtocol());
    } else {
      if (pp_train.empty())
        throw ConfigError("--train-corpus required to evaluate a checkpoint");
      auto vocab = VocabFromCorpusFile(pp_train);
      LoadedCheckpoint ck = LoadCheckpoint(pp_model);
      if (ck.vocab_hash != vocab->Hash())
        throw InputError("checkpoint was trained on a different vocabulary");
      auto corpus = ReadCorpusJsonl(pp_corpus, *vocab);
      ppl = PerplexityLstm(ck.model, ToEvalSessions(corpus), pp_pf.ToProtocol(), *vocab);
    }
    std::cout.setf(std::ios::fixed);
    std::cout.precision(4);
    std::cout << ppl << "\n";
    return 0;
  }

  if (we->parsed()) {
    auto raw_lines = [](const std::string& path) {
      std::istringstream is(ReadFileToString(path));
      std::vector<std::string> lines;
      std::string line;
      while (std::getline(is, line)) lines.push_back(line);
      while (!lines.empty() && SplitWhitespace(lines.back()).empty()) lines.pop_back();
      return lines;
    };
    auto ref_lines = raw_lines(we_ref);
    auto hyp_lines = raw_lines(we_hyp);
    if (ref_lines.size() != hyp_lines.size())
      throw InputError("ref has " + std::to_string(ref_lines.size()) + " utterances, hyp has " +
                       std::to_string(hyp_lines.size()));
    SymbolTable words;
    auto to_ids = [&words](const std::string& line) {
      std::vector<int32> ids;
      for (const auto& tok : SplitWhitespace(line)) ids.push_back(words.AddSymbol(tok));
      return ids;
    };
    WerStats wer;
    for (size_t i = 0; i < ref_lines.size(); ++i) {
      auto ref_ids = to_ids(ref_lines[i]);
      if (ref_ids.empty())
        throw InputError("empty reference utterance at line " + std::to_string(i + 1));
      wer.Accumulate(ComputeWer(ref_ids, to_ids(hyp_lines[i])));
    }
    std::cout.setf(std::ios::fixed);
    std::cout.precision(2);
    std::cout << wer.Percent() << "\n";
    std::cout << "S=" << wer.substitutions << " I=" << wer.insertions
              << " D=" << wer.deletions << " N=" << wer.ref_words << "\n";
    return 0;
  }

  if (ex->parsed()) {
    auto train_lines = LoadUtteranceLines(ex_train);
    auto vocab = std::make_shared<Vocabulary>(Vocabulary::FromCorpusLines(train_lines));
    auto train_utts = TokenizeLines(train_lines, *vocab);

    NGramModel g = TrainNGram(train_utts, ex_order, vocab);
    NGramModel gp = PruneNGram(g, ex_threshold);
    Lexicon lex = Lexicon::SpellingLexicon(*vocab);
    DecodingGraph graph = BuildGraph(lex, gp);

    ex_lcfg.vocab_size = vocab->Symbols()->Size();
    ex_lcfg.objective = ex_objective == "nce" ? Objective::kNce : Objective::kCrossEntropy;
    TrainResult tr = TrainLstm(LstmModel::Init(ex_lcfg), train_utts, *vocab);

    ExperimentInputs inputs;
    inputs.sim = ex_sim;
    inputs.sim.frames_per_symbol = ex_df.frames_per_symbol;
    inputs.test_corpus = ReadCorpusJsonl(ex_test, *vocab);
    inputs.g = &g;
    inputs.gp = &gp;
    inputs.graph = &graph;
    inputs.lexicon = &lex;
    inputs.lstm = &tr.model;
    inputs.fusion = ex_ff.ToConfig(ex_df.recomb_n);
    inputs.decode = ex_df.ToConfig();
    inputs.decode.frames_per_symbol = ex_sim.frames_per_symbol;
    inputs.second_pass_nbest = ex_second_nbest;
    inputs.shuffle_seed = ex_shuffle_seed;
    inputs.jobs = ex_jobs;

    ordered_json report = RunContextExperiment(inputs);
    WriteStringToFile(ex_report, report.dump(2) + "\n");
    if (!ex_tsv.empty()) WriteStringToFile(ex_tsv, ReportToTsv(report));
    std::cout << "wrote " << ex_report << "\n";
    return 0;
  }

  return 0;
}

}  // namespace
}  // namespace deltadec

int main(int argc, char** argv) {
  try {
    return deltadec::Main(argc, argv);
  } catch (const deltadec::InputError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const deltadec::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const deltadec::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const deltadec::ContractError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
