#include "srlp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "srlp/alignment.hpp"
#include "srlp/corpus.hpp"
#include "srlp/digest.hpp"
#include "srlp/error.hpp"
#include "srlp/eval.hpp"
#include "srlp/model.hpp"
#include "srlp/morphology.hpp"
#include "srlp/projection.hpp"
#include "srlp/rational.hpp"
#include "srlp/text.hpp"

namespace srlp::cli {

using nlohmann::json;

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::string text = read_file(path);
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();
  return lines;
}

// One provenance line per run: what ran, with which effective settings, over
// which exact input bytes.
void emit_provenance(const std::string& subcommand, const json& settings,
                     std::uint64_t seed, const std::vector<std::string>& inputs,
                     const std::string& prov_path) {
  json digests = json::object();
  for (const auto& path : inputs) digests[path] = file_digest(path);
  json record{{"subcommand", subcommand},
              {"config_hash", "fnv1a64:" + fnv1a64_hex(settings.dump())},
              {"seed", seed},
              {"inputs", digests}};
  std::string line = record.dump();
  std::cerr << line << "\n";
  if (!prov_path.empty()) write_file(prov_path, line + "\n");
}

// Max index referenced on a pharaoh line, per side; used when no token text
// is available to bound-check against.
std::pair<int, int> inferred_lengths(const std::string& line) {
  int max_a = 0, max_b = 0;
  for (const std::string& tok : split_ws(line)) {
    std::size_t dash = tok.find('-');
    if (dash == std::string::npos) continue;  // parse_pharaoh reports the error
    max_a = std::max(max_a, std::atoi(tok.substr(0, dash).c_str()) + 1);
    max_b = std::max(max_b, std::atoi(tok.substr(dash + 1).c_str()) + 1);
  }
  return {std::max(1, max_a), std::max(1, max_b)};
}

struct ConfigFlags {
  std::string preset = "desk";
  std::string config_path;
  std::string lemma_mode;
  double lr = 0;
  std::uint64_t seed = 0;
  int epochs = -1;
  int minibatch = 0;
  int min_count = 0;
  double null_subsample = -1;

  CLI::Option* lemma_mode_opt = nullptr;
  CLI::Option* lr_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* epochs_opt = nullptr;
  CLI::Option* minibatch_opt = nullptr;
  CLI::Option* min_count_opt = nullptr;
  CLI::Option* null_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--preset", preset, "Config preset: desk or paper")
        ->check(CLI::IsMember({"desk", "paper"}));
    cmd->add_option("--config", config_path, "JSON config file (flags win over it)");
    lemma_mode_opt = cmd->add_option("--lemma-mode", lemma_mode,
                                     "Lemma slot source: char, ustem or slem");
    lr_opt = cmd->add_option("--lr", lr, "Learning rate");
    seed_opt = cmd->add_option("--seed", seed, "RNG seed");
    epochs_opt = cmd->add_option("--epochs", epochs, "Training epochs");
    minibatch_opt = cmd->add_option("--minibatch", minibatch, "Instances per Adam step");
    min_count_opt = cmd->add_option("--min-count", min_count, "Word vocab threshold");
    null_opt = cmd->add_option("--null-subsample", null_subsample,
                               "Keep probability for NULL instances");
  }

  // preset -> config file -> explicit flags, later wins.
  ModelConfig resolve() const {
    ModelConfig cfg = preset == "paper" ? ModelConfig::paper() : ModelConfig::desk();
    if (!config_path.empty()) {
      json j;
      try {
        j = json::parse(read_file(config_path));
      } catch (const json::exception& e) {
        fail("%s: bad config JSON: %s", config_path.c_str(), e.what());
      }
      auto opt_int = [&](const char* k, int& slot) {
        if (j.contains(k)) slot = j.at(k).get<int>();
      };
      opt_int("d_w", cfg.d_w);
      opt_int("d_c", cfg.d_c);
      opt_int("d_ch", cfg.d_ch);
      opt_int("d_le", cfg.d_le);
      opt_int("d_lem_dec", cfg.d_lem_dec);
      opt_int("d_r", cfg.d_r);
      opt_int("d_h", cfg.d_h);
      opt_int("d_pos", cfg.d_pos);
      opt_int("char_depth", cfg.char_depth);
      opt_int("enc_depth", cfg.enc_depth);
      opt_int("lemma_depth", cfg.lemma_depth);
      opt_int("sense_depth", cfg.sense_depth);
      opt_int("minibatch", cfg.minibatch);
      opt_int("epochs", cfg.epochs);
      opt_int("min_count", cfg.min_count);
      if (j.contains("lr")) cfg.lr = j.at("lr").get<double>();
      if (j.contains("null_subsample"))
        cfg.null_subsample = j.at("null_subsample").get<double>();
      if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
      if (j.contains("lemma_mode"))
        cfg.lemma_mode = lemma_mode_from_name(j.at("lemma_mode").get<std::string>());
    }
    if (lemma_mode_opt->count()) cfg.lemma_mode = lemma_mode_from_name(lemma_mode);
    if (lr_opt->count()) cfg.lr = lr;
    if (seed_opt->count()) cfg.seed = seed;
    if (epochs_opt->count()) cfg.epochs = epochs;
    if (minibatch_opt->count()) cfg.minibatch = minibatch;
    if (min_count_opt->count()) cfg.min_count = min_count;
    if (null_opt->count()) cfg.null_subsample = null_subsample;
    cfg.validate();
    return cfg;
  }
};

json config_settings_json(const ModelConfig& cfg) {
  return json{{"d_w", cfg.d_w},
              {"d_c", cfg.d_c},
              {"d_ch", cfg.d_ch},
              {"d_le", cfg.d_le},
              {"d_lem_dec", cfg.d_lem_dec},
              {"d_r", cfg.d_r},
              {"d_h", cfg.d_h},
              {"d_pos", cfg.d_pos},
              {"char_depth", cfg.char_depth},
              {"enc_depth", cfg.enc_depth},
              {"lemma_depth", cfg.lemma_depth},
              {"sense_depth", cfg.sense_depth},
              {"lemma_mode", lemma_mode_name(cfg.lemma_mode)},
              {"lr", cfg.lr},
              {"minibatch", cfg.minibatch},
              {"epochs", cfg.epochs},
              {"min_count", cfg.min_count},
              {"null_subsample", cfg.null_subsample},
              {"seed", cfg.seed}};
}

json stats_json(const ProjectionStats& s) {
  return json{{"sentences", s.sentences},
              {"tokens", s.tokens},
              {"types", s.types},
              {"predicates", s.predicates}};
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Cross-lingual SRL projection and character-based tagging toolkit"};
  app.require_subcommand(1);

  // intersect ------------------------------------------------------------
  auto* c_intersect = app.add_subcommand(
      "intersect", "Intersect two directional alignment files into one-to-one links");
  std::string fwd_path, rev_path, out_path, src_text, tgt_text, prov_path;
  c_intersect->add_option("--fwd", fwd_path, "Source-to-target pharaoh file")->required();
  c_intersect->add_option("--rev", rev_path, "Target-to-source pharaoh file")->required();
  c_intersect->add_option("--out", out_path, "Output pharaoh file")->required();
  c_intersect->add_option("--src-text", src_text, "Source tokenized text (for length checks)");
  c_intersect->add_option("--tgt-text", tgt_text, "Target tokenized text (for length checks)");
  c_intersect->add_option("--prov", prov_path, "Write the provenance record here too");

  // project --------------------------------------------------------------
  auto* c_project = app.add_subcommand(
      "project", "Project source predicate-argument frames onto target sentences");
  std::string p_src, p_tgt, p_fwd, p_rev, p_out, p_prov;
  std::string min_density = "0.8";
  c_project->add_option("--src", p_src, "Annotated source CoNLL file")->required();
  c_project->add_option("--tgt", p_tgt, "Target tokenized text, one sentence per line")
      ->required();
  c_project->add_option("--fwd", p_fwd, "Source-to-target pharaoh file")->required();
  c_project->add_option("--rev", p_rev, "Target-to-source pharaoh file")->required();
  c_project->add_option("--out", p_out, "Projected CoNLL output")->required();
  c_project->add_option("--min-density", min_density,
                        "Keep sentences with alignment density >= this (decimal)");
  c_project->add_option("--prov", p_prov, "Write the provenance record here too");

  // stats ----------------------------------------------------------------
  auto* c_stats = app.add_subcommand("stats", "Corpus statistics as one JSON line");
  std::string s_in, s_prov;
  c_stats->add_option("--in", s_in, "CoNLL file")->required();
  c_stats->add_option("--prov", s_prov, "Write the provenance record here too");

  // stem-compile -----------------------------------------------------------
  auto* c_stem = app.add_subcommand(
      "stem-compile", "Compile a stem lexicon from segmentations or a lemma file");
  std::string m_mode = "ustem", m_in, m_out, m_prov;
  c_stem->add_option("--mode", m_mode, "ustem (morph/TAG file) or slem (word<TAB>lemma)")
      ->check(CLI::IsMember({"ustem", "slem"}));
  c_stem->add_option("--in", m_in, "Input file")->required();
  c_stem->add_option("--out", m_out, "Compiled lexicon JSON")->required();
  c_stem->add_option("--prov", m_prov, "Write the provenance record here too");

  // train-args --------------------------------------------------------------
  auto* c_train_args =
      app.add_subcommand("train-args", "Train the argument classifier");
  std::string ta_train, ta_out, ta_emb, ta_lexicon, ta_prov;
  ConfigFlags ta_cfg;
  c_train_args->add_option("--train", ta_train, "Training CoNLL file")->required();
  c_train_args->add_option("--out", ta_out, "Checkpoint path (sidecar at <out>.json)")
      ->required();
  c_train_args->add_option("--emb", ta_emb, "Pre-trained embedding text file");
  c_train_args->add_option("--lexicon", ta_lexicon, "Compiled stem lexicon JSON");
  c_train_args->add_option("--prov", ta_prov, "Write the provenance record here too");
  ta_cfg.attach(c_train_args);

  // train-senses ------------------------------------------------------------
  auto* c_train_senses =
      app.add_subcommand("train-senses", "Train the predicate sense disambiguator");
  std::string ts_train, ts_out, ts_emb, ts_prov;
  ConfigFlags ts_cfg;
  c_train_senses->add_option("--train", ts_train, "Training CoNLL file")->required();
  c_train_senses->add_option("--out", ts_out, "Checkpoint path")->required();
  c_train_senses->add_option("--emb", ts_emb, "Pre-trained embedding text file");
  c_train_senses->add_option("--prov", ts_prov, "Write the provenance record here too");
  ts_cfg.attach(c_train_senses);

  // train-predid ------------------------------------------------------------
  auto* c_train_predid = app.add_subcommand(
      "train-predid", "Train the source-side predicate identifier (needs POS)");
  std::string tp_train, tp_out, tp_emb, tp_prov;
  ConfigFlags tp_cfg;
  c_train_predid->add_option("--train", tp_train, "Training CoNLL file")->required();
  c_train_predid->add_option("--out", tp_out, "Checkpoint path")->required();
  c_train_predid->add_option("--emb", tp_emb, "Pre-trained embedding text file");
  c_train_predid->add_option("--prov", tp_prov, "Write the provenance record here too");
  tp_cfg.attach(c_train_predid);

  // tag -----------------------------------------------------------------
  auto* c_tag = app.add_subcommand(
      "tag", "Tag argument edges (and optionally senses) at the input's predicates");
  std::string g_in, g_out, g_model, g_senses, g_prov;
  int g_threads = 0;
  c_tag->add_option("--in", g_in, "Input CoNLL with predicate positions")->required();
  c_tag->add_option("--model", g_model, "Argument model checkpoint")->required();
  c_tag->add_option("--sense-model", g_senses,
                    "Sense model checkpoint (gold senses kept when absent)");
  c_tag->add_option("--out", g_out, "Tagged CoNLL output")->required();
  c_tag->add_option("--threads", g_threads, "Worker threads (SRL_THREADS caps this)");
  c_tag->add_option("--prov", g_prov, "Write the provenance record here too");

  // score ----------------------------------------------------------------
  auto* c_score = app.add_subcommand("score", "Labeled F over dependencies and senses");
  std::string e_gold, e_pred, e_json, e_prov;
  c_score->add_option("--gold", e_gold, "Gold CoNLL file")->required();
  c_score->add_option("--pred", e_pred, "Predicted CoNLL file")->required();
  c_score->add_option("--out-json", e_json, "Write the JSON report here too");
  c_score->add_option("--prov", e_prov, "Write the provenance record here too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (c_intersect->parsed()) {
      std::vector<std::string> fwd_lines = read_lines(fwd_path);
      std::vector<std::string> rev_lines = read_lines(rev_path);
      if (fwd_lines.size() != rev_lines.size())
        fail("alignment files differ in length: %zu vs %zu", fwd_lines.size(),
             rev_lines.size());
      std::vector<std::vector<std::string>> src_toks, tgt_toks;
      if (!src_text.empty()) {
        std::ifstream in(src_text);
        if (!in) fail("cannot open file: %s", src_text.c_str());
        src_toks = read_token_lines(in);
        if (src_toks.size() != fwd_lines.size())
          fail("source text has %zu lines for %zu alignment lines", src_toks.size(),
               fwd_lines.size());
      }
      if (!tgt_text.empty()) {
        std::ifstream in(tgt_text);
        if (!in) fail("cannot open file: %s", tgt_text.c_str());
        tgt_toks = read_token_lines(in);
        if (tgt_toks.size() != fwd_lines.size())
          fail("target text has %zu lines for %zu alignment lines", tgt_toks.size(),
               fwd_lines.size());
      }
      std::string out;
      long links = 0;
      for (std::size_t i = 0; i < fwd_lines.size(); ++i) {
        auto [f_src, f_tgt] = inferred_lengths(fwd_lines[i]);
        auto [r_tgt, r_src] = inferred_lengths(rev_lines[i]);
        int src_len = !src_toks.empty() ? static_cast<int>(src_toks[i].size())
                                        : std::max(f_src, r_src);
        int tgt_len = !tgt_toks.empty() ? static_cast<int>(tgt_toks[i].size())
                                        : std::max(f_tgt, r_tgt);
        DirectionalAlignment fwd = parse_pharaoh(fwd_lines[i], src_len, tgt_len);
        DirectionalAlignment rev_raw = parse_pharaoh(rev_lines[i], tgt_len, src_len);
        DirectionalAlignment rev;
        for (const auto& [t, s] : rev_raw.links) rev.links.emplace(s, t);
        OneToOneAlignment one = intersect(fwd, rev, src_len, tgt_len);
        links += static_cast<long>(one.a.size());
        out += to_pharaoh(one);
        out.push_back('\n');
      }
      write_file(out_path, out);
      std::cout << json{{"pairs", fwd_lines.size()}, {"links", links}}.dump() << "\n";
      emit_provenance("intersect", json{{"out", out_path}}, 0, {fwd_path, rev_path},
                      prov_path);
      return 0;
    }

    if (c_project->parsed()) {
      Rational threshold = Rational::from_decimal(min_density);
      Corpus src = read_conll_file(p_src);
      std::ifstream tgt_in(p_tgt);
      if (!tgt_in) fail("cannot open file: %s", p_tgt.c_str());
      std::vector<std::vector<std::string>> tgt = read_token_lines(tgt_in);
      ProjectionResult result = project_corpus(src, tgt, read_lines(p_fwd),
                                               read_lines(p_rev), threshold);
      write_conll_file(result.corpus, p_out);
      std::cout << stats_json(result.stats).dump() << "\n";
      emit_provenance("project",
                      json{{"min_density", min_density}, {"out", p_out}}, 0,
                      {p_src, p_tgt, p_fwd, p_rev}, p_prov);
      return 0;
    }

    if (c_stats->parsed()) {
      ProjectionStats stats = corpus_stats(read_conll_file(s_in));
      std::cout << stats_json(stats).dump() << "\n";
      emit_provenance("stats", json::object(), 0, {s_in}, s_prov);
      return 0;
    }

    if (c_stem->parsed()) {
      StemLexicon lex;
      if (m_mode == "ustem") {
        lex = compile_lexicon_file(m_in, &std::cerr);
      } else {
        lex = compile_lemma_lexicon_file(m_in);
      }
      write_file(m_out, serialize_lexicon(lex) + "\n");
      std::cout << json{{"stems", lex.known_stems.size()},
                        {"prefixes", lex.prefixes.size()},
                        {"suffixes", lex.suffixes.size()}}
                       .dump()
                << "\n";
      emit_provenance("stem-compile", json{{"mode", m_mode}, {"out", m_out}}, 0, {m_in},
                      m_prov);
      return 0;
    }

    if (c_train_args->parsed()) {
      ModelConfig cfg = ta_cfg.resolve();
      Corpus corpus = read_conll_file(ta_train);
      EmbeddingTable table;
      if (!ta_emb.empty()) table = load_embeddings_file(ta_emb, cfg.d_w);
      StemLexicon lexicon;
      if (!ta_lexicon.empty()) lexicon = load_lexicon_file(ta_lexicon);
      else if (cfg.lemma_mode != LemmaMode::kChar)
        fail("lemma mode %s requires --lexicon", lemma_mode_name(cfg.lemma_mode).c_str());
      ArgumentModel model = train_argument_classifier(
          corpus, cfg, ta_emb.empty() ? nullptr : &table,
          cfg.lemma_mode == LemmaMode::kChar ? nullptr : &lexicon, &std::cerr);
      model.save(ta_out);
      std::vector<std::string> inputs{ta_train};
      if (!ta_emb.empty()) inputs.push_back(ta_emb);
      if (!ta_lexicon.empty()) inputs.push_back(ta_lexicon);
      emit_provenance("train-args", config_settings_json(cfg), cfg.seed, inputs, ta_prov);
      return 0;
    }

    if (c_train_senses->parsed()) {
      ModelConfig cfg = ts_cfg.resolve();
      Corpus corpus = read_conll_file(ts_train);
      EmbeddingTable table;
      if (!ts_emb.empty()) table = load_embeddings_file(ts_emb, cfg.d_w);
      SenseModel model = train_sense_classifier(
          corpus, cfg, ts_emb.empty() ? nullptr : &table, &std::cerr);
      model.save(ts_out);
      std::vector<std::string> inputs{ts_train};
      if (!ts_emb.empty()) inputs.push_back(ts_emb);
      emit_provenance("train-senses", config_settings_json(cfg), cfg.seed, inputs,
                      ts_prov);
      return 0;
    }

    if (c_train_predid->parsed()) {
      ModelConfig cfg = tp_cfg.resolve();
      Corpus corpus = read_conll_file(tp_train);
      EmbeddingTable table;
      if (!tp_emb.empty()) table = load_embeddings_file(tp_emb, cfg.d_w);
      PredicateIdModel model = train_predicate_identifier(
          corpus, cfg, tp_emb.empty() ? nullptr : &table, &std::cerr);
      model.save(tp_out);
      std::vector<std::string> inputs{tp_train};
      if (!tp_emb.empty()) inputs.push_back(tp_emb);
      emit_provenance("train-predid", config_settings_json(cfg), cfg.seed, inputs,
                      tp_prov);
      return 0;
    }

    if (c_tag->parsed()) {
      ArgumentModel model = ArgumentModel::load(g_model);
      SenseModel sense_model;
      bool with_senses = !g_senses.empty();
      if (with_senses) sense_model = SenseModel::load(g_senses);
      Corpus input = read_conll_file(g_in);
      Corpus tagged = tag_corpus(model, input, with_senses ? &sense_model : nullptr,
                                 g_threads);
      write_conll_file(tagged, g_out);
      std::vector<std::string> inputs{g_in, g_model};
      if (with_senses) inputs.push_back(g_senses);
      emit_provenance("tag", json{{"out", g_out}, {"threads", g_threads}}, 0, inputs,
                      g_prov);
      return 0;
    }

    if (c_score->parsed()) {
      Corpus gold = read_conll_file(e_gold);
      Corpus pred = read_conll_file(e_pred);
      Report report{score(gold, pred, SenseMode::kGold),
                    score(gold, pred, SenseMode::kAuto)};
      std::string line = report_line(report);
      std::string js = report_json(report);
      std::cout << line << "\n" << js << "\n";
      if (!e_json.empty()) write_file(e_json, js + "\n");
      emit_provenance("score", json::object(), 0, {e_gold, e_pred}, e_prov);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable with require_subcommand(1)
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.push_back("srl");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace srlp::cli
