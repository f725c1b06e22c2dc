#include "srlp/model.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "srlp/digest.hpp"
#include "srlp/error.hpp"
#include "srlp/text.hpp"

namespace srlp {

using nlohmann::json;

// --- config ---------------------------------------------------------------------

std::string lemma_mode_name(LemmaMode mode) {
  switch (mode) {
    case LemmaMode::kChar: return "char";
    case LemmaMode::kUStem: return "ustem";
    case LemmaMode::kSLem: return "slem";
  }
  fail("bad lemma mode");
}

LemmaMode lemma_mode_from_name(const std::string& name) {
  if (name == "char") return LemmaMode::kChar;
  if (name == "ustem") return LemmaMode::kUStem;
  if (name == "slem") return LemmaMode::kSLem;
  fail("unknown lemma mode \"%s\" (expected char, ustem or slem)", name.c_str());
}

ModelConfig ModelConfig::desk() { return ModelConfig{}; }

ModelConfig ModelConfig::paper() {
  ModelConfig cfg;
  cfg.d_w = 100;
  cfg.d_c = 50;
  cfg.d_ch = 100;
  cfg.d_le = 100;
  cfg.d_lem_dec = 100;
  cfg.d_r = 128;
  cfg.d_h = 512;
  cfg.d_pos = 32;
  cfg.char_depth = 1;
  cfg.enc_depth = 3;
  cfg.lemma_depth = 3;
  cfg.sense_depth = 3;
  cfg.lr = 0.001;
  cfg.minibatch = 1000;
  cfg.epochs = 2;
  cfg.min_count = 2;
  return cfg;
}

void ModelConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v < 1) fail("config: %s must be >= 1, got %d", name, v);
  };
  positive(d_w, "d_w");
  positive(d_c, "d_c");
  positive(d_ch, "d_ch");
  positive(d_le, "d_le");
  positive(d_lem_dec, "d_lem_dec");
  positive(d_r, "d_r");
  positive(d_h, "d_h");
  positive(d_pos, "d_pos");
  positive(char_depth, "char_depth");
  positive(enc_depth, "enc_depth");
  positive(lemma_depth, "lemma_depth");
  positive(sense_depth, "sense_depth");
  positive(minibatch, "minibatch");
  if (d_ch % 2) fail("config: d_ch must be even (bidirectional concat), got %d", d_ch);
  if (lemma_mode == LemmaMode::kChar && (d_le % 2 || d_lem_dec % 2))
    fail("config: d_le and d_lem_dec must be even in char lemma mode");
  if (epochs < 0) fail("config: epochs must be >= 0");
  if (!(lr > 0)) fail("config: lr must be positive");
  if (null_subsample < 0 || null_subsample > 1)
    fail("config: null_subsample must be in [0, 1]");
  if (min_count < 1) fail("config: min_count must be >= 1");
}

// --- shared channels --------------------------------------------------------------

namespace {

constexpr const char* kWordEmb = "emb.word";
constexpr const char* kCharEmb = "emb.char";
constexpr const char* kPretrained = "pretrained.emb";
constexpr const char* kStemEmb = "emb.stem";
constexpr const char* kDecStemEmb = "emb.dec_stem";

Tensor glorot_vec(std::size_t n, Rng& rng) {
  Tensor t = glorot_uniform(1, n, rng);
  t.shape = {n};
  return t;
}

}  // namespace

InputChannels::InputChannels(ModelConfig cfg, Vocab words, Vocab chars,
                             std::vector<std::string> pretrained_words)
    : cfg_(std::move(cfg)),
      words_(std::move(words)),
      chars_(std::move(chars)),
      pretrained_words_(std::move(pretrained_words)) {
  for (std::size_t i = 0; i < pretrained_words_.size(); ++i)
    pretrained_index_.emplace(pretrained_words_[i], i);
}

LSTMStackSpec InputChannels::char_stack() const {
  return LSTMStackSpec{"charlstm", static_cast<std::size_t>(cfg_.char_depth),
                       static_cast<std::size_t>(cfg_.d_c),
                       static_cast<std::size_t>(cfg_.d_ch) / 2};
}

void InputChannels::init_params(ParamStore& store, const EmbeddingTable* pretrained,
                                Rng& rng) const {
  store.create(kWordEmb,
               uniform_tensor({static_cast<std::size_t>(words_.size()),
                               static_cast<std::size_t>(cfg_.d_w)},
                              -0.01, 0.01, rng));
  store.create(kCharEmb,
               uniform_tensor({static_cast<std::size_t>(chars_.size()),
                               static_cast<std::size_t>(cfg_.d_c)},
                              -0.01, 0.01, rng));
  Tensor pre = Tensor::zeros(
      {pretrained_words_.size(), static_cast<std::size_t>(cfg_.d_w)});
  for (std::size_t i = 0; i < pretrained_words_.size(); ++i) {
    const auto& vec = pretrained->entries.at(pretrained_words_[i]);
    for (int d = 0; d < cfg_.d_w; ++d)
      pre.at(i, static_cast<std::size_t>(d)) = static_cast<real_t>(vec[static_cast<size_t>(d)]);
  }
  store.create(kPretrained, std::move(pre), /*trainable=*/false);
  init_lstm_stack(store, char_stack(), rng);
}

VarId InputChannels::word_vec(Tape& tape, Binder& bind, const std::string& form) const {
  int id = words_.id(form);
  return tape.row(bind(kWordEmb), static_cast<std::size_t>(id));
}

VarId InputChannels::pretrained_vec(Tape& tape, Binder& bind,
                                    const std::string& form) const {
  auto it = pretrained_index_.find(lowercase_ascii(form));
  if (it == pretrained_index_.end())
    return tape.zeros({static_cast<std::size_t>(cfg_.d_w)});
  return tape.row(bind(kPretrained), it->second);
}

VarId InputChannels::char_bilstm_rep(Tape& tape, Binder& bind,
                                     const LSTMStackSpec& stack,
                                     const std::string& form) const {
  if (form.empty()) fail("char representation: empty form");
  std::vector<VarId> inputs;
  for (const std::string& ch : utf8_chars(form))
    inputs.push_back(tape.row(bind(kCharEmb), static_cast<std::size_t>(chars_.id(ch))));
  std::vector<VarId> states = bilstm_encode(tape, bind, stack, inputs);
  std::size_t h = stack.hidden_dim;
  VarId fwd_last = tape.slice(states.back(), 0, h);
  VarId bwd_first = tape.slice(states.front(), h, h);
  return tape.concat2(fwd_last, bwd_first);
}

VarId InputChannels::char_rep(Tape& tape, Binder& bind, const std::string& form) const {
  return char_bilstm_rep(tape, bind, char_stack(), form);
}

// --- sidecar serialization ---------------------------------------------------------

namespace {

json config_to_json(const ModelConfig& c) {
  return json{{"d_w", c.d_w},
              {"d_c", c.d_c},
              {"d_ch", c.d_ch},
              {"d_le", c.d_le},
              {"d_lem_dec", c.d_lem_dec},
              {"d_r", c.d_r},
              {"d_h", c.d_h},
              {"d_pos", c.d_pos},
              {"char_depth", c.char_depth},
              {"enc_depth", c.enc_depth},
              {"lemma_depth", c.lemma_depth},
              {"sense_depth", c.sense_depth},
              {"lemma_mode", lemma_mode_name(c.lemma_mode)},
              {"lr", c.lr},
              {"minibatch", c.minibatch},
              {"epochs", c.epochs},
              {"min_count", c.min_count},
              {"null_subsample", c.null_subsample},
              {"seed", c.seed}};
}

ModelConfig config_from_json(const json& j) {
  ModelConfig c;
  c.d_w = j.at("d_w").get<int>();
  c.d_c = j.at("d_c").get<int>();
  c.d_ch = j.at("d_ch").get<int>();
  c.d_le = j.at("d_le").get<int>();
  c.d_lem_dec = j.at("d_lem_dec").get<int>();
  c.d_r = j.at("d_r").get<int>();
  c.d_h = j.at("d_h").get<int>();
  c.d_pos = j.at("d_pos").get<int>();
  c.char_depth = j.at("char_depth").get<int>();
  c.enc_depth = j.at("enc_depth").get<int>();
  c.lemma_depth = j.at("lemma_depth").get<int>();
  c.sense_depth = j.at("sense_depth").get<int>();
  c.lemma_mode = lemma_mode_from_name(j.at("lemma_mode").get<std::string>());
  c.lr = j.at("lr").get<double>();
  c.minibatch = j.at("minibatch").get<int>();
  c.epochs = j.at("epochs").get<int>();
  c.min_count = j.at("min_count").get<int>();
  c.null_subsample = j.at("null_subsample").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

json vocab_to_json(const Vocab& v) {
  return json{{"items", v.items()}, {"unk_id", v.unk_id()}};
}

Vocab vocab_from_json(const json& j) {
  return Vocab::from_items(j.at("items").get<std::vector<std::string>>(),
                           j.at("unk_id").get<int>());
}

json lexicon_to_json(const StemLexicon& lex) {
  return json::parse(serialize_lexicon(lex));
}

StemLexicon lexicon_from_json(const json& j) { return parse_lexicon(j.dump()); }

void save_model_files(const ParamStore& store, const std::string& path,
                      const json& sidecar) {
  std::string text = sidecar.dump();
  write_file(path + ".json", text);
  save_checkpoint(store, path, fnv1a64(text));
}

// Loads checkpoint + sidecar and verifies the pairing hash and model kind.
std::pair<ParamStore, json> load_model_files(const std::string& path,
                                             const std::string& kind) {
  std::string text = read_file(path + ".json");
  std::uint64_t stored = 0;
  ParamStore store = load_checkpoint(path, &stored);
  if (stored != fnv1a64(text))
    fail("checkpoint %s does not match its sidecar %s.json", path.c_str(), path.c_str());
  json j = json::parse(text);
  if (j.at("format").get<std::string>() != "srlp-model")
    fail("%s.json: not a model sidecar", path.c_str());
  if (j.at("kind").get<std::string>() != kind)
    fail("%s: expected a %s model, found %s", path.c_str(), kind.c_str(),
         j.at("kind").get<std::string>().c_str());
  return {std::move(store), std::move(j)};
}

std::vector<std::string> sorted_pretrained_words(const EmbeddingTable* pretrained) {
  std::vector<std::string> words;
  if (pretrained) {
    for (const auto& [w, v] : pretrained->entries) words.push_back(w);
    std::sort(words.begin(), words.end());
  }
  return words;
}

int argmax_lowest(const std::vector<real_t>& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i)
    if (v[static_cast<size_t>(i)] > v[static_cast<size_t>(best)]) best = i;
  return best;
}

}  // namespace

// --- argument classifier -------------------------------------------------------------

namespace {

constexpr const char* kDecU = "dec.U";
constexpr const char* kRoleEmb = "dec.role_emb";

LSTMStackSpec enc_stack(const ModelConfig& cfg) {
  return LSTMStackSpec{"enc", static_cast<std::size_t>(cfg.enc_depth),
                       static_cast<std::size_t>(cfg.arg_input_dim()),
                       static_cast<std::size_t>(cfg.d_h)};
}

LSTMStackSpec lem_stack(const ModelConfig& cfg) {
  return LSTMStackSpec{"lemclstm", static_cast<std::size_t>(cfg.lemma_depth),
                       static_cast<std::size_t>(cfg.d_c),
                       static_cast<std::size_t>(cfg.d_le) / 2};
}

LSTMStackSpec declem_stack(const ModelConfig& cfg) {
  return LSTMStackSpec{"declemlstm", static_cast<std::size_t>(cfg.lemma_depth),
                       static_cast<std::size_t>(cfg.d_c),
                       static_cast<std::size_t>(cfg.d_lem_dec) / 2};
}

}  // namespace

ArgumentModel ArgumentModel::init(const ModelConfig& cfg, const Corpus& corpus,
                                  const EmbeddingTable* pretrained,
                                  const StemLexicon* lexicon) {
  cfg.validate();
  if (pretrained && pretrained->dim != cfg.d_w)
    fail("pretrained embedding dim %d does not match d_w %d", pretrained->dim, cfg.d_w);

  ArgumentModel model;
  model.cfg_ = cfg;
  VocabSet vocabs = build_vocab(corpus, cfg.min_count);
  model.roles_ = std::move(vocabs.roles);
  model.channels_ = InputChannels(cfg, std::move(vocabs.words), std::move(vocabs.chars),
                                  sorted_pretrained_words(pretrained));

  if (cfg.lemma_mode != LemmaMode::kChar) {
    if (!lexicon)
      fail("lemma mode %s requires a stem lexicon", lemma_mode_name(cfg.lemma_mode).c_str());
    model.lexicon_ = *lexicon;
    std::map<std::string, long> stem_counts;
    for (const auto& sent : corpus.sentences)
      for (const auto& tok : sent.tokens) ++stem_counts[stem(model.lexicon_, tok.form)];
    model.stems_ = Vocab::with_unk_pad();
    std::vector<std::pair<long, std::string>> ordered;
    for (const auto& [s, c] : stem_counts) ordered.emplace_back(-c, s);
    std::sort(ordered.begin(), ordered.end());
    for (const auto& [c, s] : ordered) model.stems_.add(s);
  }

  Rng rng(cfg.seed);
  model.channels_.init_params(model.store_, pretrained, rng);
  if (cfg.lemma_mode == LemmaMode::kChar) {
    init_lstm_stack(model.store_, lem_stack(cfg), rng);
    init_lstm_stack(model.store_, declem_stack(cfg), rng);
  } else {
    model.store_.create(kStemEmb,
                        uniform_tensor({static_cast<std::size_t>(model.stems_.size()),
                                        static_cast<std::size_t>(cfg.d_le)},
                                       -0.01, 0.01, rng));
    model.store_.create(kDecStemEmb,
                        uniform_tensor({static_cast<std::size_t>(model.stems_.size()),
                                        static_cast<std::size_t>(cfg.d_lem_dec)},
                                       -0.01, 0.01, rng));
  }
  init_lstm_stack(model.store_, enc_stack(cfg), rng);
  model.store_.create(kDecU,
                      glorot_uniform(4 * static_cast<std::size_t>(cfg.d_h),
                                     static_cast<std::size_t>(cfg.d_lem_dec + cfg.d_r),
                                     rng));
  model.store_.create(kRoleEmb,
                      uniform_tensor({static_cast<std::size_t>(model.roles_.size()),
                                      static_cast<std::size_t>(cfg.d_r)},
                                     -0.01, 0.01, rng));
  return model;
}

VarId ArgumentModel::input_lemma_block(Tape& tape, Binder& bind,
                                       const std::string& pred_form) const {
  VarId lemma_vec;
  if (cfg_.lemma_mode == LemmaMode::kChar) {
    lemma_vec = channels_.char_bilstm_rep(tape, bind, lem_stack(cfg_), pred_form);
  } else {
    int id = stems_.id(stem(lexicon_, pred_form));
    lemma_vec = tape.row(bind(kStemEmb), static_cast<std::size_t>(id));
  }
  VarId flag = tape.constant_vec({1.0});
  return tape.concat2(lemma_vec, flag);
}

std::vector<VarId> ArgumentModel::input_rows(Tape& tape, Binder& bind,
                                             const Sentence& sent, int pred_pos,
                                             bool zero_lemma_channel) const {
  if (pred_pos < 1 || pred_pos > sent.size())
    fail("invalid predicate index %d for a %d-token sentence", pred_pos, sent.size());
  std::vector<VarId> rows;
  rows.reserve(static_cast<size_t>(sent.size()));
  const std::string& pred_form = sent.tokens[static_cast<size_t>(pred_pos - 1)].form;
  for (int i = 1; i <= sent.size(); ++i) {
    const std::string& form = sent.tokens[static_cast<size_t>(i - 1)].form;
    std::array<VarId, 3> parts{channels_.word_vec(tape, bind, form),
                               channels_.pretrained_vec(tape, bind, form),
                               channels_.char_rep(tape, bind, form)};
    VarId base = tape.concat(parts);
    VarId lemma_block =
        (i == pred_pos && !zero_lemma_channel)
            ? input_lemma_block(tape, bind, pred_form)
            : tape.zeros({static_cast<std::size_t>(cfg_.d_le) + 1});
    rows.push_back(tape.concat2(base, lemma_block));
  }
  return rows;
}

std::vector<VarId> ArgumentModel::encode(Tape& tape, Binder& bind, const Sentence& sent,
                                         int pred_pos, bool zero_lemma_channel) const {
  std::vector<VarId> rows = input_rows(tape, bind, sent, pred_pos, zero_lemma_channel);
  return bilstm_encode(tape, bind, enc_stack(cfg_), rows);
}

VarId ArgumentModel::decoder_lemma(Tape& tape, Binder& bind,
                                   const std::string& pred_form) const {
  if (cfg_.lemma_mode == LemmaMode::kChar)
    return channels_.char_bilstm_rep(tape, bind, declem_stack(cfg_), pred_form);
  int id = stems_.id(stem(lexicon_, pred_form));
  return tape.row(bind(kDecStemEmb), static_cast<std::size_t>(id));
}

std::vector<VarId> ArgumentModel::role_weights(Tape& tape, Binder& bind,
                                               VarId u_l) const {
  VarId U = bind(kDecU);
  VarId role_matrix = bind(kRoleEmb);
  std::vector<VarId> weights;
  weights.reserve(static_cast<size_t>(roles_.size()));
  for (int r = 0; r < roles_.size(); ++r) {
    VarId v_r = tape.row(role_matrix, static_cast<std::size_t>(r));
    weights.push_back(tape.relu(tape.matvec(U, tape.concat2(u_l, v_r))));
  }
  return weights;
}

VarId ArgumentModel::token_logits(Tape& tape, const std::vector<VarId>& role_w,
                                  VarId h_pred, VarId h_arg) const {
  VarId pair = tape.concat2(h_pred, h_arg);
  std::vector<VarId> scores;
  scores.reserve(role_w.size());
  for (VarId w : role_w) scores.push_back(tape.dot(w, pair));
  return tape.concat(scores);
}

std::vector<real_t> ArgumentModel::role_probs(const Sentence& sent, int pred_pos,
                                              int token_pos) const {
  if (token_pos < 1 || token_pos > sent.size())
    fail("invalid token index %d", token_pos);
  Tape tape;
  Binder bind(tape, store_);
  std::vector<VarId> states = encode(tape, bind, sent, pred_pos);
  VarId u = decoder_lemma(tape, bind, sent.tokens[static_cast<size_t>(pred_pos - 1)].form);
  std::vector<VarId> ws = role_weights(tape, bind, u);
  VarId logits = token_logits(tape, ws, states[static_cast<size_t>(pred_pos - 1)],
                              states[static_cast<size_t>(token_pos - 1)]);
  return softmax_xent_value(tape.value(logits).data, 0).probs;
}

VarId ArgumentModel::sentence_loss(Tape& tape, Binder& bind, const Sentence& sent) const {
  VarId total = tape.zeros({1});
  for (const auto& frame : sent.frames) {
    std::vector<VarId> states = encode(tape, bind, sent, frame.position);
    VarId u = decoder_lemma(tape, bind,
                            sent.tokens[static_cast<size_t>(frame.position - 1)].form);
    std::vector<VarId> ws = role_weights(tape, bind, u);
    VarId h_pred = states[static_cast<size_t>(frame.position - 1)];
    for (int t = 1; t <= sent.size(); ++t) {
      if (!sent.labeled(t)) continue;
      const SemanticDependency* dep = frame.arg_at(t);
      int gold = dep ? roles_.id(dep->role) : 0;
      if (gold < 0) fail("unknown role \"%s\"", dep->role.c_str());
      VarId logits = token_logits(tape, ws, h_pred, states[static_cast<size_t>(t - 1)]);
      total = tape.add(total, tape.softmax_xent(logits, gold));
    }
  }
  return total;
}

std::vector<PredicateFrame> ArgumentModel::tag_sentence(
    const Sentence& sent, const std::vector<PredicateFrame>& predicates) const {
  std::vector<PredicateFrame> out;
  for (const auto& pred : predicates) {
    Tape tape;
    Binder bind(tape, store_);
    std::vector<VarId> states = encode(tape, bind, sent, pred.position);
    VarId u = decoder_lemma(tape, bind,
                            sent.tokens[static_cast<size_t>(pred.position - 1)].form);
    std::vector<VarId> ws = role_weights(tape, bind, u);
    VarId h_pred = states[static_cast<size_t>(pred.position - 1)];
    PredicateFrame frame{pred.position, pred.sense, {}};
    for (int t = 1; t <= sent.size(); ++t) {
      VarId logits = token_logits(tape, ws, h_pred, states[static_cast<size_t>(t - 1)]);
      int best = argmax_lowest(tape.value(logits).data);
      if (best != 0) frame.args.push_back(SemanticDependency{t, roles_.item(best)});
    }
    out.push_back(std::move(frame));
  }
  return out;
}

void ArgumentModel::save(const std::string& path) const {
  json sidecar{{"format", "srlp-model"},
               {"version", 1},
               {"kind", "args"},
               {"config", config_to_json(cfg_)},
               {"vocab",
                {{"words", vocab_to_json(channels_.words())},
                 {"chars", vocab_to_json(channels_.chars())},
                 {"roles", vocab_to_json(roles_)},
                 {"stems", vocab_to_json(stems_)}}},
               {"pretrained_words", channels_.pretrained_words()},
               {"lexicon", lexicon_to_json(lexicon_)}};
  save_model_files(store_, path, sidecar);
}

ArgumentModel ArgumentModel::load(const std::string& path) {
  auto [store, j] = load_model_files(path, "args");
  ArgumentModel model;
  model.cfg_ = config_from_json(j.at("config"));
  model.roles_ = vocab_from_json(j.at("vocab").at("roles"));
  model.stems_ = vocab_from_json(j.at("vocab").at("stems"));
  model.lexicon_ = lexicon_from_json(j.at("lexicon"));
  model.channels_ = InputChannels(
      model.cfg_, vocab_from_json(j.at("vocab").at("words")),
      vocab_from_json(j.at("vocab").at("chars")),
      j.at("pretrained_words").get<std::vector<std::string>>());
  model.store_ = std::move(store);
  return model;
}

// --- minibatch trainer -----------------------------------------------------------

namespace {

// Instances are shuffled per epoch, cut into minibatch-sized chunks, and each
// chunk is grouped by its encoder unit so the pass is shared. One Adam step
// per chunk, summed loss.
template <typename Inst, typename GroupLoss>
double epoch_pass(ParamStore& store, std::vector<Inst>& instances, Rng& rng,
                  int minibatch, double lr, const GroupLoss& group_loss) {
  rng.shuffle(instances);
  double epoch_loss = 0;
  for (std::size_t start = 0; start < instances.size();
       start += static_cast<std::size_t>(minibatch)) {
    std::size_t end = std::min(instances.size(), start + static_cast<std::size_t>(minibatch));
    std::vector<Inst> chunk(instances.begin() + static_cast<long>(start),
                            instances.begin() + static_cast<long>(end));
    std::sort(chunk.begin(), chunk.end());
    GradientMap grads;
    std::size_t i = 0;
    while (i < chunk.size()) {
      std::size_t j = i;
      while (j < chunk.size() && chunk[j].group() == chunk[i].group()) ++j;
      Tape tape;
      Binder bind(tape, store);
      VarId loss = group_loss(tape, bind, std::span<const Inst>(&chunk[i], j - i));
      tape.backward(loss);
      bind.accumulate_grads(grads);
      epoch_loss += static_cast<double>(tape.value(loss).data[0]);
      i = j;
    }
    adam_step(store, grads, lr);
  }
  return epoch_loss;
}

struct ArgInstance {
  int sent;
  int frame;
  int token;
  int role;
  std::pair<int, int> group() const { return {sent, frame}; }
  bool operator<(const ArgInstance& o) const {
    return std::tie(sent, frame, token) < std::tie(o.sent, o.frame, o.token);
  }
};

struct PosInstance {  // sense and predicate-id training share this shape
  int sent;
  int token;
  int label;
  int group() const { return sent; }
  bool operator<(const PosInstance& o) const {
    return std::tie(sent, token) < std::tie(o.sent, o.token);
  }
};

void log_epoch(std::ostream* log, int epoch, double loss, std::size_t n) {
  if (log)
    *log << "epoch " << epoch << " loss " << detail::strf("%.6f", loss) << " over "
         << n << " instances\n";
}

}  // namespace

ArgumentModel train_argument_classifier(const Corpus& corpus, const ModelConfig& cfg,
                                        const EmbeddingTable* pretrained,
                                        const StemLexicon* lexicon, std::ostream* log) {
  long n_frames = 0;
  for (const auto& s : corpus.sentences) n_frames += static_cast<long>(s.frames.size());
  if (n_frames == 0) fail("no training signal: corpus has no predicate frames");

  ArgumentModel model = ArgumentModel::init(cfg, corpus, pretrained, lexicon);
  Rng rng(cfg.seed);

  std::vector<ArgInstance> instances;
  for (int si = 0; si < static_cast<int>(corpus.sentences.size()); ++si) {
    const Sentence& sent = corpus.sentences[static_cast<size_t>(si)];
    for (int fi = 0; fi < static_cast<int>(sent.frames.size()); ++fi) {
      const PredicateFrame& frame = sent.frames[static_cast<size_t>(fi)];
      for (int t = 1; t <= sent.size(); ++t) {
        if (!sent.labeled(t)) continue;
        const SemanticDependency* dep = frame.arg_at(t);
        int role = dep ? model.roles().id(dep->role) : 0;
        if (role == 0 && cfg.null_subsample < 1.0 &&
            rng.next_double() >= cfg.null_subsample)
          continue;
        instances.push_back(ArgInstance{si, fi, t, role});
      }
    }
  }

  auto group_loss = [&](Tape& tape, Binder& bind, std::span<const ArgInstance> group) {
    const Sentence& sent = corpus.sentences[static_cast<size_t>(group[0].sent)];
    const PredicateFrame& frame = sent.frames[static_cast<size_t>(group[0].frame)];
    std::vector<VarId> states = model.encode(tape, bind, sent, frame.position);
    VarId u = model.decoder_lemma(
        tape, bind, sent.tokens[static_cast<size_t>(frame.position - 1)].form);
    std::vector<VarId> ws = model.role_weights(tape, bind, u);
    VarId h_pred = states[static_cast<size_t>(frame.position - 1)];
    VarId total = tape.zeros({1});
    for (const ArgInstance& inst : group) {
      VarId logits = model.token_logits(tape, ws, h_pred,
                                        states[static_cast<size_t>(inst.token - 1)]);
      total = tape.add(total, tape.softmax_xent(logits, inst.role));
    }
    return total;
  };

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    double loss = epoch_pass(model.params(), instances, rng, cfg.minibatch, cfg.lr,
                             group_loss);
    log_epoch(log, epoch, loss, instances.size());
  }
  return model;
}

// --- sense model -------------------------------------------------------------------

namespace {

constexpr const char* kSenseW = "sense.W";
constexpr const char* kSenseB = "sense.b";

LSTMStackSpec sense_stack(const ModelConfig& cfg) {
  return LSTMStackSpec{"senc", static_cast<std::size_t>(cfg.sense_depth),
                       static_cast<std::size_t>(2 * cfg.d_w + cfg.d_ch),
                       static_cast<std::size_t>(cfg.d_h)};
}

}  // namespace

SenseModel SenseModel::init(const ModelConfig& cfg, const Corpus& corpus,
                            const EmbeddingTable* pretrained) {
  cfg.validate();
  if (pretrained && pretrained->dim != cfg.d_w)
    fail("pretrained embedding dim %d does not match d_w %d", pretrained->dim, cfg.d_w);
  SenseModel model;
  model.cfg_ = cfg;
  VocabSet vocabs = build_vocab(corpus, cfg.min_count);
  model.senses_ = std::move(vocabs.senses);
  if (model.senses_.size() == 0) fail("sense vocab is empty");
  model.channels_ = InputChannels(cfg, std::move(vocabs.words), std::move(vocabs.chars),
                                  sorted_pretrained_words(pretrained));
  Rng rng(cfg.seed);
  model.channels_.init_params(model.store_, pretrained, rng);
  init_lstm_stack(model.store_, sense_stack(cfg), rng);
  model.store_.create(kSenseW,
                      glorot_uniform(static_cast<std::size_t>(model.senses_.size()),
                                     2 * static_cast<std::size_t>(cfg.d_h), rng));
  model.store_.create(kSenseB,
                      Tensor::zeros({static_cast<std::size_t>(model.senses_.size())}));
  return model;
}

std::vector<VarId> SenseModel::encode(Tape& tape, Binder& bind,
                                      const Sentence& sent) const {
  if (sent.size() == 0) fail("cannot encode an empty sentence");
  std::vector<VarId> rows;
  for (const auto& tok : sent.tokens) {
    std::array<VarId, 3> parts{channels_.word_vec(tape, bind, tok.form),
                               channels_.pretrained_vec(tape, bind, tok.form),
                               channels_.char_rep(tape, bind, tok.form)};
    rows.push_back(tape.concat(parts));
  }
  return bilstm_encode(tape, bind, sense_stack(cfg_), rows);
}

VarId SenseModel::position_logits(Tape& tape, Binder& bind, VarId state) const {
  return tape.add(tape.matvec(bind(kSenseW), state), bind(kSenseB));
}

VarId SenseModel::sentence_loss(Tape& tape, Binder& bind, const Sentence& sent) const {
  std::vector<VarId> states = encode(tape, bind, sent);
  VarId total = tape.zeros({1});
  for (const auto& frame : sent.frames) {
    int gold = senses_.id(frame.sense);
    if (gold < 0) fail("unknown sense \"%s\"", frame.sense.c_str());
    VarId logits =
        position_logits(tape, bind, states[static_cast<size_t>(frame.position - 1)]);
    total = tape.add(total, tape.softmax_xent(logits, gold));
  }
  return total;
}

std::vector<std::string> SenseModel::disambiguate(const Sentence& sent,
                                                  const std::vector<int>& positions) const {
  if (senses_.size() == 0) fail("sense vocab is empty");
  Tape tape;
  Binder bind(tape, store_);
  std::vector<VarId> states = encode(tape, bind, sent);
  std::vector<std::string> out;
  for (int pos : positions) {
    if (pos < 1 || pos > sent.size()) fail("invalid predicate index %d", pos);
    VarId logits = position_logits(tape, bind, states[static_cast<size_t>(pos - 1)]);
    out.push_back(senses_.item(argmax_lowest(tape.value(logits).data)));
  }
  return out;
}

void SenseModel::save(const std::string& path) const {
  json sidecar{{"format", "srlp-model"},
               {"version", 1},
               {"kind", "senses"},
               {"config", config_to_json(cfg_)},
               {"vocab",
                {{"words", vocab_to_json(channels_.words())},
                 {"chars", vocab_to_json(channels_.chars())},
                 {"senses", vocab_to_json(senses_)}}},
               {"pretrained_words", channels_.pretrained_words()}};
  save_model_files(store_, path, sidecar);
}

SenseModel SenseModel::load(const std::string& path) {
  auto [store, j] = load_model_files(path, "senses");
  SenseModel model;
  model.cfg_ = config_from_json(j.at("config"));
  model.senses_ = vocab_from_json(j.at("vocab").at("senses"));
  model.channels_ = InputChannels(
      model.cfg_, vocab_from_json(j.at("vocab").at("words")),
      vocab_from_json(j.at("vocab").at("chars")),
      j.at("pretrained_words").get<std::vector<std::string>>());
  model.store_ = std::move(store);
  return model;
}

SenseModel train_sense_classifier(const Corpus& corpus, const ModelConfig& cfg,
                                  const EmbeddingTable* pretrained, std::ostream* log) {
  long n_frames = 0;
  for (const auto& s : corpus.sentences) n_frames += static_cast<long>(s.frames.size());
  if (n_frames == 0) fail("no training signal: corpus has no predicate frames");

  SenseModel model = SenseModel::init(cfg, corpus, pretrained);
  Rng rng(cfg.seed);
  std::vector<PosInstance> instances;
  for (int si = 0; si < static_cast<int>(corpus.sentences.size()); ++si)
    for (const auto& frame : corpus.sentences[static_cast<size_t>(si)].frames)
      instances.push_back(PosInstance{si, frame.position, model.senses().id(frame.sense)});

  auto group_loss = [&](Tape& tape, Binder& bind, std::span<const PosInstance> group) {
    const Sentence& sent = corpus.sentences[static_cast<size_t>(group[0].sent)];
    std::vector<VarId> states = model.encode(tape, bind, sent);
    VarId total = tape.zeros({1});
    for (const PosInstance& inst : group) {
      VarId logits = model.position_logits(
          tape, bind, states[static_cast<size_t>(inst.token - 1)]);
      total = tape.add(total, tape.softmax_xent(logits, inst.label));
    }
    return total;
  };

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    double loss =
        epoch_pass(model.params(), instances, rng, cfg.minibatch, cfg.lr, group_loss);
    log_epoch(log, epoch, loss, instances.size());
  }
  return model;
}

// --- predicate identifier ------------------------------------------------------------

namespace {

constexpr const char* kPosEmb = "emb.pos";
constexpr const char* kPredW = "predid.w";
constexpr const char* kPredB = "predid.b";

LSTMStackSpec predid_stack(const ModelConfig& cfg) {
  return LSTMStackSpec{"penc", static_cast<std::size_t>(cfg.enc_depth),
                       static_cast<std::size_t>(2 * cfg.d_w + cfg.d_pos + cfg.d_ch),
                       static_cast<std::size_t>(cfg.d_h)};
}

}  // namespace

PredicateIdModel PredicateIdModel::init(const ModelConfig& cfg, const Corpus& corpus,
                                        const EmbeddingTable* pretrained) {
  cfg.validate();
  if (pretrained && pretrained->dim != cfg.d_w)
    fail("pretrained embedding dim %d does not match d_w %d", pretrained->dim, cfg.d_w);
  PredicateIdModel model;
  model.cfg_ = cfg;
  VocabSet vocabs = build_vocab(corpus, cfg.min_count);
  model.channels_ = InputChannels(cfg, std::move(vocabs.words), std::move(vocabs.chars),
                                  sorted_pretrained_words(pretrained));
  std::map<std::string, long> pos_counts;
  for (const auto& sent : corpus.sentences)
    for (const auto& tok : sent.tokens)
      if (!tok.pos.empty()) ++pos_counts[tok.pos];
  model.pos_tags_ = Vocab::with_unk_pad();
  std::vector<std::pair<long, std::string>> ordered;
  for (const auto& [p, c] : pos_counts) ordered.emplace_back(-c, p);
  std::sort(ordered.begin(), ordered.end());
  for (const auto& [c, p] : ordered) model.pos_tags_.add(p);

  Rng rng(cfg.seed);
  model.channels_.init_params(model.store_, pretrained, rng);
  model.store_.create(kPosEmb,
                      uniform_tensor({static_cast<std::size_t>(model.pos_tags_.size()),
                                      static_cast<std::size_t>(cfg.d_pos)},
                                     -0.01, 0.01, rng));
  init_lstm_stack(model.store_, predid_stack(cfg), rng);
  model.store_.create(kPredW, glorot_vec(2 * static_cast<std::size_t>(cfg.d_h), rng));
  model.store_.create(kPredB, Tensor::zeros({1}));
  return model;
}

std::vector<VarId> PredicateIdModel::encode(Tape& tape, Binder& bind,
                                            const Sentence& sent) const {
  if (sent.size() == 0) fail("cannot encode an empty sentence");
  std::vector<VarId> rows;
  for (const auto& tok : sent.tokens) {
    if (tok.pos.empty())
      fail("predicate identification requires a POS column (token %d has none)",
           tok.index);
    VarId pos_vec =
        tape.row(bind(kPosEmb), static_cast<std::size_t>(pos_tags_.id(tok.pos)));
    std::array<VarId, 4> parts{channels_.word_vec(tape, bind, tok.form),
                               channels_.pretrained_vec(tape, bind, tok.form), pos_vec,
                               channels_.char_rep(tape, bind, tok.form)};
    rows.push_back(tape.concat(parts));
  }
  return bilstm_encode(tape, bind, predid_stack(cfg_), rows);
}

VarId PredicateIdModel::token_logit(Tape& tape, Binder& bind, VarId state) const {
  return tape.add(tape.dot(bind(kPredW), state), bind(kPredB));
}

VarId PredicateIdModel::sentence_loss(Tape& tape, Binder& bind,
                                      const Sentence& sent) const {
  std::vector<VarId> states = encode(tape, bind, sent);
  VarId total = tape.zeros({1});
  for (int t = 1; t <= sent.size(); ++t) {
    int label = sent.frame_at(t) ? 1 : 0;
    VarId logit = token_logit(tape, bind, states[static_cast<size_t>(t - 1)]);
    total = tape.add(total, tape.logistic_xent(logit, label));
  }
  return total;
}

std::vector<double> PredicateIdModel::probabilities(const Sentence& sent) const {
  Tape tape;
  Binder bind(tape, store_);
  std::vector<VarId> states = encode(tape, bind, sent);
  std::vector<double> out;
  for (const VarId& s : states) {
    VarId logit = token_logit(tape, bind, s);
    out.push_back(1.0 / (1.0 + std::exp(-static_cast<double>(tape.value(logit).data[0]))));
  }
  return out;
}

std::set<int> PredicateIdModel::identify(const Sentence& sent) const {
  std::set<int> out;
  std::vector<double> probs = probabilities(sent);
  for (int t = 1; t <= sent.size(); ++t)
    if (probs[static_cast<size_t>(t - 1)] > 0.5) out.insert(t);
  return out;
}

void PredicateIdModel::save(const std::string& path) const {
  json sidecar{{"format", "srlp-model"},
               {"version", 1},
               {"kind", "predid"},
               {"config", config_to_json(cfg_)},
               {"vocab",
                {{"words", vocab_to_json(channels_.words())},
                 {"chars", vocab_to_json(channels_.chars())},
                 {"pos", vocab_to_json(pos_tags_)}}},
               {"pretrained_words", channels_.pretrained_words()}};
  save_model_files(store_, path, sidecar);
}

PredicateIdModel PredicateIdModel::load(const std::string& path) {
  auto [store, j] = load_model_files(path, "predid");
  PredicateIdModel model;
  model.cfg_ = config_from_json(j.at("config"));
  model.pos_tags_ = vocab_from_json(j.at("vocab").at("pos"));
  model.channels_ = InputChannels(
      model.cfg_, vocab_from_json(j.at("vocab").at("words")),
      vocab_from_json(j.at("vocab").at("chars")),
      j.at("pretrained_words").get<std::vector<std::string>>());
  model.store_ = std::move(store);
  return model;
}

PredicateIdModel train_predicate_identifier(const Corpus& corpus, const ModelConfig& cfg,
                                            const EmbeddingTable* pretrained,
                                            std::ostream* log) {
  PredicateIdModel model = PredicateIdModel::init(cfg, corpus, pretrained);
  Rng rng(cfg.seed);
  std::vector<PosInstance> instances;
  for (int si = 0; si < static_cast<int>(corpus.sentences.size()); ++si) {
    const Sentence& sent = corpus.sentences[static_cast<size_t>(si)];
    for (int t = 1; t <= sent.size(); ++t)
      instances.push_back(PosInstance{si, t, sent.frame_at(t) ? 1 : 0});
  }

  auto group_loss = [&](Tape& tape, Binder& bind, std::span<const PosInstance> group) {
    const Sentence& sent = corpus.sentences[static_cast<size_t>(group[0].sent)];
    std::vector<VarId> states = model.encode(tape, bind, sent);
    VarId total = tape.zeros({1});
    for (const PosInstance& inst : group) {
      VarId logit =
          model.token_logit(tape, bind, states[static_cast<size_t>(inst.token - 1)]);
      total = tape.add(total, tape.logistic_xent(logit, inst.label));
    }
    return total;
  };

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    double loss =
        epoch_pass(model.params(), instances, rng, cfg.minibatch, cfg.lr, group_loss);
    log_epoch(log, epoch, loss, instances.size());
  }
  return model;
}

// --- tagging ---------------------------------------------------------------------

int effective_threads(int requested, std::size_t work_items) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("SRL_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return std::max(1, std::min<int>(n, static_cast<int>(work_items ? work_items : 1)));
}

Corpus tag_corpus(const ArgumentModel& args, const Corpus& input,
                  const SenseModel* senses, int threads) {
  Corpus out;
  out.sentences.resize(input.sentences.size());
  int n_threads = effective_threads(threads, input.sentences.size());

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= input.sentences.size()) break;
      const Sentence& sent = input.sentences[i];
      std::vector<PredicateFrame> predicates;
      for (const auto& f : sent.frames)
        predicates.push_back(PredicateFrame{f.position, f.sense, {}});
      if (senses && !predicates.empty()) {
        std::vector<int> positions;
        for (const auto& p : predicates) positions.push_back(p.position);
        std::vector<std::string> predicted = senses->disambiguate(sent, positions);
        for (std::size_t k = 0; k < predicates.size(); ++k)
          predicates[k].sense = predicted[k];
      }
      Sentence tagged;
      tagged.tokens = sent.tokens;
      tagged.labeled_mask = sent.labeled_mask;
      tagged.frames = args.tag_sentence(sent, predicates);
      out.sentences[i] = std::move(tagged);
    }
  };

  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace srlp
