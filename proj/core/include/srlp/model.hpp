#ifndef SRLP_MODEL_HPP
#define SRLP_MODEL_HPP

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "srlp/checkpoint.hpp"
#include "srlp/corpus.hpp"
#include "srlp/lstm.hpp"
#include "srlp/morphology.hpp"
#include "srlp/optim.hpp"

namespace srlp {

// How the predicate lemma slots (input x^le and decoder u^l) are filled:
// dedicated character BiLSTMs, unsupervised stems, or supervised lemmas.
enum class LemmaMode { kChar, kUStem, kSLem };

std::string lemma_mode_name(LemmaMode mode);
LemmaMode lemma_mode_from_name(const std::string& name);

struct ModelConfig {
  int d_w = 16;        // word embedding dim (both the trainable and fixed channel)
  int d_c = 8;         // char embedding dim
  int d_ch = 16;       // char representation dim (= 2 x char hidden)
  int d_le = 8;        // input lemma dim
  int d_lem_dec = 8;   // decoder lemma dim
  int d_r = 8;         // role embedding dim
  int d_h = 32;        // encoder hidden size per direction
  int d_pos = 16;      // POS embedding dim (source-side predicate identifier)
  int char_depth = 1;
  int enc_depth = 2;
  int lemma_depth = 1;  // depth of the two lemma char BiLSTMs (char mode)
  int sense_depth = 3;
  LemmaMode lemma_mode = LemmaMode::kChar;
  double lr = 0.001;
  int minibatch = 1000;  // training instances per Adam step
  int epochs = 2;
  int min_count = 1;     // word-vocab frequency threshold
  double null_subsample = 1.0;
  std::uint64_t seed = 1;

  static ModelConfig desk();   // small dims; tests and toy data
  static ModelConfig paper();  // full-scale dimensions
  void validate() const;

  // Input row width of the argument-classifier encoder.
  int arg_input_dim() const { return 2 * d_w + d_ch + d_le + 1; }
};

// --- shared input channels ----------------------------------------------------

// x^re / x^pe / x^char builders common to the three networks. Parameter
// names: emb.word, emb.char, pretrained.emb (frozen), charlstm.*.
class InputChannels {
 public:
  InputChannels() = default;
  InputChannels(ModelConfig cfg, Vocab words, Vocab chars,
                std::vector<std::string> pretrained_words);

  // Registers embeddings, the frozen pretrained block and the token char
  // BiLSTM. Vectors for pretrained words come from `pretrained` (may be null
  // when the word list is empty).
  void init_params(ParamStore& store, const EmbeddingTable* pretrained, Rng& rng) const;

  VarId word_vec(Tape& tape, Binder& bind, const std::string& form) const;
  VarId pretrained_vec(Tape& tape, Binder& bind, const std::string& form) const;
  VarId char_rep(Tape& tape, Binder& bind, const std::string& form) const;

  // Endpoint representation of a char BiLSTM over the form: concatenation of
  // the last forward state and the first-character backward state.
  VarId char_bilstm_rep(Tape& tape, Binder& bind, const LSTMStackSpec& stack,
                        const std::string& form) const;

  LSTMStackSpec char_stack() const;
  const ModelConfig& config() const { return cfg_; }
  const Vocab& words() const { return words_; }
  const Vocab& chars() const { return chars_; }
  const std::vector<std::string>& pretrained_words() const { return pretrained_words_; }

 private:
  ModelConfig cfg_;
  Vocab words_;
  Vocab chars_;
  std::vector<std::string> pretrained_words_;           // sorted
  std::unordered_map<std::string, std::size_t> pretrained_index_;
};

// --- argument classifier --------------------------------------------------------

// Joint argument identification and classification: predicate-specific
// BiLSTM encoders over [x_re; x_pe; x_char; x_le; flag] rows, and a
// role+predicate-specific decoder scoring [h_pred; h_arg] against
// W_r = RELU(U [u_l; v_r]) for every role including NULL (id 0).
class ArgumentModel {
 public:
  ArgumentModel() = default;

  static ArgumentModel init(const ModelConfig& cfg, const Corpus& corpus,
                            const EmbeddingTable* pretrained,
                            const StemLexicon* lexicon);

  // One input row per token given the targeted predicate. Rows other than
  // pred_pos carry a zero lemma block with flag 0. The zero_lemma_channel
  // hook zeroes the block everywhere (predicate-specificity checks).
  std::vector<VarId> input_rows(Tape& tape, Binder& bind, const Sentence& sent,
                                int pred_pos, bool zero_lemma_channel = false) const;

  // Predicate-specific encoder pass: n states of size 2*d_h.
  std::vector<VarId> encode(Tape& tape, Binder& bind, const Sentence& sent,
                            int pred_pos, bool zero_lemma_channel = false) const;

  // Decoder-side lemma embedding u_l for the predicate form.
  VarId decoder_lemma(Tape& tape, Binder& bind, const std::string& pred_form) const;

  // W_r = RELU(U [u_l; v_r]) for every role, each of size 4*d_h.
  std::vector<VarId> role_weights(Tape& tape, Binder& bind, VarId u_l) const;

  // K logits for one (predicate, argument) state pair.
  VarId token_logits(Tape& tape, const std::vector<VarId>& role_w, VarId h_pred,
                     VarId h_arg) const;

  // Probability vector over roles (softmax of token_logits), by value.
  std::vector<real_t> role_probs(const Sentence& sent, int pred_pos, int token_pos) const;

  // Summed cross-entropy over all (frame, labeled token) instances of the
  // sentence. Used by training, the overfit tests, and gradient checks.
  VarId sentence_loss(Tape& tape, Binder& bind, const Sentence& sent) const;

  // Argmax decode for the given predicate positions/senses; NULL argmax emits
  // no dependency, ties break toward the lowest role id.
  std::vector<PredicateFrame> tag_sentence(
      const Sentence& sent, const std::vector<PredicateFrame>& predicates) const;

  void save(const std::string& path) const;
  static ArgumentModel load(const std::string& path);

  ParamStore& params() { return store_; }
  const ParamStore& params() const { return store_; }
  const ModelConfig& config() const { return cfg_; }
  const Vocab& roles() const { return roles_; }
  const Vocab& stems() const { return stems_; }
  const InputChannels& channels() const { return channels_; }
  const StemLexicon& lexicon() const { return lexicon_; }

 private:
  friend ArgumentModel train_argument_classifier(const Corpus&, const ModelConfig&,
                                                 const EmbeddingTable*,
                                                 const StemLexicon*, std::ostream*);
  VarId input_lemma_block(Tape& tape, Binder& bind, const std::string& pred_form) const;

  ModelConfig cfg_;
  InputChannels channels_;
  Vocab roles_;
  Vocab stems_;   // empty in char mode
  StemLexicon lexicon_;
  ParamStore store_;
};

// Trains on every (frame, token) pair whose token is labeled-mask true.
// Throws "no training signal" when the corpus has no frames.
ArgumentModel train_argument_classifier(const Corpus& corpus, const ModelConfig& cfg,
                                        const EmbeddingTable* pretrained = nullptr,
                                        const StemLexicon* lexicon = nullptr,
                                        std::ostream* log = nullptr);

// --- predicate sense disambiguation --------------------------------------------

// A single classifier for all predicates: deep BiLSTM over [x_re; x_pe;
// x_char], softmax over the global sense vocabulary at each predicate
// position.
class SenseModel {
 public:
  SenseModel() = default;

  static SenseModel init(const ModelConfig& cfg, const Corpus& corpus,
                         const EmbeddingTable* pretrained);

  std::vector<VarId> encode(Tape& tape, Binder& bind, const Sentence& sent) const;
  VarId position_logits(Tape& tape, Binder& bind, VarId state) const;
  VarId sentence_loss(Tape& tape, Binder& bind, const Sentence& sent) const;

  // One sense per requested position; total over arbitrary tokens.
  std::vector<std::string> disambiguate(const Sentence& sent,
                                        const std::vector<int>& positions) const;

  void save(const std::string& path) const;
  static SenseModel load(const std::string& path);

  ParamStore& params() { return store_; }
  const Vocab& senses() const { return senses_; }
  const InputChannels& channels() const { return channels_; }
  const ModelConfig& config() const { return cfg_; }

 private:
  ModelConfig cfg_;
  InputChannels channels_;
  Vocab senses_;
  ParamStore store_;
};

SenseModel train_sense_classifier(const Corpus& corpus, const ModelConfig& cfg,
                                  const EmbeddingTable* pretrained = nullptr,
                                  std::ostream* log = nullptr);

// --- source-side predicate identification ----------------------------------------

// Deep BiLSTM over [x_re; x_pe; x_pos; x_char] with a per-token affine and
// logistic output; a token is a predicate iff p > 0.5 strictly.
class PredicateIdModel {
 public:
  PredicateIdModel() = default;

  static PredicateIdModel init(const ModelConfig& cfg, const Corpus& corpus,
                               const EmbeddingTable* pretrained);

  std::vector<VarId> encode(Tape& tape, Binder& bind, const Sentence& sent) const;
  VarId token_logit(Tape& tape, Binder& bind, VarId state) const;
  VarId sentence_loss(Tape& tape, Binder& bind, const Sentence& sent) const;

  std::vector<double> probabilities(const Sentence& sent) const;
  std::set<int> identify(const Sentence& sent) const;

  void save(const std::string& path) const;
  static PredicateIdModel load(const std::string& path);

  ParamStore& params() { return store_; }
  const Vocab& pos_tags() const { return pos_tags_; }
  const InputChannels& channels() const { return channels_; }

 private:
  ModelConfig cfg_;
  InputChannels channels_;
  Vocab pos_tags_;
  ParamStore store_;
};

PredicateIdModel train_predicate_identifier(const Corpus& corpus, const ModelConfig& cfg,
                                            const EmbeddingTable* pretrained = nullptr,
                                            std::ostream* log = nullptr);

// --- tagging ---------------------------------------------------------------------

// Re-tags every sentence's frames: argument edges from the argument model,
// senses from the sense model when given (gold senses kept otherwise).
// Parallel across sentences; SRL_THREADS caps the worker count.
Corpus tag_corpus(const ArgumentModel& args, const Corpus& input,
                  const SenseModel* senses = nullptr, int threads = 0);

int effective_threads(int requested, std::size_t work_items);

}  // namespace srlp

#endif
