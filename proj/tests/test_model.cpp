#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "srlp/error.hpp"
#include "srlp/gradcheck.hpp"
#include "srlp/model.hpp"
#include "srlp/text.hpp"
#include "testutil.hpp"

using namespace srlp;

namespace {

// Tiny config so the checks stay fast.
ModelConfig tiny_config(LemmaMode mode = LemmaMode::kChar) {
  ModelConfig cfg;
  cfg.d_w = 6;
  cfg.d_c = 4;
  cfg.d_ch = 6;
  cfg.d_le = 4;
  cfg.d_lem_dec = 4;
  cfg.d_r = 4;
  cfg.d_h = 8;
  cfg.d_pos = 4;
  cfg.char_depth = 1;
  cfg.enc_depth = 1;
  cfg.lemma_depth = 1;
  cfg.sense_depth = 1;
  cfg.lemma_mode = mode;
  cfg.min_count = 1;
  cfg.seed = 3;
  return cfg;
}

Corpus toy_corpus() {
  // "kim sees pat" with sees -> A0 kim, A1 pat; "pat runs" with runs -> A0 pat
  Corpus c;
  Sentence s1;
  s1.tokens = {Token{1, "kim", "N", "", {}}, Token{2, "sees", "V", "", {}},
               Token{3, "pat", "N", "", {}}};
  s1.frames = {PredicateFrame{2, "see.01", {{1, "A0"}, {3, "A1"}}}};
  Sentence s2;
  s2.tokens = {Token{1, "pat", "N", "", {}}, Token{2, "runs", "V", "", {}}};
  s2.frames = {PredicateFrame{2, "run.01", {{1, "A0"}}}};
  c.sentences = {s1, s2};
  return c;
}

StemLexicon toy_lexicon() {
  StemLexicon lex;
  lex.suffixes = {"s", "ing"};
  lex.known_stems["sees"] = "see";
  lex.known_stems["runs"] = "run";
  return lex;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("both config presets validate") {
  ModelConfig::desk().validate();
  ModelConfig::paper().validate();
  CHECK(ModelConfig::paper().d_h == 512);
  CHECK(ModelConfig::paper().enc_depth == 3);
  CHECK(ModelConfig::paper().minibatch == 1000);
  CHECK(ModelConfig::paper().epochs == 2);
  CHECK(ModelConfig::paper().lr == 0.001);

  ModelConfig bad = ModelConfig::desk();
  bad.d_ch = 7;  // bidirectional concat needs an even width
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("char representation: single char concatenates the sole step's states") {
  ModelConfig cfg = tiny_config();
  Corpus corpus = toy_corpus();
  ArgumentModel model = ArgumentModel::init(cfg, corpus, nullptr, nullptr);
  Tape tape;
  Binder bind(tape, model.params());
  VarId rep = model.channels().char_rep(tape, bind, "k");
  REQUIRE(tape.value(rep).numel() == static_cast<size_t>(cfg.d_ch));
  // both halves come from the same single step, so fwd-last == state after
  // one forward step and bwd-first == state after one backward step
  std::vector<VarId> one = bilstm_encode(
      tape, bind, model.channels().char_stack(),
      std::vector<VarId>{tape.row(bind("emb.char"),
                                  static_cast<size_t>(model.channels().chars().id("k")))});
  for (int k = 0; k < cfg.d_ch; ++k)
    CHECK(tape.value(rep).at(static_cast<size_t>(k)) ==
          doctest::Approx(tape.value(one[0]).at(static_cast<size_t>(k))).epsilon(1e-12));
}

TEST_CASE("char representation is zero under zero parameters and errors on empty") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  for (auto& [name, e] : model.params().entries()) e.value.fill(0.0);
  Tape tape;
  Binder bind(tape, model.params());
  VarId rep = model.channels().char_rep(tape, bind, "ab");
  for (real_t v : tape.value(rep).data) CHECK(v == 0.0);
  CHECK_THROWS_AS(model.channels().char_rep(tape, bind, ""), Error);
}

TEST_CASE("identical forms give identical char representations") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  Tape tape;
  Binder bind(tape, model.params());
  VarId a = model.channels().char_rep(tape, bind, "pat");
  VarId b = model.channels().char_rep(tape, bind, "pat");
  CHECK(tape.value(a).data == tape.value(b).data);
}

TEST_CASE("input rows carry the lemma flag exactly at the predicate") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  Sentence sent = toy_corpus().sentences[0];
  Tape tape;
  Binder bind(tape, model.params());
  std::vector<VarId> rows = model.input_rows(tape, bind, sent, 2);
  REQUIRE(rows.size() == 3);
  std::size_t width = static_cast<size_t>(cfg.arg_input_dim());
  for (int i = 0; i < 3; ++i) {
    const Tensor& row = tape.value(rows[static_cast<size_t>(i)]);
    REQUIRE(row.numel() == width);
    real_t flag = row.at(width - 1);
    CHECK(flag == (i == 1 ? 1.0 : 0.0));
    if (i != 1) {  // zero lemma block
      for (int k = 0; k <= cfg.d_le; ++k)
        CHECK(row.at(width - 1 - static_cast<size_t>(k)) == 0.0);
    }
  }
  CHECK_THROWS_AS(model.input_rows(tape, bind, sent, 0), Error);
  CHECK_THROWS_AS(model.input_rows(tape, bind, sent, 4), Error);
}

TEST_CASE("rows differ across predicates only in the lemma+flag block") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  Sentence sent = toy_corpus().sentences[0];
  sent.frames.clear();
  Tape tape;
  Binder bind(tape, model.params());
  std::vector<VarId> rows1 = model.input_rows(tape, bind, sent, 1);
  std::vector<VarId> rows2 = model.input_rows(tape, bind, sent, 2);
  std::size_t base = static_cast<size_t>(2 * cfg.d_w + cfg.d_ch);
  for (int i = 0; i < 3; ++i) {
    const Tensor& a = tape.value(rows1[static_cast<size_t>(i)]);
    const Tensor& b = tape.value(rows2[static_cast<size_t>(i)]);
    for (std::size_t k = 0; k < base; ++k) CHECK(a.at(k) == b.at(k));
  }
}

TEST_CASE("ustem mode fills the lemma slot from the stem embedding") {
  ModelConfig cfg = tiny_config(LemmaMode::kUStem);
  StemLexicon lex = toy_lexicon();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, &lex);
  Sentence sent = toy_corpus().sentences[0];
  Tape tape;
  Binder bind(tape, model.params());
  std::vector<VarId> rows = model.input_rows(tape, bind, sent, 2);
  const Tensor& row = tape.value(rows[1]);
  int stem_id = model.stems().id("see");  // stem("sees") == "see"
  REQUIRE(stem_id >= 0);
  const Tensor& emb = model.params().get("emb.stem");
  std::size_t base = static_cast<size_t>(2 * cfg.d_w + cfg.d_ch);
  for (int k = 0; k < cfg.d_le; ++k)
    CHECK(row.at(base + static_cast<size_t>(k)) ==
          emb.at(static_cast<size_t>(stem_id), static_cast<size_t>(k)));
}

TEST_CASE("encoder output shape and zero-network behavior") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  Sentence sent = toy_corpus().sentences[0];
  {
    Tape tape;
    Binder bind(tape, model.params());
    std::vector<VarId> states = model.encode(tape, bind, sent, 2);
    REQUIRE(states.size() == 3);
    for (VarId s : states)
      CHECK(tape.value(s).numel() == static_cast<size_t>(2 * cfg.d_h));
  }
  for (auto& [name, e] : model.params().entries()) e.value.fill(0.0);
  for (int p = 1; p <= 3; ++p) {
    Tape tape;
    Binder bind(tape, model.params());
    for (VarId s : model.encode(tape, bind, sent, p))
      for (real_t v : tape.value(s).data) CHECK(v == 0.0);
  }
}

TEST_CASE("different predicates change the encoding when the lemma block is nonzero") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  Sentence sent = toy_corpus().sentences[0];
  Tape tape;
  Binder bind(tape, model.params());
  std::vector<VarId> s1 = model.encode(tape, bind, sent, 1);
  std::vector<VarId> s2 = model.encode(tape, bind, sent, 2);
  bool any_differ = false;
  for (std::size_t i = 0; i < s1.size(); ++i)
    if (tape.value(s1[i]).data != tape.value(s2[i]).data) any_differ = true;
  CHECK(any_differ);
}

TEST_CASE("with the lemma channel zeroed the encoder ignores the predicate choice") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  Sentence sent = toy_corpus().sentences[0];
  Tape tape;
  Binder bind(tape, model.params());
  std::vector<VarId> s1 = model.encode(tape, bind, sent, 1, /*zero_lemma_channel=*/true);
  std::vector<VarId> s2 = model.encode(tape, bind, sent, 3, /*zero_lemma_channel=*/true);
  for (std::size_t i = 0; i < s1.size(); ++i)
    CHECK(tape.value(s1[i]).data == tape.value(s2[i]).data);
}

TEST_CASE("role scores: zero U gives the uniform distribution") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  model.params().get("dec.U").fill(0.0);
  Sentence sent = toy_corpus().sentences[0];
  std::vector<real_t> probs = model.role_probs(sent, 2, 1);
  REQUIRE(static_cast<int>(probs.size()) == model.roles().size());
  for (real_t p : probs)
    CHECK(p == doctest::Approx(1.0 / model.roles().size()).epsilon(1e-12));
}

TEST_CASE("identical role embeddings give identical probabilities") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  Tensor& roles = model.params().get("dec.role_emb");
  for (int k = 0; k < cfg.d_r; ++k)
    roles.at(1, static_cast<size_t>(k)) = roles.at(2, static_cast<size_t>(k));
  Sentence sent = toy_corpus().sentences[0];
  std::vector<real_t> probs = model.role_probs(sent, 2, 3);
  CHECK(probs[1] == doctest::Approx(probs[2]).epsilon(1e-12));
}

TEST_CASE("role scores match a scalar oracle") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  Sentence sent = toy_corpus().sentences[0];

  Tape tape;
  Binder bind(tape, model.params());
  std::vector<VarId> states = model.encode(tape, bind, sent, 2);
  VarId u = model.decoder_lemma(tape, bind, "sees");
  std::vector<VarId> ws = model.role_weights(tape, bind, u);
  VarId logits = model.token_logits(tape, ws, states[1], states[0]);

  const Tensor& U = model.params().get("dec.U");
  const Tensor& remb = model.params().get("dec.role_emb");
  const Tensor& uv = tape.value(u);
  std::vector<double> pair;
  for (real_t v : tape.value(states[1]).data) pair.push_back(v);
  for (real_t v : tape.value(states[0]).data) pair.push_back(v);
  for (int r = 0; r < model.roles().size(); ++r) {
    double logit = 0;
    for (std::size_t row = 0; row < U.rows(); ++row) {
      double acc = 0;
      for (std::size_t k = 0; k < uv.numel(); ++k)
        acc += static_cast<double>(U.at(row, k)) * static_cast<double>(uv.at(k));
      for (int k = 0; k < cfg.d_r; ++k)
        acc += static_cast<double>(U.at(row, uv.numel() + static_cast<size_t>(k))) *
               static_cast<double>(remb.at(static_cast<size_t>(r), static_cast<size_t>(k)));
      double w = acc > 0 ? acc : 0;  // RELU
      logit += w * pair[row];
    }
    CHECK(std::abs(static_cast<double>(tape.value(logits).at(static_cast<size_t>(r))) -
                   logit) < 1e-10);
  }
}

TEST_CASE("overfit: a one-sentence corpus is memorized") {
  Corpus corpus;
  corpus.sentences.push_back(toy_corpus().sentences[0]);
  ModelConfig cfg = tiny_config();
  cfg.epochs = 300;
  cfg.lr = 0.02;
  cfg.minibatch = 16;
  ArgumentModel model = train_argument_classifier(corpus, cfg);

  Tape tape;
  Binder bind(tape, model.params());
  double loss = tape.value(model.sentence_loss(tape, bind, corpus.sentences[0])).at(0);
  CHECK(loss < 0.01);

  const Sentence& sent = corpus.sentences[0];
  std::vector<PredicateFrame> tagged =
      model.tag_sentence(sent, {PredicateFrame{2, "see.01", {}}});
  REQUIRE(tagged.size() == 1);
  REQUIRE(tagged[0].args.size() == 2);
  CHECK(tagged[0].arg_at(1)->role == "A0");
  CHECK(tagged[0].arg_at(3)->role == "A1");
}

TEST_CASE("mask-false tokens contribute no instances") {
  Corpus corpus = toy_corpus();
  corpus.sentences[0].labeled_mask = {false, false, false};
  corpus.sentences[1].labeled_mask = {true, true};
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, corpus, nullptr, nullptr);
  Tape tape;
  Binder bind(tape, model.params());
  VarId loss0 = model.sentence_loss(tape, bind, corpus.sentences[0]);
  CHECK(tape.value(loss0).at(0) == 0.0);  // every token excluded
  VarId loss1 = model.sentence_loss(tape, bind, corpus.sentences[1]);
  CHECK(tape.value(loss1).at(0) > 0.0);
}

TEST_CASE("training twice with one seed gives bit-identical checkpoints") {
  testutil::TempDir dir("det");
  Corpus corpus = toy_corpus();
  ModelConfig cfg = tiny_config();
  cfg.epochs = 3;
  auto run = [&](const std::string& name) {
    ArgumentModel model = train_argument_classifier(corpus, cfg);
    model.save(dir.file(name));
    return read_file(dir.file(name));
  };
  CHECK(run("a.ckpt") == run("b.ckpt"));
}

TEST_CASE("zero-parameter model ties break to NULL everywhere") {
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), nullptr, nullptr);
  for (auto& [name, e] : model.params().entries()) e.value.fill(0.0);
  Sentence sent = toy_corpus().sentences[0];
  std::vector<PredicateFrame> tagged =
      model.tag_sentence(sent, {PredicateFrame{2, "see.01", {}}});
  REQUIRE(tagged.size() == 1);
  CHECK(tagged[0].args.empty());
  CHECK(tagged[0].sense == "see.01");
}

TEST_CASE("adding a constant to every logit leaves probabilities unchanged") {
  Rng rng(31);
  std::vector<real_t> logits(5);
  for (auto& v : logits) v = static_cast<real_t>(rng.uniform(-3, 3));
  std::vector<real_t> shifted = logits;
  for (auto& v : shifted) v += 7.25;
  SoftmaxXent a = softmax_xent_value(logits, 1);
  SoftmaxXent b = softmax_xent_value(shifted, 1);
  for (std::size_t k = 0; k < logits.size(); ++k)
    CHECK(a.probs[k] == doctest::Approx(b.probs[k]).epsilon(1e-12));
}

TEST_CASE("end-to-end gradient check in all three lemma modes") {
  Corpus corpus;
  Sentence sent;
  sent.tokens = {Token{1, "kaon", "", "", {}}, Token{2, "abel", "", "", {}},
                 Token{3, "boku", "", "", {}}, Token{4, "okra", "", "", {}}};
  sent.frames = {PredicateFrame{2, "s.01", {{1, "A0"}, {4, "A1"}}},
                 PredicateFrame{4, "t.01", {{3, "A0"}}}};
  corpus.sentences.push_back(sent);
  StemLexicon lex;
  lex.suffixes = {"b", "k"};

  for (LemmaMode mode : {LemmaMode::kChar, LemmaMode::kUStem, LemmaMode::kSLem}) {
    CAPTURE(lemma_mode_name(mode));
    ModelConfig cfg = tiny_config(mode);
    ArgumentModel model = ArgumentModel::init(cfg, corpus, nullptr, &lex);
    // condition the check point: +-0.01 embeddings leave the influential
    // gradients too close to the finite-difference resolution
    Rng bump(999);
    for (auto& [name, e] : model.params().entries())
      if (name.rfind("emb.", 0) == 0 || name == "dec.role_emb")
        for (auto& v : e.value.data) v = static_cast<real_t>(bump.uniform(-0.5, 0.5));
    auto loss = [&](const ParamStore& s, GradientMap* grads) {
      Tape tape;
      Binder bind(tape, s);
      VarId root = model.sentence_loss(tape, bind, corpus.sentences[0]);
      double value = tape.value(root).at(0);
      if (grads) {
        tape.backward(root);
        bind.accumulate_grads(*grads);
      }
      return value;
    };
    CHECK(grad_check(loss, model.params(), {1e-5, 6}) < 1e-5);
  }
}

TEST_CASE("sense model: size-one vocab, overfit, and unseen tokens") {
  Corpus corpus = toy_corpus();
  ModelConfig cfg = tiny_config();

  // size-one sense vocab always answers that sense
  Corpus single = corpus;
  for (auto& s : single.sentences)
    for (auto& f : s.frames) f.sense = "only.01";
  SenseModel one = SenseModel::init(cfg, single, nullptr);
  CHECK(one.disambiguate(single.sentences[0], {2}) ==
        std::vector<std::string>{"only.01"});

  // overfit on a 5-sentence corpus with 3 senses
  Corpus five;
  const char* verbs[] = {"va", "vb", "vc", "va", "vb"};
  const char* senses[] = {"a.01", "b.01", "c.01", "a.01", "b.01"};
  for (int i = 0; i < 5; ++i) {
    Sentence s;
    s.tokens = {Token{1, "x", "", "", {}}, Token{2, verbs[i], "", "", {}}};
    s.frames = {PredicateFrame{2, senses[i], {{1, "A0"}}}};
    // make the third corpus sentence distinguishable for "c.01"
    if (i == 2) s.tokens[0].form = "y";
    five.sentences.push_back(s);
  }
  ModelConfig scfg = tiny_config();
  scfg.epochs = 200;
  scfg.lr = 0.02;
  scfg.minibatch = 8;
  SenseModel model = train_sense_classifier(five, scfg);
  for (int i = 0; i < 5; ++i) {
    std::vector<std::string> got = model.disambiguate(five.sentences[static_cast<size_t>(i)], {2});
    CHECK(got[0] == senses[i]);
  }

  // unseen predicate token still yields a valid sense
  Sentence unseen;
  unseen.tokens = {Token{1, "zzz", "", "", {}}, Token{2, "qqq", "", "", {}}};
  std::vector<std::string> got = model.disambiguate(unseen, {2});
  CHECK(model.senses().contains(got[0]));
}

TEST_CASE("sense training without frames is an error") {
  Corpus corpus;
  Sentence s;
  s.tokens = {Token{1, "a", "", "", {}}};
  corpus.sentences.push_back(s);
  CHECK_THROWS_WITH_AS(train_sense_classifier(corpus, tiny_config()),
                       doctest::Contains("no training signal"), Error);
  CHECK_THROWS_WITH_AS(train_argument_classifier(corpus, tiny_config()),
                       doctest::Contains("no training signal"), Error);
}

TEST_CASE("predicate identifier: zero parameters exclude everything") {
  ModelConfig cfg = tiny_config();
  Corpus corpus = toy_corpus();
  PredicateIdModel model = PredicateIdModel::init(cfg, corpus, nullptr);
  for (auto& [name, e] : model.params().entries()) e.value.fill(0.0);
  const Sentence& sent = corpus.sentences[0];
  for (double p : model.probabilities(sent)) CHECK(p == doctest::Approx(0.5));
  CHECK(model.identify(sent).empty());  // strictly greater than 0.5
}

TEST_CASE("predicate identifier overfits five labeled sentences") {
  Corpus corpus;
  const char* verbs[] = {"goes", "sees", "runs", "eats", "sits"};
  for (int i = 0; i < 5; ++i) {
    Sentence s;
    s.tokens = {Token{1, "aa", "N", "", {}}, Token{2, verbs[i], "V", "", {}},
                Token{3, "bb", "N", "", {}}};
    s.frames = {PredicateFrame{2, std::string(verbs[i]) + ".01", {}}};
    corpus.sentences.push_back(s);
  }
  ModelConfig cfg = tiny_config();
  cfg.epochs = 150;
  cfg.lr = 0.02;
  cfg.minibatch = 32;
  PredicateIdModel model = train_predicate_identifier(corpus, cfg);
  for (const auto& sent : corpus.sentences) CHECK(model.identify(sent) == std::set<int>{2});
}

TEST_CASE("predicate identifier requires POS") {
  ModelConfig cfg = tiny_config();
  Corpus corpus = toy_corpus();
  PredicateIdModel model = PredicateIdModel::init(cfg, corpus, nullptr);
  Sentence no_pos;
  no_pos.tokens = {Token{1, "a", "", "", {}}};
  CHECK_THROWS_WITH_AS(model.identify(no_pos), doctest::Contains("POS"), Error);
}

TEST_CASE("no positional features: with recurrence cut, predictions permute with tokens") {
  ModelConfig cfg = tiny_config();
  Corpus corpus = toy_corpus();
  PredicateIdModel model = PredicateIdModel::init(cfg, corpus, nullptr);
  // cut the sentence-level recurrence entirely: zero recurrent weights and
  // saturate the forget gate shut, so h_i is a function of token i alone
  for (auto& [name, e] : model.params().entries()) {
    if (name.rfind("penc.", 0) != 0) continue;
    if (name.find(".U_") != std::string::npos) e.value.fill(0.0);
    if (name.find(".W_f") != std::string::npos) e.value.fill(0.0);
    if (name.find(".b_f") != std::string::npos) e.value.fill(-50.0);
  }
  Sentence ab;
  ab.tokens = {Token{1, "kim", "N", "", {}}, Token{2, "sees", "V", "", {}}};
  Sentence ba;
  ba.tokens = {Token{1, "sees", "V", "", {}}, Token{2, "kim", "N", "", {}}};
  std::vector<double> p_ab = model.probabilities(ab);
  std::vector<double> p_ba = model.probabilities(ba);
  CHECK(p_ab[0] == doctest::Approx(p_ba[1]).epsilon(1e-12));
  CHECK(p_ab[1] == doctest::Approx(p_ba[0]).epsilon(1e-12));
}

TEST_CASE("checkpoint save/load round trip preserves behavior") {
  testutil::TempDir dir("ckpt");
  Corpus corpus = toy_corpus();
  ModelConfig cfg = tiny_config(LemmaMode::kUStem);
  cfg.epochs = 5;
  StemLexicon lex = toy_lexicon();
  ArgumentModel model = train_argument_classifier(corpus, cfg, nullptr, &lex);
  model.save(dir.file("m.ckpt"));
  ArgumentModel back = ArgumentModel::load(dir.file("m.ckpt"));
  const Sentence& sent = corpus.sentences[0];
  CHECK(model.role_probs(sent, 2, 1) == back.role_probs(sent, 2, 1));

  // tampered sidecar is rejected
  std::string sidecar = read_file(dir.file("m.ckpt") + ".json");
  write_file(dir.file("m.ckpt") + ".json", sidecar + " ");
  CHECK_THROWS_AS(ArgumentModel::load(dir.file("m.ckpt")), Error);
}

TEST_CASE("tag_corpus output is identical across thread counts") {
  Corpus corpus = toy_corpus();
  ModelConfig cfg = tiny_config();
  cfg.epochs = 3;
  ArgumentModel model = train_argument_classifier(corpus, cfg);
  Corpus t1 = tag_corpus(model, corpus, nullptr, 1);
  Corpus t3 = tag_corpus(model, corpus, nullptr, 3);
  CHECK(t1 == t3);
}

TEST_CASE("pretrained channel: unknown words map to the zero vector") {
  EmbeddingTable table;
  table.dim = 6;
  table.entries["kim"] = {1, 2, 3, 4, 5, 6};
  ModelConfig cfg = tiny_config();
  ArgumentModel model = ArgumentModel::init(cfg, toy_corpus(), &table, nullptr);
  Tape tape;
  Binder bind(tape, model.params());
  VarId known = model.channels().pretrained_vec(tape, bind, "Kim");  // lowercased hit
  CHECK(tape.value(known).at(0) == 1.0);
  VarId unknown = model.channels().pretrained_vec(tape, bind, "pat");
  for (real_t v : tape.value(unknown).data) CHECK(v == 0.0);
}

}  // TEST_SUITE
