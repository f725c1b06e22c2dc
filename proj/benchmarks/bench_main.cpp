#include <benchmark/benchmark.h>

#include "srlp/alignment.hpp"
#include "srlp/gradcheck.hpp"
#include "srlp/lstm.hpp"
#include "srlp/model.hpp"
#include "srlp/morphology.hpp"
#include "srlp/projection.hpp"
#include "testutil.hpp"

using namespace srlp;

namespace {

void BM_LstmStepForward(benchmark::State& state) {
  std::size_t h = static_cast<std::size_t>(state.range(0));
  LSTMStackSpec spec{"cell", 1, h, h};
  ParamStore store;
  Rng rng(1);
  init_lstm_stack(store, spec, rng);
  std::vector<real_t> x(h, 0.3);
  for (auto _ : state) {
    Tape tape;
    Binder bind(tape, store);
    LSTMCellVars cell = bind_lstm_cell(bind, spec, 0, "fwd");
    VarId xv = tape.constant_vec(x);
    VarId h0 = tape.zeros({h});
    VarId c0 = tape.zeros({h});
    auto [hv, cv] = lstm_step(tape, cell, xv, h0, c0);
    benchmark::DoNotOptimize(tape.value(hv).data.data());
  }
}
BENCHMARK(BM_LstmStepForward)->Arg(32)->Arg(128)->Arg(512);

void BM_BiLstmForwardBackward(benchmark::State& state) {
  std::size_t h = static_cast<std::size_t>(state.range(0));
  LSTMStackSpec spec{"bi", 2, h, h};
  ParamStore store;
  Rng rng(2);
  init_lstm_stack(store, spec, rng);
  std::vector<real_t> x(h, 0.1);
  for (auto _ : state) {
    Tape tape;
    Binder bind(tape, store);
    std::vector<VarId> inputs;
    for (int i = 0; i < 20; ++i) inputs.push_back(tape.constant_vec(x));
    VarId root = tape.sum(tape.concat(bilstm_encode(tape, bind, spec, inputs)));
    tape.backward(root);
    GradientMap grads;
    bind.accumulate_grads(grads);
    benchmark::DoNotOptimize(grads.size());
  }
}
BENCHMARK(BM_BiLstmForwardBackward)->Arg(32)->Arg(64);

void BM_Intersect(benchmark::State& state) {
  Rng rng(3);
  std::vector<std::pair<DirectionalAlignment, DirectionalAlignment>> cases;
  for (int c = 0; c < 64; ++c) {
    DirectionalAlignment fwd, rev;
    for (int i = 0; i < 40; ++i) {
      fwd.links.emplace(static_cast<int>(rng.below(40)) + 1,
                        static_cast<int>(rng.below(40)) + 1);
      rev.links.emplace(static_cast<int>(rng.below(40)) + 1,
                        static_cast<int>(rng.below(40)) + 1);
    }
    cases.emplace_back(fwd, rev);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [fwd, rev] = cases[i++ % cases.size()];
    OneToOneAlignment a = intersect(fwd, rev, 40, 40);
    benchmark::DoNotOptimize(a.a.size());
  }
}
BENCHMARK(BM_Intersect);

void BM_ProjectSentence(benchmark::State& state) {
  Rng rng(4);
  Sentence src = testutil::english_fixture_sentence();
  OneToOneAlignment align = testutil::fixture_alignment();
  std::vector<std::string> tgt = testutil::german_fixture_tokens();
  for (auto _ : state) {
    Sentence out = project_sentence(src, align, tgt);
    benchmark::DoNotOptimize(out.frames.size());
  }
}
BENCHMARK(BM_ProjectSentence);

void BM_Stem(benchmark::State& state) {
  Rng rng(5);
  StemLexicon lex;
  for (int i = 0; i < 200; ++i) {
    std::string w = testutil::random_form(rng);
    lex.known_stems[w] = w;
  }
  for (int i = 0; i < 30; ++i) {
    lex.prefixes.insert(testutil::random_form(rng));
    lex.suffixes.insert(testutil::random_form(rng));
  }
  std::vector<std::string> words;
  for (int i = 0; i < 512; ++i) words.push_back(testutil::random_form(rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stem(lex, words[i++ % words.size()]));
  }
}
BENCHMARK(BM_Stem);

void BM_TagSentence(benchmark::State& state) {
  Corpus corpus;
  Sentence sent;
  const char* forms[] = {"kira", "valda", "tomu", "selo", "panu", "rade"};
  for (int i = 0; i < 6; ++i)
    sent.tokens.push_back(Token{i + 1, forms[i], "", "", {}});
  sent.frames = {PredicateFrame{2, "valda.01", {{1, "A0"}, {3, "A1"}}}};
  corpus.sentences.push_back(sent);
  ModelConfig cfg;  // desk defaults
  cfg.epochs = 0;
  ArgumentModel model = ArgumentModel::init(cfg, corpus, nullptr, nullptr);
  std::vector<PredicateFrame> predicates{PredicateFrame{2, "valda.01", {}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.tag_sentence(sent, predicates).size());
  }
}
BENCHMARK(BM_TagSentence);

}  // namespace

BENCHMARK_MAIN();
