#include <doctest.h>

#include <cstdlib>
#include <set>

#include <json.hpp>

#include "srlp/cli.hpp"
#include "srlp/corpus.hpp"
#include "srlp/digest.hpp"
#include "srlp/morphology.hpp"
#include "srlp/projection.hpp"
#include "srlp/text.hpp"
#include "testutil.hpp"

using namespace srlp;

namespace {

const char* kEnglishConll =
    "1\tI\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tA0\t_\n"
    "2\tcongratulate\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tY\tcongratulate.01\t_\t_\n"
    "3\thim\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tA1\t_\n"
    "4\ton\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tAM-ADV\t_\n"
    "5\this\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tA0\n"
    "6\texcellent\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tAM-ADJ\n"
    "7\treport\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tY\treport.01\t_\t_\n"
    "\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("no arguments is a usage error") {
  CHECK(srlp::cli::run(std::vector<std::string>{}) == 2);
  CHECK(srlp::cli::run({"frobnicate"}) == 2);
  CHECK(srlp::cli::run({"project"}) == 2);  // missing required flags
}

TEST_CASE("intersect emits the six fixture links") {
  testutil::TempDir dir("cli_intersect");
  write_file(dir.file("fwd.aln"), "0-0 1-1 2-2 4-4 5-5 6-6\n");
  write_file(dir.file("rev.aln"), "0-0 1-1 2-2 4-4 5-5 6-6\n");
  int rc = srlp::cli::run({"intersect", "--fwd", dir.file("fwd.aln"), "--rev",
                           dir.file("rev.aln"), "--out", dir.file("out.aln")});
  REQUIRE(rc == 0);
  CHECK(read_file(dir.file("out.aln")) == "0-0 1-1 2-2 4-4 5-5 6-6\n");
}

TEST_CASE("intersect validates indices against token texts when given") {
  testutil::TempDir dir("cli_intersect_len");
  write_file(dir.file("fwd.aln"), "5-0\n");
  write_file(dir.file("rev.aln"), "0-5\n");
  write_file(dir.file("src.txt"), "a b c\n");
  write_file(dir.file("tgt.txt"), "x\n");
  // without texts the lengths are inferred and the pair parses
  CHECK(srlp::cli::run({"intersect", "--fwd", dir.file("fwd.aln"), "--rev",
                        dir.file("rev.aln"), "--out", dir.file("out.aln")}) == 0);
  // with texts the out-of-range source index is a data error
  CHECK(srlp::cli::run({"intersect", "--fwd", dir.file("fwd.aln"), "--rev",
                        dir.file("rev.aln"), "--out", dir.file("out.aln"),
                        "--src-text", dir.file("src.txt"), "--tgt-text",
                        dir.file("tgt.txt")}) == 1);
}

TEST_CASE("intersect drops links missing from one direction") {
  testutil::TempDir dir("cli_intersect2");
  write_file(dir.file("fwd.aln"), "0-0 1-1\n");
  write_file(dir.file("rev.aln"), "0-0\n");
  REQUIRE(srlp::cli::run({"intersect", "--fwd", dir.file("fwd.aln"), "--rev",
                          dir.file("rev.aln"), "--out", dir.file("out.aln")}) == 0);
  CHECK(read_file(dir.file("out.aln")) == "0-0\n");
}

namespace {

// Recount oracle: scans the emitted CoNLL text directly, independent of the
// corpus parser. Sentences are blank-line blocks, tokens are lines, types are
// distinct FORM strings, predicates are FILLPRED=Y rows.
ProjectionStats recount_conll_text(const std::string& text) {
  ProjectionStats stats;
  std::set<std::string> types;
  bool in_sentence = false;
  for (const std::string& line : split(text, '\n')) {
    if (line.empty()) {
      if (in_sentence) ++stats.sentences;
      in_sentence = false;
      continue;
    }
    in_sentence = true;
    ++stats.tokens;
    std::vector<std::string> cols = split(line, '\t');
    types.insert(cols.at(1));
    if (cols.at(12) == "Y") ++stats.predicates;
  }
  if (in_sentence) ++stats.sentences;
  stats.types = static_cast<long>(types.size());
  return stats;
}

}  // namespace

TEST_CASE("project then stats: counts agree with an independent recount") {
  testutil::TempDir dir("cli_project");
  write_file(dir.file("src.conll"), kEnglishConll);
  write_file(dir.file("tgt.txt"),
             "Ich beglückwünsche ihn zu seinem ausgezeichneten Bericht\n");
  write_file(dir.file("fwd.aln"), "0-0 1-1 2-2 4-4 5-5 6-6\n");
  write_file(dir.file("rev.aln"), "0-0 1-1 2-2 4-4 5-5 6-6\n");
  int rc = srlp::cli::run({"project", "--src", dir.file("src.conll"), "--tgt",
                           dir.file("tgt.txt"), "--fwd", dir.file("fwd.aln"), "--rev",
                           dir.file("rev.aln"), "--out", dir.file("proj.conll"),
                           "--min-density", "0.8"});
  REQUIRE(rc == 0);

  ProjectionStats recount = recount_conll_text(read_file(dir.file("proj.conll")));
  CHECK(recount == ProjectionStats{1, 7, 7, 2});
  REQUIRE(srlp::cli::run({"stats", "--in", dir.file("proj.conll")}) == 0);
}

TEST_CASE("projected stats over 100 synthetic pairs match the recount oracle") {
  testutil::TempDir dir("cli_project_many");
  Rng rng(321);
  Corpus src;
  std::string tgt_text, aln_text;
  for (int i = 0; i < 100; ++i) {
    Sentence s = testutil::random_sentence(rng, 9);
    s.labeled_mask.clear();
    src.sentences.push_back(s);
    std::string line, aln;
    for (int t = 1; t <= s.size(); ++t) {
      if (t > 1) line += " ";
      line += "t" + s.tokens[static_cast<size_t>(t - 1)].form;
      // drop some links so densities vary around the threshold
      if (rng.below(5) != 0) {
        if (!aln.empty()) aln += " ";
        aln += std::to_string(t - 1) + "-" + std::to_string(t - 1);
      }
    }
    tgt_text += line + "\n";
    aln_text += aln + "\n";
  }
  write_conll_file(src, dir.file("src.conll"));
  write_file(dir.file("tgt.txt"), tgt_text);
  write_file(dir.file("fwd.aln"), aln_text);
  write_file(dir.file("rev.aln"), aln_text);

  REQUIRE(srlp::cli::run({"project", "--src", dir.file("src.conll"), "--tgt",
                          dir.file("tgt.txt"), "--fwd", dir.file("fwd.aln"), "--rev",
                          dir.file("rev.aln"), "--out", dir.file("proj.conll"),
                          "--min-density", "0.8"}) == 0);
  ProjectionStats recount = recount_conll_text(read_file(dir.file("proj.conll")));
  ProjectionStats reported =
      corpus_stats(read_conll_file(dir.file("proj.conll")));
  CHECK(recount == reported);
  CHECK(recount.sentences > 0);
  CHECK(recount.sentences < 100);  // the density filter must bite
}

TEST_CASE("data errors exit with code 1") {
  testutil::TempDir dir("cli_err");
  write_file(dir.file("bad.conll"), "1\tx\n");
  CHECK(srlp::cli::run({"stats", "--in", dir.file("bad.conll")}) == 1);
  CHECK(srlp::cli::run({"stats", "--in", dir.file("missing.conll")}) == 1);
}

TEST_CASE("stem-compile writes a loadable lexicon") {
  testutil::TempDir dir("cli_stem");
  write_file(dir.file("seg.txt"), "walking\twalk/STM ing/SUF\nredo\tre/PRE do/STM\n");
  REQUIRE(srlp::cli::run({"stem-compile", "--mode", "ustem", "--in", dir.file("seg.txt"),
                          "--out", dir.file("lex.json")}) == 0);
  StemLexicon lex = load_lexicon_file(dir.file("lex.json"));
  CHECK(stem(lex, "walking") == "walk");
  CHECK(stem(lex, "rewalking") == "walk");  // OOV: strips re- and -ing
}

TEST_CASE("provenance records name the input digests") {
  testutil::TempDir dir("cli_prov");
  write_file(dir.file("c.conll"), kEnglishConll);
  REQUIRE(srlp::cli::run({"stats", "--in", dir.file("c.conll"), "--prov",
                          dir.file("prov.json")}) == 0);
  nlohmann::json prov = nlohmann::json::parse(read_file(dir.file("prov.json")));
  CHECK(prov.at("subcommand") == "stats");
  std::string digest = prov.at("inputs").at(dir.file("c.conll")).get<std::string>();
  CHECK(digest == file_digest(dir.file("c.conll")));
}

TEST_CASE("score reports the fixture numbers") {
  testutil::TempDir dir("cli_score");
  // gold: 3 edges + 1 sense; prediction: 2 correct edges + 1 spurious + sense
  Corpus gold, pred;
  Sentence gs;
  for (int i = 1; i <= 6; ++i) gs.tokens.push_back(Token{i, "w" + std::to_string(i), "", "", {}});
  gs.frames = {PredicateFrame{2, "e.01", {{1, "A0"}, {3, "A1"}, {4, "AM-ADV"}}}};
  gold.sentences.push_back(gs);
  Sentence ps = gs;
  ps.frames = {PredicateFrame{2, "e.01", {{1, "A0"}, {3, "A1"}, {5, "A2"}}}};
  pred.sentences.push_back(ps);
  write_conll_file(gold, dir.file("gold.conll"));
  write_conll_file(pred, dir.file("pred.conll"));
  REQUIRE(srlp::cli::run({"score", "--gold", dir.file("gold.conll"), "--pred",
                          dir.file("pred.conll"), "--out-json", dir.file("r.json")}) == 0);
  nlohmann::json r = nlohmann::json::parse(read_file(dir.file("r.json")));
  CHECK(r.at("gold_sense").at("f1").get<double>() == doctest::Approx(0.75));
  CHECK(r.at("auto_sense").at("f1").get<double>() == doctest::Approx(0.75));
  CHECK(r.at("summary").get<std::string>() == "75.0 (75.0)");
}

TEST_CASE("train/tag wiring in ustem mode, with SRL_THREADS capping workers") {
  testutil::TempDir dir("cli_ustem");
  Corpus corpus;
  const char* verbs[] = {"valdas", "terkas"};
  for (int i = 0; i < 6; ++i) {
    Sentence s;
    s.tokens = {Token{1, "kira", "", "", {}},
                Token{2, verbs[i % 2], "", "", {}},
                Token{3, "tomu", "", "", {}}};
    s.frames = {PredicateFrame{2, std::string(verbs[i % 2]) + ".01", {{1, "A0"}}}};
    corpus.sentences.push_back(s);
  }
  write_conll_file(corpus, dir.file("train.conll"));
  write_file(dir.file("seg.txt"), "valdas\tvalda/STM s/SUF\nterkas\tterka/STM s/SUF\n");

  REQUIRE(srlp::cli::run({"stem-compile", "--mode", "ustem", "--in", dir.file("seg.txt"),
                          "--out", dir.file("lex.json")}) == 0);
  // missing --lexicon in a stem mode is a data error
  CHECK(srlp::cli::run({"train-args", "--train", dir.file("train.conll"), "--out",
                        dir.file("x.ckpt"), "--lemma-mode", "ustem", "--epochs",
                        "1"}) == 1);
  REQUIRE(srlp::cli::run({"train-args", "--train", dir.file("train.conll"), "--out",
                          dir.file("args.ckpt"), "--lemma-mode", "ustem", "--lexicon",
                          dir.file("lex.json"), "--epochs", "2", "--seed", "9"}) == 0);
  setenv("SRL_THREADS", "2", 1);
  int rc = srlp::cli::run({"tag", "--in", dir.file("train.conll"), "--model",
                           dir.file("args.ckpt"), "--out", dir.file("tagged.conll")});
  unsetenv("SRL_THREADS");
  REQUIRE(rc == 0);
  Corpus tagged = read_conll_file(dir.file("tagged.conll"));
  REQUIRE(tagged.sentences.size() == corpus.sentences.size());
  // predicate positions and senses come from the input
  CHECK(tagged.sentences[0].frames.size() == 1);
  CHECK(tagged.sentences[0].frames[0].position == 2);
  CHECK(tagged.sentences[0].frames[0].sense == "valdas.01");
}

TEST_CASE("the installed binary honors the exit-code contract") {
#ifdef SRLP_TOOL_PATH
  std::string tool = SRLP_TOOL_PATH;
  CHECK(std::system((tool + " > /dev/null 2>&1").c_str()) != 0);
  CHECK(std::system((tool + " --help > /dev/null 2>&1").c_str()) == 0);
#endif
}

}  // TEST_SUITE
