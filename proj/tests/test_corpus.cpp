#include <doctest.h>

#include <sstream>

#include "srlp/corpus.hpp"
#include "srlp/error.hpp"
#include "srlp/text.hpp"
#include "testutil.hpp"

using namespace srlp;

namespace {

// The seven-token German sentence with two projected frames, 16 columns.
const char* kGermanConll =
    "1\tIch\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tA0\t_\n"
    "2\tbeglückwünsche\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tY\tcongratulate.01\t_\t_\n"
    "3\tihn\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tA1\t_\n"
    "4\tzu\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\n"
    "5\tseinem\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tA0\n"
    "6\tausgezeichneten\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tAM-ADJ\n"
    "7\tBericht\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tY\treport.01\t_\t_\n"
    "\n";

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("empty stream yields an empty corpus") {
  CHECK(read_conll_string("").sentences.empty());
}

TEST_CASE("parses the seven-token German sentence with two frames") {
  Corpus c = read_conll_string(kGermanConll);
  REQUIRE(c.sentences.size() == 1);
  const Sentence& s = c.sentences[0];
  REQUIRE(s.size() == 7);
  CHECK(s.tokens[1].form == "beglückwünsche");
  REQUIRE(s.frames.size() == 2);
  CHECK(s.frames[0].position == 2);
  CHECK(s.frames[0].sense == "congratulate.01");
  CHECK(s.frames[1].position == 7);
  CHECK(s.frames[1].sense == "report.01");
  REQUIRE(s.frames[0].args.size() == 2);
  CHECK(s.frames[0].arg_at(1)->role == "A0");
  CHECK(s.frames[0].arg_at(3)->role == "A1");
  REQUIRE(s.frames[1].args.size() == 2);
  CHECK(s.frames[1].arg_at(5)->role == "A0");
  CHECK(s.frames[1].arg_at(6)->role == "AM-ADJ");
}

TEST_CASE("sentence without predicates parses with empty APRED block") {
  std::string text =
      "1\ta\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "2\tb\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "3\tc\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\n\n";
  Corpus c = read_conll_string(text);
  REQUIRE(c.sentences.size() == 1);
  CHECK(c.sentences[0].frames.empty());
  CHECK(c.sentences[0].size() == 3);
}

TEST_CASE("malformed line mentions line number and column count") {
  CHECK_THROWS_WITH_AS(read_conll_string("1\tx\t_\n"),
                       doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(read_conll_string("1\tx\t_\n"),
                       doctest::Contains("got 3"), Error);
}

TEST_CASE("APRED count mismatch names the sentence ordinal") {
  // one predicate but two APRED columns
  std::string bad =
      "1\ta\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tY\ta.01\t_\t_\n\n";
  CHECK_THROWS_WITH_AS(read_conll_string(bad), doctest::Contains("sentence 1"), Error);
}

TEST_CASE("stored NULL role is rejected") {
  std::string bad =
      "1\ta\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tY\ta.01\tNULL\n\n";
  CHECK_THROWS_AS(read_conll_string(bad), Error);
}

TEST_CASE("FILLPRED and PRED must agree") {
  // FILLPRED marked but no sense
  CHECK_THROWS_AS(
      read_conll_string("1\ta\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tY\t_\t_\n\n"), Error);
  // sense without FILLPRED
  CHECK_THROWS_AS(
      read_conll_string("1\ta\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\ta.01\t_\n\n"), Error);
  // FILLPRED value other than Y or _
  CHECK_THROWS_AS(
      read_conll_string("1\ta\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\tN\t_\n\n"), Error);
}

TEST_CASE("empty columns and in-form whitespace are rejected") {
  CHECK_THROWS_AS(
      read_conll_string("1\t\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\n\n"), Error);
  CHECK_THROWS_AS(
      read_conll_string("1\ta b\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\n\n"), Error);
}

TEST_CASE("writes the German sentence with APRED roles at rows 1/3/5/6") {
  Corpus c = read_conll_string(kGermanConll);
  std::string out = write_conll(c);
  CHECK(out == kGermanConll);
  // roles column-addressable: row 1 APRED1, row 3 APRED1, rows 5/6 APRED2
  auto lines = split(out, '\n');
  CHECK(split(lines[0], '\t')[14] == "A0");
  CHECK(split(lines[2], '\t')[14] == "A1");
  CHECK(split(lines[4], '\t')[15] == "A0");
  CHECK(split(lines[5], '\t')[15] == "AM-ADJ");
}

TEST_CASE("empty corpus writes empty text") { CHECK(write_conll(Corpus{}).empty()); }

TEST_CASE("role with a tab is rejected on write") {
  Corpus c;
  Sentence s;
  s.tokens.push_back(Token{1, "a", "", "", {}});
  s.frames.push_back(PredicateFrame{1, "a.01", {{1, "A\t0"}}});
  c.sentences.push_back(s);
  CHECK_THROWS_AS(write_conll(c), Error);
}

TEST_CASE("labeled mask round-trips through the FEAT column") {
  Sentence s;
  for (int i = 1; i <= 3; ++i) s.tokens.push_back(Token{i, "w" + std::to_string(i), "", "", {}});
  s.labeled_mask = {true, false, true};
  Corpus c;
  c.sentences.push_back(s);
  Corpus back = read_conll_string(write_conll(c));
  REQUIRE(back.sentences.size() == 1);
  CHECK(back.sentences[0].labeled_mask == std::vector<bool>{true, false, true});
}

TEST_CASE("write-read-write over random corpora is byte-identical") {
  Rng rng(20240817);
  for (int round = 0; round < 30; ++round) {
    Corpus c = testutil::random_corpus(rng, 5);
    std::string once = write_conll(c);
    Corpus back = read_conll_string(once);
    std::string twice = write_conll(back);
    REQUIRE(once == twice);
  }
}

TEST_CASE("read(write(c)) reproduces structured fields exactly") {
  Rng rng(99);
  for (int round = 0; round < 20; ++round) {
    Corpus c = testutil::random_corpus(rng, 4);
    Corpus back = read_conll_string(write_conll(c));
    REQUIRE(back.sentences.size() == c.sentences.size());
    for (size_t i = 0; i < c.sentences.size(); ++i) {
      const Sentence& a = c.sentences[i];
      const Sentence& b = back.sentences[i];
      REQUIRE(a.size() == b.size());
      for (int t = 0; t < a.size(); ++t) {
        CHECK(a.tokens[t].form == b.tokens[t].form);
        CHECK(a.tokens[t].pos == b.tokens[t].pos);
        CHECK(a.tokens[t].lemma == b.tokens[t].lemma);
      }
      CHECK(a.frames == b.frames);
      CHECK(a.labeled_mask == b.labeled_mask);
    }
  }
}

TEST_CASE("load_embeddings: basic, duplicate override, dimension error") {
  std::istringstream one("a 1.0 2.0\n");
  EmbeddingTable t = load_embeddings(one, 2);
  REQUIRE(t.entries.count("a") == 1);
  CHECK(t.entries.at("a") == std::vector<double>{1.0, 2.0});
  CHECK_FALSE(t.trainable);

  std::istringstream dup("a 1.0 2.0\na 3.0 4.0\n");
  EmbeddingTable t2 = load_embeddings(dup, 2);
  CHECK(t2.entries.at("a") == std::vector<double>{3.0, 4.0});

  std::istringstream bad("a 1.0\n");
  CHECK_THROWS_WITH_AS(load_embeddings(bad, 2), doctest::Contains("line 1"), Error);

  std::istringstream nonnum("a 1.0 zz\n");
  CHECK_THROWS_AS(load_embeddings(nonnum, 2), Error);
}

TEST_CASE("load_embeddings skips a count/dim header") {
  std::istringstream in("2 3\nfoo 1 2 3\nbar 4 5 6\n");
  EmbeddingTable t = load_embeddings(in, 3);
  CHECK(t.entries.size() == 2);
  std::istringstream wrong("2 4\nfoo 1 2 3\n");
  CHECK_THROWS_AS(load_embeddings(wrong, 3), Error);
}

TEST_CASE("build_vocab honors min_count and collects specials") {
  Corpus c;
  Sentence s;
  const char* forms[] = {"a", "b", "a"};
  for (int i = 0; i < 3; ++i) s.tokens.push_back(Token{i + 1, forms[i], "", "", {}});
  c.sentences.push_back(s);
  VocabSet vs = build_vocab(c, 2);
  CHECK(vs.words.size() == 3);  // UNK, PAD, "a"
  CHECK(vs.words.contains("a"));
  CHECK_FALSE(vs.words.contains("b"));
  CHECK(vs.words.id("b") == vs.words.unk_id());
}

TEST_CASE("role vocab over the German sentence is NULL + three roles") {
  Corpus c = read_conll_string(kGermanConll);
  VocabSet vs = build_vocab(c, 1);
  CHECK(vs.roles.size() == 4);
  CHECK(vs.roles.id(kNullRole) == 0);
  CHECK(vs.roles.contains("A0"));
  CHECK(vs.roles.contains("A1"));
  CHECK(vs.roles.contains("AM-ADJ"));
}

TEST_CASE("char vocab covers observed characters") {
  Corpus c;
  Sentence s;
  s.tokens.push_back(Token{1, "ab", "", "", {}});
  s.tokens.push_back(Token{2, "ba", "", "", {}});
  c.sentences.push_back(s);
  VocabSet vs = build_vocab(c, 1);
  CHECK(vs.chars.size() == 4);  // UNK, PAD, a, b
  CHECK(vs.chars.contains("a"));
  CHECK(vs.chars.contains("b"));
}

TEST_CASE("vocab ids are stable across rebuilds") {
  Rng rng(5);
  Corpus c = testutil::random_corpus(rng, 10);
  VocabSet v1 = build_vocab(c, 1);
  VocabSet v2 = build_vocab(c, 1);
  CHECK(v1.words.items() == v2.words.items());
  CHECK(v1.chars.items() == v2.chars.items());
  CHECK(v1.roles.items() == v2.roles.items());
  CHECK(v1.senses.items() == v2.senses.items());
}

}  // TEST_SUITE
