#ifndef SRLP_MORPHOLOGY_HPP
#define SRLP_MORPHOLOGY_HPP

#include <iosfwd>
#include <set>
#include <string>
#include <unordered_map>

namespace srlp {

// One surface-form stem per word. Direct entries cover in-vocabulary words;
// out-of-vocabulary words go through fixed-affix stripping against the
// prefix/suffix alphabets. The same structure serves unsupervised stems
// (from labeled segmentations) and supervised lemmas (two-column files with
// empty affix sets).
struct StemLexicon {
  std::set<std::string> prefixes;
  std::set<std::string> suffixes;
  std::unordered_map<std::string, std::string> known_stems;
};

// Compiles a labeled segmentation stream: "word<TAB>morph1/TAG1 morph2/TAG2"
// with tags PRE, STM, SUF. The stem of a word is its first maximal run of
// STM morphs; PRE/SUF morphs feed the affix alphabets. Words without any STM
// tag stem to themselves (with a warning on the given stream).
StemLexicon compile_lexicon(std::istream& in, std::ostream* warnings = nullptr);
StemLexicon compile_lexicon_file(const std::string& path, std::ostream* warnings = nullptr);

// Compiles a two-column "word<TAB>lemma" file (supervised lemma mode).
StemLexicon compile_lemma_lexicon(std::istream& in);
StemLexicon compile_lemma_lexicon_file(const std::string& path);

// Total and deterministic. In-vocabulary words return their direct entry;
// otherwise the single longest matching prefix is stripped, then the single
// longest matching suffix, each only if at least one character remains.
std::string stem(const StemLexicon& lexicon, const std::string& word);

// Compiled-lexicon JSON ({"prefixes": [...], "suffixes": [...], "stems": {...}}),
// the on-disk format produced by `stem-compile` and embedded in model sidecars.
std::string serialize_lexicon(const StemLexicon& lexicon);
StemLexicon parse_lexicon(const std::string& json_text);
StemLexicon load_lexicon_file(const std::string& path);

}  // namespace srlp

#endif
