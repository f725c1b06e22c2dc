#ifndef SRLP_CORPUS_HPP
#define SRLP_CORPUS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace srlp {

// The distinguished non-argument class. Never stored in a corpus; it exists
// only in the role vocabulary and classifier output space.
inline constexpr const char* kNullRole = "NULL";

struct Token {
  int index = 0;           // 1-based position within the sentence
  std::string form;
  std::string pos;         // PPOS column; empty means absent
  std::string lemma;       // PLEMMA column; empty means absent
  // The 12 leading CoNLL columns as read from disk, preserved verbatim for
  // round-tripping. Empty for tokens built in memory. Columns FORM, PLEMMA
  // and PPOS are re-emitted from the structured fields above.
  std::vector<std::string> raw;

  bool operator==(const Token&) const = default;
};

struct SemanticDependency {
  int arg_index = 0;       // 1-based token index of the argument
  std::string role;

  bool operator==(const SemanticDependency&) const = default;
};

struct PredicateFrame {
  int position = 0;        // 1-based token index of the predicate
  std::string sense;       // universal sense label, e.g. "congratulate.01"
  std::vector<SemanticDependency> args;

  const SemanticDependency* arg_at(int token_index) const;
  bool operator==(const PredicateFrame&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<PredicateFrame> frames;
  // Marks tokens whose (possibly absent) label is trusted. Projected corpora
  // set it to the aligned positions; supervised corpora leave it empty,
  // which downstream code treats as all-true.
  std::vector<bool> labeled_mask;

  int size() const { return static_cast<int>(tokens.size()); }
  bool has_mask() const { return !labeled_mask.empty(); }
  bool labeled(int index1) const {  // 1-based
    return labeled_mask.empty() || labeled_mask[static_cast<size_t>(index1 - 1)];
  }
  const PredicateFrame* frame_at(int position) const;
  void check() const;  // throws Error on any violated invariant

  bool operator==(const Sentence&) const = default;
};

struct Corpus {
  std::vector<Sentence> sentences;

  bool operator==(const Corpus&) const = default;
};

struct EmbeddingTable {
  int dim = 0;
  std::unordered_map<std::string, std::vector<double>> entries;
  bool trainable = false;

  // Lookup used for the fixed pre-trained channel: lowercased form,
  // zero vector when absent.
  std::vector<double> pretrained_vector(const std::string& form) const;
};

inline constexpr const char* kUnkSymbol = "<UNK>";
inline constexpr const char* kPadSymbol = "<PAD>";

class Vocab {
 public:
  Vocab() = default;

  static Vocab with_unk_pad();   // UNK at id 0, PAD at id 1
  static Vocab with_null();      // NULL at id 0 (role vocabularies)
  // Rebuild from a serialized item list. unk_id = -1 when the vocab has
  // no UNK fallback.
  static Vocab from_items(std::vector<std::string> items, int unk_id);

  int add(const std::string& item);        // returns the existing id if present
  // Dense id; falls back to unk_id() when absent, -1 if there is no UNK.
  int id(const std::string& item) const;
  bool contains(const std::string& item) const;
  const std::string& item(int id) const;
  int size() const { return static_cast<int>(items_.size()); }
  const std::vector<std::string>& items() const { return items_; }
  int unk_id() const { return unk_id_; }

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, int> index_;
  int unk_id_ = -1;
};

struct VocabSet {
  Vocab words;    // UNK/PAD + forms with frequency >= min_count
  Vocab chars;    // UNK/PAD + every observed character (code point)
  Vocab roles;    // NULL at id 0, then observed roles
  Vocab senses;   // observed senses (no specials)
};

// --- I/O -------------------------------------------------------------------

// Reads a CoNLL-2009-style corpus (tab-separated, >= 14 columns, blank-line
// sentence separator). FORM col 2, PLEMMA col 4, PPOS col 6, FILLPRED col 13,
// PRED col 14, APREDs col 15+. Other columns pass through opaquely.
Corpus read_conll(std::istream& in);
Corpus read_conll_string(const std::string& text);
Corpus read_conll_file(const std::string& path);

std::string write_conll(const Corpus& corpus);
void write_conll_file(const Corpus& corpus, const std::string& path);

// Plain-text embeddings, "word v1 ... vd" per line; an optional "count dim"
// header line is detected and skipped. Later duplicates win.
EmbeddingTable load_embeddings(std::istream& in, int expected_dim);
EmbeddingTable load_embeddings_file(const std::string& path, int expected_dim);

VocabSet build_vocab(const Corpus& corpus, int min_count = 2);

// Whitespace-tokenized sentences, one per line (projection targets).
std::vector<std::vector<std::string>> read_token_lines(std::istream& in);

}  // namespace srlp

#endif
