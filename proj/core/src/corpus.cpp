#include "srlp/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "srlp/error.hpp"
#include "srlp/text.hpp"

namespace srlp {

namespace {

constexpr int kFixedCols = 14;  // ID..PRED; APREDs follow
constexpr const char* kEmpty = "_";

bool has_ascii_space(const std::string& s) {
  return s.find_first_of(" \t\n\r\v\f") != std::string::npos;
}

std::string opt_col(const std::string& s) { return s == kEmpty ? "" : s; }

}  // namespace

// --- domain types ------------------------------------------------------------

const SemanticDependency* PredicateFrame::arg_at(int token_index) const {
  for (const auto& d : args)
    if (d.arg_index == token_index) return &d;
  return nullptr;
}

const PredicateFrame* Sentence::frame_at(int position) const {
  for (const auto& f : frames)
    if (f.position == position) return &f;
  return nullptr;
}

void Sentence::check() const {
  int n = size();
  for (int i = 0; i < n; ++i) {
    const Token& t = tokens[static_cast<size_t>(i)];
    if (t.index != i + 1)
      fail("token %d: index %d not contiguous 1..n", i + 1, t.index);
    if (t.form.empty()) fail("token %d: empty form", i + 1);
    if (has_ascii_space(t.form)) fail("token %d: form contains whitespace", i + 1);
  }
  for (const auto& f : frames) {
    if (f.position < 1 || f.position > n)
      fail("frame position %d out of range 1..%d", f.position, n);
    for (const auto& d : f.args) {
      if (d.arg_index < 1 || d.arg_index > n)
        fail("argument index %d out of range 1..%d", d.arg_index, n);
      if (d.role == kNullRole)
        fail("stored role must never be the NULL label");
      int dup = 0;
      for (const auto& d2 : f.args)
        if (d2.arg_index == d.arg_index) ++dup;
      if (dup > 1) fail("frame at %d: duplicate argument index %d", f.position, d.arg_index);
    }
  }
  if (!labeled_mask.empty() && static_cast<int>(labeled_mask.size()) != n)
    fail("labeled_mask has %zu entries for %d tokens", labeled_mask.size(), n);
}

std::vector<double> EmbeddingTable::pretrained_vector(const std::string& form) const {
  auto it = entries.find(lowercase_ascii(form));
  if (it != entries.end()) return it->second;
  return std::vector<double>(static_cast<size_t>(dim), 0.0);
}

// --- Vocab -------------------------------------------------------------------

Vocab Vocab::with_unk_pad() {
  Vocab v;
  v.add(kUnkSymbol);
  v.add(kPadSymbol);
  v.unk_id_ = 0;
  return v;
}

Vocab Vocab::with_null() {
  Vocab v;
  v.add(kNullRole);
  return v;
}

Vocab Vocab::from_items(std::vector<std::string> items, int unk_id) {
  Vocab v;
  for (auto& it : items) v.add(it);
  v.unk_id_ = unk_id;
  return v;
}

int Vocab::add(const std::string& item) {
  auto it = index_.find(item);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(items_.size());
  items_.push_back(item);
  index_.emplace(item, id);
  return id;
}

int Vocab::id(const std::string& item) const {
  auto it = index_.find(item);
  return it != index_.end() ? it->second : unk_id_;
}

bool Vocab::contains(const std::string& item) const { return index_.count(item) > 0; }

const std::string& Vocab::item(int id) const {
  if (id < 0 || id >= size()) fail("vocab id %d out of range (size %d)", id, size());
  return items_[static_cast<size_t>(id)];
}

// --- CoNLL reader --------------------------------------------------------------

namespace {

struct RawLine {
  int line_no;
  std::vector<std::string> cols;
};

// Mask encoding in the FEAT column: "al=1" for trusted (aligned) tokens,
// "al=0" for the rest. A sentence where every token carries one of the two
// markers round-trips its labeled_mask.
bool decode_mask_cell(const std::string& feat, bool* bit) {
  if (feat == "al=1") {
    *bit = true;
    return true;
  }
  if (feat == "al=0") {
    *bit = false;
    return true;
  }
  return false;
}

Sentence finish_sentence(const std::vector<RawLine>& lines, int sent_no) {
  Sentence sent;
  size_t ncols = lines.front().cols.size();
  std::vector<int> pred_positions;
  for (size_t i = 0; i < lines.size(); ++i) {
    const RawLine& rl = lines[i];
    if (rl.cols.size() != ncols)
      fail("line %d: %zu columns, but sentence %d started with %zu", rl.line_no,
           rl.cols.size(), sent_no, ncols);
    for (const auto& c : rl.cols)
      if (c.empty()) fail("line %d: empty column", rl.line_no);

    Token tok;
    tok.index = static_cast<int>(i) + 1;
    tok.form = rl.cols[1];
    if (has_ascii_space(tok.form)) fail("line %d: form contains whitespace", rl.line_no);
    tok.lemma = opt_col(rl.cols[3]);
    tok.pos = opt_col(rl.cols[5]);
    tok.raw.assign(rl.cols.begin(), rl.cols.begin() + 12);
    sent.tokens.push_back(std::move(tok));

    const std::string& fillpred = rl.cols[12];
    const std::string& pred = rl.cols[13];
    if (fillpred == "Y") {
      if (pred == kEmpty)
        fail("line %d: FILLPRED is Y but PRED is empty", rl.line_no);
      pred_positions.push_back(static_cast<int>(i) + 1);
      sent.frames.push_back(PredicateFrame{static_cast<int>(i) + 1, pred, {}});
    } else if (fillpred == kEmpty) {
      if (pred != kEmpty)
        fail("line %d: PRED set without FILLPRED", rl.line_no);
    } else {
      fail("line %d: FILLPRED must be Y or _, got \"%s\"", rl.line_no, fillpred.c_str());
    }
  }

  size_t napred = ncols - kFixedCols;
  if (napred != pred_positions.size())
    fail("sentence %d: %zu APRED columns for %zu predicates", sent_no, napred,
         pred_positions.size());

  for (size_t i = 0; i < lines.size(); ++i) {
    const RawLine& rl = lines[i];
    for (size_t p = 0; p < napred; ++p) {
      const std::string& cell = rl.cols[kFixedCols + p];
      if (cell == kEmpty) continue;
      if (cell == kNullRole)
        fail("line %d: the NULL role must not be stored in APRED columns", rl.line_no);
      sent.frames[p].args.push_back(
          SemanticDependency{static_cast<int>(i) + 1, cell});
    }
  }

  // Recover the labeled mask if every token carries a marker.
  std::vector<bool> mask(lines.size());
  bool all_marked = true;
  for (size_t i = 0; i < lines.size(); ++i) {
    bool bit = false;
    if (!decode_mask_cell(lines[i].cols[6], &bit)) {
      all_marked = false;
      break;
    }
    mask[i] = bit;
  }
  if (all_marked) sent.labeled_mask = std::move(mask);
  return sent;
}

}  // namespace

Corpus read_conll(std::istream& in) {
  Corpus corpus;
  std::vector<RawLine> pending;
  std::string line;
  int line_no = 0;
  auto flush = [&]() {
    if (pending.empty()) return;
    corpus.sentences.push_back(
        finish_sentence(pending, static_cast<int>(corpus.sentences.size()) + 1));
    pending.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() < kFixedCols)
      fail("line %d: expected >= %d tab-separated columns, got %zu", line_no,
           kFixedCols, cols.size());
    pending.push_back(RawLine{line_no, std::move(cols)});
  }
  flush();
  return corpus;
}

Corpus read_conll_string(const std::string& text) {
  std::istringstream in(text);
  return read_conll(in);
}

Corpus read_conll_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file: %s", path.c_str());
  return read_conll(in);
}

// --- CoNLL writer --------------------------------------------------------------

namespace {

void check_label(const std::string& label, const char* what) {
  if (label.find('\t') != std::string::npos || label.find('\n') != std::string::npos)
    fail("%s contains a tab or newline: \"%s\"", what, label.c_str());
}

}  // namespace

std::string write_conll(const Corpus& corpus) {
  std::string out;
  for (size_t si = 0; si < corpus.sentences.size(); ++si) {
    const Sentence& sent = corpus.sentences[si];
    sent.check();

    std::vector<const PredicateFrame*> frames;
    for (const auto& f : sent.frames) frames.push_back(&f);
    std::stable_sort(frames.begin(), frames.end(),
                     [](const PredicateFrame* a, const PredicateFrame* b) {
                       return a->position < b->position;
                     });
    for (size_t p = 1; p < frames.size(); ++p)
      if (frames[p]->position == frames[p - 1]->position)
        fail("sentence %zu: two frames at position %d cannot be serialized", si + 1,
             frames[p]->position);

    for (int i = 1; i <= sent.size(); ++i) {
      const Token& tok = sent.tokens[static_cast<size_t>(i - 1)];
      std::vector<std::string> cols(12, kEmpty);
      if (tok.raw.size() == 12) cols.assign(tok.raw.begin(), tok.raw.end());
      else cols[0] = std::to_string(i);
      cols[1] = tok.form;
      cols[3] = tok.lemma.empty() ? kEmpty : tok.lemma;
      cols[5] = tok.pos.empty() ? kEmpty : tok.pos;
      if (sent.has_mask())
        cols[6] = sent.labeled_mask[static_cast<size_t>(i - 1)] ? "al=1" : "al=0";

      const PredicateFrame* here = nullptr;
      for (const PredicateFrame* f : frames)
        if (f->position == i) here = f;
      if (here) {
        check_label(here->sense, "sense");
        cols.push_back("Y");
        cols.push_back(here->sense);
      } else {
        cols.push_back(kEmpty);
        cols.push_back(kEmpty);
      }
      for (const PredicateFrame* f : frames) {
        const SemanticDependency* d = f->arg_at(i);
        if (d) {
          check_label(d->role, "role");
          cols.push_back(d->role);
        } else {
          cols.push_back(kEmpty);
        }
      }

      for (size_t c = 0; c < cols.size(); ++c) {
        if (c) out.push_back('\t');
        out += cols[c];
      }
      out.push_back('\n');
    }
    out.push_back('\n');
  }
  return out;
}

void write_conll_file(const Corpus& corpus, const std::string& path) {
  write_file(path, write_conll(corpus));
}

// --- embeddings ----------------------------------------------------------------

namespace {

bool parse_double_strict(const std::string& s, double* out) {
  const char* p = s.c_str();
  char* end = nullptr;
  *out = std::strtod(p, &end);
  return end == p + s.size() && !s.empty();
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

EmbeddingTable load_embeddings(std::istream& in, int expected_dim) {
  if (expected_dim < 1) fail("embedding dim must be >= 1, got %d", expected_dim);
  EmbeddingTable table;
  table.dim = expected_dim;
  table.trainable = false;

  std::string line;
  int line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;
    if (first_content) {
      first_content = false;
      // optional "count dim" header
      if (toks.size() == 2 && all_digits(toks[0]) && all_digits(toks[1])) {
        if (std::atoi(toks[1].c_str()) != expected_dim)
          fail("line %d: header declares dim %s, expected %d", line_no,
               toks[1].c_str(), expected_dim);
        continue;
      }
    }
    if (static_cast<int>(toks.size()) - 1 != expected_dim)
      fail("line %d: expected %d components, got %zu", line_no, expected_dim,
           toks.size() - 1);
    std::vector<double> vec(static_cast<size_t>(expected_dim));
    for (int d = 0; d < expected_dim; ++d) {
      double v = 0;
      if (!parse_double_strict(toks[static_cast<size_t>(d) + 1], &v) ||
          !std::isfinite(v))
        fail("line %d: non-numeric component \"%s\"", line_no,
             toks[static_cast<size_t>(d) + 1].c_str());
      vec[static_cast<size_t>(d)] = v;
    }
    table.entries[toks[0]] = std::move(vec);  // later duplicates win
  }
  return table;
}

EmbeddingTable load_embeddings_file(const std::string& path, int expected_dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file: %s", path.c_str());
  return load_embeddings(in, expected_dim);
}

// --- vocabularies ----------------------------------------------------------------

namespace {

// Deterministic id order: frequency descending, then lexicographic.
std::vector<std::string> ordered_by_freq(const std::map<std::string, long>& counts,
                                         long min_count) {
  std::vector<std::pair<std::string, long>> items;
  for (const auto& [k, c] : counts)
    if (c >= min_count) items.emplace_back(k, c);
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  out.reserve(items.size());
  for (auto& [k, c] : items) out.push_back(k);
  return out;
}

}  // namespace

VocabSet build_vocab(const Corpus& corpus, int min_count) {
  if (min_count < 1) fail("min_count must be >= 1, got %d", min_count);
  std::map<std::string, long> word_counts, char_counts, role_counts, sense_counts;
  for (const auto& sent : corpus.sentences) {
    for (const auto& tok : sent.tokens) {
      ++word_counts[tok.form];
      for (const auto& ch : utf8_chars(tok.form)) ++char_counts[ch];
    }
    for (const auto& f : sent.frames) {
      ++sense_counts[f.sense];
      for (const auto& d : f.args) ++role_counts[d.role];
    }
  }
  VocabSet vs;
  vs.words = Vocab::with_unk_pad();
  for (const auto& w : ordered_by_freq(word_counts, min_count)) vs.words.add(w);
  vs.chars = Vocab::with_unk_pad();
  for (const auto& c : ordered_by_freq(char_counts, 1)) vs.chars.add(c);
  vs.roles = Vocab::with_null();
  for (const auto& r : ordered_by_freq(role_counts, 1)) vs.roles.add(r);
  for (const auto& s : ordered_by_freq(sense_counts, 1)) vs.senses.add(s);
  return vs;
}

std::vector<std::vector<std::string>> read_token_lines(std::istream& in) {
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(split_ws(line));
  }
  return out;
}

}  // namespace srlp
