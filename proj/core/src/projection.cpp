#include "srlp/projection.hpp"

#include <algorithm>
#include <set>

#include "srlp/error.hpp"

namespace srlp {

Sentence project_sentence(const Sentence& src, const OneToOneAlignment& align,
                          const std::vector<std::string>& tgt_tokens) {
  if (align.src_len != src.size())
    fail("projection: alignment src_len %d != source length %d", align.src_len,
         src.size());
  if (align.tgt_len != static_cast<int>(tgt_tokens.size()))
    fail("projection: alignment tgt_len %d != target length %zu", align.tgt_len,
         tgt_tokens.size());

  Sentence out;
  for (size_t i = 0; i < tgt_tokens.size(); ++i)
    out.tokens.push_back(Token{static_cast<int>(i) + 1, tgt_tokens[i], "", "", {}});
  out.labeled_mask.assign(tgt_tokens.size(), false);
  for (const auto& [t, s] : align.a)
    out.labeled_mask[static_cast<size_t>(t - 1)] = true;

  for (const auto& src_frame : src.frames) {
    int p = align.tgt_of(src_frame.position);
    if (p == 0) continue;  // unaligned predicate: frame dropped entirely
    PredicateFrame tgt_frame{p, src_frame.sense, {}};
    for (const auto& dep : src_frame.args) {
      int m = align.tgt_of(dep.arg_index);
      if (m == 0) continue;  // unaligned argument: this dependency dropped
      tgt_frame.args.push_back(SemanticDependency{m, dep.role});
    }
    out.frames.push_back(std::move(tgt_frame));
  }
  std::sort(out.frames.begin(), out.frames.end(),
            [](const PredicateFrame& a, const PredicateFrame& b) {
              return a.position < b.position;
            });
  return out;
}

std::vector<ProjectedPair> filter_by_density(std::vector<ProjectedPair> pairs,
                                             const Rational& threshold) {
  std::vector<ProjectedPair> kept;
  for (auto& pair : pairs) {
    if (pair.alignment.tgt_len < 1)
      fail("density: degenerate sentence (tgt_len = 0)");
    Rational d = Rational::of(static_cast<std::int64_t>(pair.alignment.a.size()),
                              pair.alignment.tgt_len);
    if (threshold <= d) kept.push_back(std::move(pair));
  }
  return kept;
}

ProjectionStats corpus_stats(const Corpus& corpus) {
  ProjectionStats stats;
  std::set<std::string> types;
  for (const auto& sent : corpus.sentences) {
    ++stats.sentences;
    stats.tokens += sent.size();
    stats.predicates += static_cast<long>(sent.frames.size());
    for (const auto& tok : sent.tokens) types.insert(tok.form);
  }
  stats.types = static_cast<long>(types.size());
  return stats;
}

ProjectionResult project_corpus(const Corpus& src,
                                const std::vector<std::vector<std::string>>& tgt_sentences,
                                const std::vector<std::string>& fwd_lines,
                                const std::vector<std::string>& rev_lines,
                                const Rational& threshold) {
  size_t n = src.sentences.size();
  if (tgt_sentences.size() != n)
    fail("parallel streams diverge at index %zu: %zu source sentences, %zu target lines",
         std::min(n, tgt_sentences.size()), n, tgt_sentences.size());
  if (fwd_lines.size() != n)
    fail("parallel streams diverge at index %zu: %zu source sentences, %zu forward alignment lines",
         std::min(n, fwd_lines.size()), n, fwd_lines.size());
  if (rev_lines.size() != n)
    fail("parallel streams diverge at index %zu: %zu source sentences, %zu reverse alignment lines",
         std::min(n, rev_lines.size()), n, rev_lines.size());

  std::vector<ProjectedPair> pairs;
  for (size_t i = 0; i < n; ++i) {
    const Sentence& s = src.sentences[i];
    int src_len = s.size();
    int tgt_len = static_cast<int>(tgt_sentences[i].size());
    DirectionalAlignment fwd = parse_pharaoh(fwd_lines[i], src_len, tgt_len);
    // The reverse file carries target index first; flip to (src, tgt).
    DirectionalAlignment rev_raw = parse_pharaoh(rev_lines[i], tgt_len, src_len);
    DirectionalAlignment rev;
    for (const auto& [t, s2] : rev_raw.links) rev.links.emplace(s2, t);
    OneToOneAlignment a = intersect(fwd, rev, src_len, tgt_len);
    pairs.push_back(ProjectedPair{a, project_sentence(s, a, tgt_sentences[i])});
  }
  pairs = filter_by_density(std::move(pairs), threshold);

  ProjectionResult result;
  for (auto& pair : pairs) result.corpus.sentences.push_back(std::move(pair.sentence));
  result.stats = corpus_stats(result.corpus);
  return result;
}

}  // namespace srlp
