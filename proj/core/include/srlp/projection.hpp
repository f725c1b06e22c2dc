#ifndef SRLP_PROJECTION_HPP
#define SRLP_PROJECTION_HPP

#include <string>
#include <vector>

#include "srlp/alignment.hpp"
#include "srlp/corpus.hpp"
#include "srlp/rational.hpp"

namespace srlp {

struct ProjectionStats {
  long sentences = 0;
  long tokens = 0;
  long types = 0;       // distinct surface forms
  long predicates = 0;  // frame instances

  bool operator==(const ProjectionStats&) const = default;
};

// Transfers frames and dependencies from an annotated source sentence to the
// target side of a one-to-one alignment. A source frame survives iff its
// predicate token is aligned; each dependency additionally needs its argument
// token aligned. Senses are copied verbatim. labeled_mask marks exactly the
// aligned target positions.
Sentence project_sentence(const Sentence& src, const OneToOneAlignment& align,
                          const std::vector<std::string>& tgt_tokens);

// Keeps sentences whose alignment density is >= threshold (inclusive), in
// order. The comparison is exact: count/tgt_len vs. the threshold rational.
struct ProjectedPair {
  OneToOneAlignment alignment;
  Sentence sentence;
};
std::vector<ProjectedPair> filter_by_density(std::vector<ProjectedPair> pairs,
                                             const Rational& threshold);

ProjectionStats corpus_stats(const Corpus& corpus);

// Full pipeline over parallel streams: parse both alignment directions,
// intersect, project each pair, filter by density. The reverse-direction
// lines carry target index first and are flipped here.
struct ProjectionResult {
  Corpus corpus;
  ProjectionStats stats;
};
ProjectionResult project_corpus(const Corpus& src,
                                const std::vector<std::vector<std::string>>& tgt_sentences,
                                const std::vector<std::string>& fwd_lines,
                                const std::vector<std::string>& rev_lines,
                                const Rational& threshold);

}  // namespace srlp

#endif
