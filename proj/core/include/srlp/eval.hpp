#ifndef SRLP_EVAL_HPP
#define SRLP_EVAL_HPP

#include <map>
#include <string>

#include "srlp/corpus.hpp"

namespace srlp {

enum class SenseMode { kGold, kAuto };

struct RoleCounts {
  long n_gold = 0;
  long n_pred = 0;
  long n_correct = 0;
};

struct Scores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  long n_gold = 0;
  long n_pred = 0;
  long n_correct = 0;
  std::map<std::string, RoleCounts> per_role;  // argument roles + "SENSE"
};

// Labeled precision/recall/F over scored items: one item per argument edge
// (predicate position, argument position, role) and one item per predicate
// for its sense. In gold mode predicted senses are replaced by gold senses
// before counting, so any predicted frame at a gold predicate position scores
// its sense item correct. 0/0 ratios are defined as 0.
Scores score(const Corpus& gold, const Corpus& predicted, SenseMode mode);

struct Report {
  Scores gold_sense;
  Scores auto_sense;
};

// "61.0 (57.0)" from F1 fractions 0.61034 / 0.57012.
std::string report_line(const Report& report);
std::string report_json(const Report& report);

}  // namespace srlp

#endif
