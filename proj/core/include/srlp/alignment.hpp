#ifndef SRLP_ALIGNMENT_HPP
#define SRLP_ALIGNMENT_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace srlp {

// Links from one aligner direction, 1-based in memory. A source index may
// align to several target indices here; one-to-one-ness comes from the
// intersection step.
struct DirectionalAlignment {
  std::set<std::pair<int, int>> links;  // (src_index, tgt_index)
};

// The injective partial map a_j: target index -> source index. Absent keys
// mean a missing alignment (a_j = 0).
struct OneToOneAlignment {
  std::map<int, int> a;  // tgt -> src
  int src_len = 0;
  int tgt_len = 0;

  int src_of(int tgt_index) const {  // 0 = missing
    auto it = a.find(tgt_index);
    return it != a.end() ? it->second : 0;
  }
  // Target position aligned to a given source index, 0 if none.
  int tgt_of(int src_index) const {
    for (const auto& [t, s] : a)
      if (s == src_index) return t;
    return 0;
  }
};

// Parses one pharaoh line ("i-j" pairs, 0-based on disk, source index first)
// into 1-based links. Out-of-range indices and malformed pairs are errors.
DirectionalAlignment parse_pharaoh(const std::string& line, int src_len, int tgt_len);

// Intersection of the two directions. If the raw intersection is not
// injective both ways, every link sharing a source or target index with
// another intersected link is dropped.
OneToOneAlignment intersect(const DirectionalAlignment& fwd,
                            const DirectionalAlignment& rev, int src_len,
                            int tgt_len);

// Fraction of target tokens with a non-missing alignment.
double density(const OneToOneAlignment& alignment);

// Serializes one-to-one links back to a 0-based pharaoh line.
std::string to_pharaoh(const OneToOneAlignment& alignment);

}  // namespace srlp

#endif
