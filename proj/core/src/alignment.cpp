#include "srlp/alignment.hpp"

#include <algorithm>
#include <cstdlib>

#include "srlp/error.hpp"
#include "srlp/text.hpp"

namespace srlp {

namespace {

bool parse_index(const std::string& s, int* out) {
  if (s.empty()) return false;
  long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
    if (v > 1000000000L) return false;
  }
  *out = static_cast<int>(v);
  return true;
}

}  // namespace

DirectionalAlignment parse_pharaoh(const std::string& line, int src_len, int tgt_len) {
  DirectionalAlignment out;
  for (const std::string& tok : split_ws(line)) {
    std::size_t dash = tok.find('-');
    int s = 0, t = 0;
    if (dash == std::string::npos || !parse_index(tok.substr(0, dash), &s) ||
        !parse_index(tok.substr(dash + 1), &t))
      fail("malformed alignment pair \"%s\"", tok.c_str());
    if (s >= src_len)
      fail("alignment pair \"%s\": source index %d >= length %d", tok.c_str(), s, src_len);
    if (t >= tgt_len)
      fail("alignment pair \"%s\": target index %d >= length %d", tok.c_str(), t, tgt_len);
    out.links.emplace(s + 1, t + 1);  // 0-based on disk, 1-based in memory
  }
  return out;
}

OneToOneAlignment intersect(const DirectionalAlignment& fwd,
                            const DirectionalAlignment& rev, int src_len,
                            int tgt_len) {
  std::set<std::pair<int, int>> common;
  for (const auto& link : fwd.links)
    if (rev.links.count(link)) common.insert(link);

  // Count per-row/per-column occurrences; a link survives only if it is the
  // sole user of both its source and its target index.
  std::map<int, int> src_uses, tgt_uses;
  for (const auto& [s, t] : common) {
    ++src_uses[s];
    ++tgt_uses[t];
  }
  OneToOneAlignment out;
  out.src_len = src_len;
  out.tgt_len = tgt_len;
  for (const auto& [s, t] : common)
    if (src_uses[s] == 1 && tgt_uses[t] == 1) out.a[t] = s;
  return out;
}

double density(const OneToOneAlignment& alignment) {
  if (alignment.tgt_len < 1) fail("density: degenerate sentence (tgt_len = 0)");
  // Exact by construction: an integer count over an integer length.
  return static_cast<double>(alignment.a.size()) /
         static_cast<double>(alignment.tgt_len);
}

std::string to_pharaoh(const OneToOneAlignment& alignment) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [t, s] : alignment.a) pairs.emplace_back(s, t);
  std::sort(pairs.begin(), pairs.end());
  std::string out;
  for (const auto& [s, t] : pairs) {
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(s - 1);
    out.push_back('-');
    out += std::to_string(t - 1);
  }
  return out;
}

}  // namespace srlp
