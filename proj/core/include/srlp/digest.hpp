#ifndef SRLP_DIGEST_HPP
#define SRLP_DIGEST_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace srlp {

// FNV-1a 64-bit. Used for provenance records and checkpoint/sidecar pairing;
// not a cryptographic hash.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes);

// Digest of a file's contents, formatted "fnv1a64:<16 hex digits>".
// Throws Error if the file cannot be read.
std::string file_digest(const std::string& path);

}  // namespace srlp

#endif
