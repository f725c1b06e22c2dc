#include "srlp/digest.hpp"

#include "srlp/error.hpp"
#include "srlp/text.hpp"

namespace srlp {

std::string fnv1a64_hex(std::string_view bytes) {
  return detail::strf("%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
}

std::string file_digest(const std::string& path) {
  return "fnv1a64:" + fnv1a64_hex(read_file(path));
}

}  // namespace srlp
