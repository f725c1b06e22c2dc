#ifndef SRLP_ERROR_HPP
#define SRLP_ERROR_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace srlp {

// All recoverable data/usage errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
};

namespace detail {
template <typename... Args>
std::string strf(const char* fmt, Args... args) {
  int n = std::snprintf(nullptr, 0, fmt, args...);
  std::string out(n > 0 ? static_cast<size_t>(n) : 0, '\0');
  if (n > 0) std::snprintf(out.data(), out.size() + 1, fmt, args...);
  return out;
}
}  // namespace detail

[[noreturn]] inline void fail(const char* msg) { throw Error(msg); }

template <typename... Args>
[[noreturn]] void fail(const char* fmt, Args... args) {
  throw Error(detail::strf(fmt, args...));
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

}  // namespace srlp

#endif
