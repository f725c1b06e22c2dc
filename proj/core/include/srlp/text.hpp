#ifndef SRLP_TEXT_HPP
#define SRLP_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace srlp {

std::vector<std::string> split(std::string_view s, char sep);

// Splits on runs of spaces/tabs, dropping empty fields.
std::vector<std::string> split_ws(std::string_view s);

// Decodes UTF-8 into code points. Invalid bytes are passed through as their
// byte value so the function stays total over arbitrary input.
std::vector<std::uint32_t> utf8_codepoints(std::string_view s);

// Encodes a single code point back to UTF-8.
std::string utf8_encode(std::uint32_t cp);

// Per-character UTF-8 strings of a word, in order.
std::vector<std::string> utf8_chars(std::string_view s);

std::string lowercase_ascii(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace srlp

#endif
