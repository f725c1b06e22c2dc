#ifndef SRLP_CLI_HPP
#define SRLP_CLI_HPP

#include <string>
#include <vector>

namespace srlp::cli {

// Subcommand front-end: intersect | project | stats | stem-compile |
// train-args | train-senses | train-predid | tag | score.
// Exit codes: 0 success, 1 data error, 2 usage error. Every run emits a
// one-line JSON provenance record (config hash, seed, input digests) on
// stderr, or to the --prov file when given.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args without program name

}  // namespace srlp::cli

#endif
