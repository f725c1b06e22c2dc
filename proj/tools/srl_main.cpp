#include "srlp/cli.hpp"

int main(int argc, char** argv) { return srlp::cli::run(argc, argv); }
