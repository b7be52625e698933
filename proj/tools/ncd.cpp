#include "ncd/cli.hpp"

int main(int argc, char **argv) { return ncd::cli::main(argc, argv); }
