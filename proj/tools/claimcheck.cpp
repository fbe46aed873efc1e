#include "claimcheck/cli.hpp"

int main(int argc, char** argv) { return claimcheck::cli::main(argc, argv); }
