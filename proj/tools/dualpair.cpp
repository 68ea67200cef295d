#include "dualpair/cli.hpp"

int main(int argc, char** argv) { return dualpair::cli::main(argc, argv); }
