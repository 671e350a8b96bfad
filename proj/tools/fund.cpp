#include "fund/cli.hpp"

int main(int argc, char** argv) { return fund::cli::run(argc, argv); }
