#include "ssprobe/cli.hpp"

int main(int argc, char** argv) { return ssprobe::cli::run(argc, argv); }
