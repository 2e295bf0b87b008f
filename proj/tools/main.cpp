#include "ietk/cli.hpp"

int main(int argc, char** argv) { return ietk::cli_main(argc, argv); }
