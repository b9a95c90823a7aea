#include "laglab/cli.hpp"

int main(int argc, char** argv) { return laglab::cli_main(argc, argv); }
