#include "pampac/cli.hpp"

int main(int argc, char** argv) { return pampac::cli_main(argc, argv); }
