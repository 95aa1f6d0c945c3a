#include "mapper/cli.hpp"

int main(int argc, char** argv) { return mapper::cli_main(argc, argv); }
