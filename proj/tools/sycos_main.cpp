#include "sycos/cli.hpp"

int main(int argc, char** argv) { return sycos::cli_main(argc, argv); }
