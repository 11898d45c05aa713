#include "fk/cli.hpp"

int main(int argc, char** argv) { return fk::cli::main_cli(argc, argv); }
