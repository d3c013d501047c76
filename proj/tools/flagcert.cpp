#include "cli.hpp"

int main(int argc, char **argv) { return flagcert::cli::main(argc, argv); }
