#include "spreadlab/cli/runner.hpp"

int main(int argc, char** argv) { return spreadlab::cli::main_entry(argc, argv); }
