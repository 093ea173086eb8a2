#include "cli.hpp"

int main(int argc, char** argv) { return linexplain::cli::run_cli(argc, argv); }
