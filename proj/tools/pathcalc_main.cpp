#include "pathcalc/cli.hpp"

int main(int argc, char** argv) { return pathcalc::cli::run_cli(argc, argv); }
