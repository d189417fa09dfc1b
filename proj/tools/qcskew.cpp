#include "qcskew/cli/commands.hpp"

int main(int argc, char** argv) { return qcskew::cli::run_cli(argc, argv); }
