#include "fps/cli.hpp"

int main(int argc, char** argv) { return fps::cli::run_main(argc, argv); }
