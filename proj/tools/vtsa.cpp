#include "vtsa/cli.hpp"

int main(int argc, char** argv) { return vtsa::cli::run_main(argc, argv); }
