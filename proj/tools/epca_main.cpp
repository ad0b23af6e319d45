#include "epca/cli.hpp"

int main(int argc, char** argv) { return epca::cli::cli_main(argc, argv); }
