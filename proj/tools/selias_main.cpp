#include "selias/cli.hpp"

int main(int argc, char** argv) { return selias::cli::run_main(argc, argv); }
