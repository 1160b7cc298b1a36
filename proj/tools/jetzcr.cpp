#include "jetzcr/cli.hpp"

int main(int argc, char **argv) { return jetzcr::cli_main(argc, argv); }
