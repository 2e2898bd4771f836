#include "multidir/cli.hpp"

int main(int argc, char** argv) { return multidir::cli_main(argc, argv); }
