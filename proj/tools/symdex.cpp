#include "symdex/cli.hpp"

int main(int argc, char** argv) { return symdex::cli_main(argc, argv); }
